#pragma once

// Helpers shared by the derivation sources; not installed.

#include <optional>
#include <string>

#include "medial/group.hpp"
#include "medial/rewrite.hpp"
#include "medial/term.hpp"

namespace medial::detail {

const GroupSpec& klein_group();
std::optional<Position> find_leaf(const Term& t, const std::string& name);
/// `t` with the (incomparable) subtrees at a and b exchanged.
Term swap_subtrees(const Term& t, const Position& a, const Position& b);
/// Forward application of `rule` at p, or nothing if it does not match.
std::optional<Term> forward_at(const Term& t, const NamedIdentity& rule, const Position& p);

}  // namespace medial::detail
