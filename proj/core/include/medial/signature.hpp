#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "medial/group.hpp"
#include "medial/term.hpp"

namespace medial {

/// Word over {alpha, beta} labeling a descending path; alpha is a left edge.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Step> letters) : letters_(std::move(letters)) {}
  explicit Signature(const Position& path) : letters_(path.steps().begin(), path.steps().end()) {}

  /// Parses a string over 'a' (alpha) and 'b' (beta), e.g. "bba".
  static Signature parse(std::string_view text);

  std::string str() const;
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Step>& letters() const { return letters_; }
  Position path() const { return Position(letters_); }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Step> letters_;
};

/// The canonical linear term whose path to `var` has signature `s`; the
/// auxiliary variables z1, z2, ... are numbered from the deepest one up.
Term build_sigma_term(const Signature& s, std::string_view var);

/// Membership in the families alpha^k, beta^k, alpha beta^k, beta alpha^k.
bool is_compressed(const Signature& s);
/// Absence of the factors aab, aba, bba, bab.
bool avoids_forbidden_factors(const Signature& s);

/// Vertex reached from `from` by taking left on alpha and right on beta.
/// Throws InvalidPosition if the walk leaves the tree.
Position terminator(const Term& t, const Position& from, const Signature& s);

GroupElement evaluate(const Signature& s, const GroupSpec& g);

}  // namespace medial
