#pragma once

// Derivations of interchange laws from the mutation laws, and the rewrite of
// a four-colored linear term into one containing ((xy)v)(zt) or (u(yx))(zt).

#include <cstddef>
#include <optional>

#include "medial/rewrite.hpp"
#include "medial/term.hpp"

namespace medial {

struct SwapRequest {
  Term term;
  Position first;
  Position second;
};

/// How a derivation was obtained; fallbacks are the iterative-deepening
/// searches used when no distance-reducing move sequence was found.
struct InterchangeStats {
  std::size_t base_searches = 0;
  std::size_t move_searches = 0;
  std::size_t fallbacks = 0;
};

/// Trace over M from r.term to r.term with the two leaves' variables swapped.
/// Throws InvalidArgument for a non-linear term, equal variables, unequal KL
/// colors, non-leaf positions or variables named w<digits>.
DerivationTrace derive_interchange(const SwapRequest& r, InterchangeStats* stats = nullptr);

/// Swaps the subtrees at two incomparable vertices of the same KL color.
/// Works on any term; throws InvalidPosition / InvalidArgument otherwise.
DerivationTrace interchange_vertices(const Term& t, const Position& a, const Position& b,
                                     InterchangeStats* stats = nullptr);

/// True if `t` itself is ((x y) v)(z t) or (u (y x))(z t) with leaves x, y, z,
/// t, u and arbitrary v.
bool is_quad_shape(const Term& t);
/// First position (preorder) whose subterm has the quad shape.
std::optional<Position> find_quad_shape(const Term& t);

struct QuadResult {
  Term term;
  DerivationTrace trace;
  Position at;
  bool used_fallback = false;
};

/// Throws InvalidArgument unless `t` is linear with leaves of all four KL
/// colors.
QuadResult to_quad_form(const Term& t, InterchangeStats* stats = nullptr);

}  // namespace medial
