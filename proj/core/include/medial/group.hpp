#pragma once

// Two-generated finite abelian groups Z_m x Z_n, the vertex coloring of trees
// they induce, group-ring coefficient vectors and the membership deciders for
// the identities of the operations +-x+-y.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "medial/term.hpp"

namespace medial {

/// Residue pair (i mod m, j mod n); the group is written multiplicatively but
/// elements multiply by adding exponents.
struct GroupElement {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

class GroupSpec {
 public:
  /// Throws InvalidArgument unless m, n >= 1 and alpha, beta generate Z_m x Z_n.
  GroupSpec(int m, int n, GroupElement alpha, GroupElement beta);

  /// The Klein 4-group with alpha = (1,0), beta = (0,1).
  static GroupSpec klein();
  /// "m,n,a,a',b,b'".
  static GroupSpec parse(std::string_view text);

  int m() const { return m_; }
  int n() const { return n_; }
  int order() const { return m_ * n_; }
  GroupElement alpha() const { return alpha_; }
  GroupElement beta() const { return beta_; }
  GroupElement gamma() const { return mul(alpha_, beta_); }
  GroupElement identity() const { return {}; }

  GroupElement mul(GroupElement a, GroupElement b) const;
  GroupElement step(GroupElement parent, Step s) const {
    return mul(parent, s == Step::Left ? alpha_ : beta_);
  }
  /// Color reached from the identity by following `p`.
  GroupElement evaluate(const Position& p) const;

  /// Row-major index i + j*m, the ordering used by the spectral code.
  int index(GroupElement g) const { return g.i + g.j * m_; }
  GroupElement element(int index) const { return {index % m_, index / m_}; }

  bool is_klein() const;
  std::string name(GroupElement g) const;
  std::string str() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  int m_;
  int n_;
  GroupElement alpha_;
  GroupElement beta_;
};

/// True when the subgroup generated by alpha and beta is all of Z_m x Z_n.
bool generates(int m, int n, GroupElement alpha, GroupElement beta);

/// Element of Z[G]: group element -> integer, zero entries never stored.
class GroupRingElement {
 public:
  void add(GroupElement g, std::int64_t c);
  std::int64_t operator[](GroupElement g) const;
  const std::map<GroupElement, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  GroupRingElement& operator+=(const GroupRingElement& o);
  GroupRingElement& operator-=(const GroupRingElement& o);
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

 private:
  std::map<GroupElement, std::int64_t> terms_;
};

/// [p]: variable -> coefficient in Z[G] (nonnegative for terms).
using CoefficientVector = std::map<std::string, GroupRingElement>;

/// Nonempty subset K of {1,2,3,4} selecting f1 = x+y, f2 = x-y, f3 = -x+y,
/// f4 = -x-y.
class OperationSelector {
 public:
  explicit OperationSelector(std::initializer_list<int> ks);
  explicit OperationSelector(const std::vector<int>& ks);
  /// Comma-separated subset of 1..4, e.g. "2,4".
  static OperationSelector parse(std::string_view text);

  bool contains(int k) const { return (mask_ >> k) & 1U; }
  std::vector<int> members() const;
  /// Duality exchanges f2 and f3.
  OperationSelector dual() const;
  std::string str() const;
  friend bool operator==(const OperationSelector&, const OperationSelector&) = default;

 private:
  OperationSelector() = default;
  void insert(int k);
  unsigned mask_ = 0;
};

// --- coloring -------------------------------------------------------------

/// Colors of the leaves, keyed by leaf position.
std::map<Position, GroupElement> leaf_colors(const Term& t, const GroupSpec& g);
/// Colors of every vertex, internal ones included.
std::map<Position, GroupElement> vertex_colors(const Term& t, const GroupSpec& g);

CoefficientVector coefficient_vector(const Term& t, const GroupSpec& g);

/// Membership in Sigma(G; alpha, beta): [lhs] = [rhs].
bool in_sigma(const Identity& e, const GroupSpec& g);

/// Integer coefficient of each variable when the operation is f_k over Z.
std::map<std::string, std::int64_t> integer_coefficients(const Term& t, int k);

/// Ground truth: the identity holds in Z for every f_k, k in K.
bool oracle_in_sigma_K(const Identity& e, const OperationSelector& k);

/// Lattice criterion on [lhs] - [rhs] over Z[KL]. Supported selectors are
/// {1,2,3}, {1,2,4}, {2,3,4}, {2,4} and the duals {1,3,4}, {3,4}; anything
/// else throws UnsupportedSelector.
bool criterion_in_sigma_K(const Identity& e, const OperationSelector& k);
bool criterion_supports(const OperationSelector& k);

struct Classification {
  bool balanced = false;
  bool linear = false;
  bool interchange = false;
  bool general_123 = false;
  bool general_124 = false;
  /// For interchange laws: the swapped variables and their colors in `lhs`.
  std::optional<std::pair<std::string, std::string>> swapped;
  std::optional<std::pair<GroupElement, GroupElement>> swapped_colors;
};

/// The general_* flags use the Klein 4-group coloring regardless of `g`;
/// `swapped_colors` uses `g`.
Classification classify(const Identity& e, const GroupSpec& g);

}  // namespace medial
