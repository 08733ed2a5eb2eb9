#pragma once

// Multicirculant matrices indexed by Z_s1 x ... x Z_sk, their spectra, and
// the decision whether the interchange laws alone form a basis.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "medial/exact_linalg.hpp"
#include "medial/group.hpp"

namespace medial {

struct MulticirculantSpec {
  std::vector<int> s;
  /// Indexed by star_index.
  std::vector<Rational> top_row;

  /// Throws InvalidArgument unless every s_i >= 1 and |top_row| = prod s_i.
  void validate() const;
  std::size_t size() const;
  bool integral() const;

  /// "2,2" and "-1,1,1,0" (entries may be p/q).
  static MulticirculantSpec parse(std::string_view s_list, std::string_view row_list);
};

/// x1 + x2*s1 + x3*s1*s2 + ...; throws InvalidArgument if some x_i is out of
/// [0, s_i).
std::size_t star_index(const std::vector<int>& x, const std::vector<int>& s);
std::vector<int> star_tuple(std::size_t index, const std::vector<int>& s);

/// a_{x,y} = top_row[(y - x)*].
RationalMatrix build_multicirculant(const MulticirculantSpec& spec);

struct EigenPair {
  /// Character index: xi_i = exp(2 pi i y_i / s_i).
  std::vector<int> y;
  std::complex<double> value;
  /// v_{x*} = prod xi_i^{x_i}.
  std::vector<std::complex<double>> vector;
};

struct Spectrum {
  std::vector<EigenPair> pairs;
  std::complex<double> determinant;
  /// Fraction-free elimination of the matrix itself.
  std::string exact_determinant;
  /// Product of eigenvalues within 1e-6 (relative) of the exact value.
  bool determinant_agrees = false;
};

Spectrum eigenvalues(const MulticirculantSpec& spec);

/// Rows v_h = -e_h + e_{alpha h} + e_{beta h}, entries summed when indices
/// coincide; rows and columns ordered by GroupSpec::index.
IntMatrix v_matrix(const GroupSpec& g);

struct MethodReport {
  bool applicable = false;
  bool verdict = false;
  std::string detail;
};

struct BasisDecision {
  bool verdict = false;
  MethodReport exact;
  MethodReport rank;
  MethodReport closed_form;
  /// A character (j, k) at which -1 + w^a xi^a' + w^b xi^b' vanishes.
  std::optional<std::pair<int, int>> vanishing;
  bool methods_agree = false;
};

/// Largest group order for which the rank method runs.
inline constexpr int kRankLimit = 576;

/// Exact congruence enumeration is the verdict; integer rank of v_matrix and,
/// for alpha = (1,0), beta = (0,1), the closed form are reported alongside.
BasisDecision interchange_basis_decision(const GroupSpec& g);

nlohmann::json to_json(const BasisDecision& d, const GroupSpec& g);
nlohmann::json to_json(const Spectrum& s);

}  // namespace medial
