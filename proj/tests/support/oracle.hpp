#pragma once

// Reference computations for the tests. Everything here walks terms through
// the public accessors only, so none of it shares code with the library's
// deciders.

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "medial/term.hpp"

namespace oracle {

using medial::Identity;
using medial::Term;

// Residues (i mod m, j mod n) reached by a path of 'L'/'R' characters.
struct Walk {
  int m, n, ai, aj, bi, bj;
  std::pair<int, int> color(const std::string& path) const;
};
inline constexpr Walk kKlein{2, 2, 1, 0, 0, 1};

// Leaf paths in left-to-right order, with the variable at each.
std::vector<std::pair<std::string, std::string>> leaves(const Term& t);

// variable -> color -> count.
using Ring = std::map<std::string, std::map<std::pair<int, int>, std::int64_t>>;
Ring ring_coefficients(const Term& t, const Walk& w);

// Coefficient of each variable in f_k, f1 = x+y, f2 = x-y, f3 = -x+y, f4 = -x-y.
std::map<std::string, std::int64_t> z_coefficients(const Term& t, int k);
bool holds_in_z(const Identity& e, const std::vector<int>& ks);

// Leaf counts (alpha, beta, gamma, 1) under the Klein coloring.
std::array<std::int64_t, 4> leaf_color_counts(const Term& t);
// Vertex counts over all vertices, same order.
std::array<std::int64_t, 4> vertex_color_counts(const Term& t);

Term swap_at(const Term& t, const std::string& a, const std::string& b);

// Evaluation in a finite table, by brute force over all assignments.
bool holds_in_table(const std::vector<std::vector<int>>& table, const Identity& e);

std::uint64_t catalan(int n);

// Uniform-ish random full binary tree of the given rank over `vars`.
Term random_term(std::mt19937_64& rng, int rank, const std::vector<std::string>& vars);

// Random shape with leaves v1..vn.
Term random_shape(std::mt19937_64& rng, int rank);

// Mixed corpus: independent sides, same leaves in a new shape, or same
// shape with leaves permuted. Sides have rank <= max_rank over the first
// `nvars` of x, y, z, t.
Identity random_identity(std::mt19937_64& rng, int max_rank, int nvars);

// Dense complex matrix helpers.
using CMatrix = std::vector<std::vector<std::complex<double>>>;
std::complex<double> lu_determinant(CMatrix a);

}  // namespace oracle
