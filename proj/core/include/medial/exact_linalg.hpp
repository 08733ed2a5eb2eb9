#pragma once

// Fraction-free (Bareiss) elimination over arbitrary-precision integers.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace medial {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// num/den in lowest terms with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);

  /// "p" or "p/q".
  static Rational parse(std::string_view text);
  bool is_integer() const { return den == 1; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Exact determinant of a square matrix, as a decimal string.
std::string integer_determinant(const IntMatrix& a);

/// Exact determinant as "p" or "p/q" in lowest terms; the matrix is scaled
/// by the common denominator and eliminated over the integers.
std::string rational_determinant(const RationalMatrix& a);

/// Rank over the rationals.
std::size_t integer_rank(const IntMatrix& a);

}  // namespace medial
