#include "medial/exact_linalg.hpp"

#include <charconv>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "medial/error.hpp"

namespace medial {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw InvalidArgument("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num = n / g;
  den = d / g;
}

Rational Rational::parse(std::string_view text) {
  auto number = [&](std::string_view f, std::size_t offset) {
    std::int64_t v = 0;
    const char* b = f.data();
    if (!f.empty() && f[0] == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, f.data() + f.size(), v);
    if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size()) throw ParseError("expected an integer or p/q", offset);
    return v;
  };
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(number(text, 0));
  const std::int64_t d = number(text.substr(slash + 1), slash + 1);
  if (d == 0) throw ParseError("zero denominator", slash + 1);
  return Rational(number(text.substr(0, slash), 0), d);
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

namespace {

using Big = boost::multiprecision::cpp_int;
using BigMatrix = std::vector<std::vector<Big>>;

BigMatrix widen(const IntMatrix& a) {
  BigMatrix out;
  out.reserve(a.size());
  for (const auto& row : a) out.emplace_back(row.begin(), row.end());
  return out;
}

// Bareiss with row pivoting. Returns the rank; `det` receives the
// determinant when the matrix is square (zero if singular).
std::size_t bareiss(BigMatrix m, Big* det) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  Big prev = 1;
  int sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      std::swap(m[pivot], m[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  if (det) *det = (rows == cols && r == rows) ? (rows ? Big(sign * prev) : Big(1)) : Big(0);
  return r;
}

}  // namespace

std::string integer_determinant(const IntMatrix& a) {
  for (const auto& row : a)
    if (row.size() != a.size()) throw InvalidArgument("determinant needs a square matrix");
  Big det;
  bareiss(widen(a), &det);
  return det.str();
}

std::string rational_determinant(const RationalMatrix& a) {
  for (const auto& row : a)
    if (row.size() != a.size()) throw InvalidArgument("determinant needs a square matrix");
  Big lcd = 1;
  for (const auto& row : a)
    for (const Rational& q : row) lcd = boost::multiprecision::lcm(lcd, Big(q.den));
  BigMatrix m;
  for (const auto& row : a) {
    auto& out = m.emplace_back();
    for (const Rational& q : row) out.push_back(Big(q.num) * (lcd / q.den));
  }
  Big det;
  bareiss(std::move(m), &det);
  Big den = boost::multiprecision::pow(lcd, static_cast<unsigned>(a.size()));
  const Big g = boost::multiprecision::gcd(det, den);
  if (g != 0) {
    det /= g;
    den /= g;
  }
  return den == 1 ? det.str() : det.str() + "/" + den.str();
}

std::size_t integer_rank(const IntMatrix& a) {
  for (const auto& row : a)
    if (!a.empty() && row.size() != a[0].size()) throw InvalidArgument("matrix rows differ in length");
  return bareiss(widen(a), nullptr);
}

}  // namespace medial
