#include "medial/spectral.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "medial/error.hpp"

namespace medial {

namespace {

std::vector<std::string_view> split(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    out.push_back(text.substr(start, end - start));
    if (end == text.size()) return out;
    start = end + 1;
  }
}

using Big = boost::multiprecision::cpp_int;
using Poly = std::vector<Big>;

// Quotient of a by the monic b; exact when b divides a.
Poly divide(Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const Big c = a[i];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

const Poly& cyclotomic(int n, std::map<int, Poly>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  Poly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = divide(std::move(p), cyclotomic(d, memo));
  return memo[n] = std::move(p);
}

// Sum of c_x w^(y.x) with w primitive: zero exactly when the cyclotomic
// polynomial of the common order divides the scaled coefficient polynomial.
bool eigenvalue_is_zero(const MulticirculantSpec& spec, const std::vector<int>& y,
                        const std::vector<std::vector<int>>& tuples, std::map<int, Poly>& memo) {
  int order = 1;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const int g = std::gcd(y[k], spec.s[k]);
    order = std::lcm(order, spec.s[k] / g);
  }
  std::int64_t lcd = 1;
  for (const Rational& q : spec.top_row) lcd = std::lcm(lcd, q.den);
  Poly p(static_cast<std::size_t>(order), 0);
  for (std::size_t xi = 0; xi < tuples.size(); ++xi) {
    long long e = 0;
    for (std::size_t k = 0; k < y.size(); ++k)
      e += static_cast<long long>(y[k]) * tuples[xi][k] % spec.s[k] * order / spec.s[k];
    p[static_cast<std::size_t>(e % order)] += Big(spec.top_row[xi].num) * (lcd / spec.top_row[xi].den);
  }
  const Poly& phi = cyclotomic(order, memo);
  const std::size_t d = phi.size() - 1;
  for (std::size_t i = p.size(); i-- > d;) {
    const Big c = p[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) p[i - d + j] -= c * phi[j];
  }
  for (std::size_t i = 0; i < std::min(d, p.size()); ++i)
    if (p[i] != 0) return false;
  return true;
}

}  // namespace

void MulticirculantSpec::validate() const {
  if (s.empty()) throw InvalidArgument("s must have at least one component");
  std::size_t n = 1;
  for (int si : s) {
    if (si < 1) throw InvalidArgument("every s_i must be positive");
    n *= static_cast<std::size_t>(si);
    if (n > 4096) throw InvalidArgument("multicirculant order exceeds 4096");
  }
  if (top_row.size() != n)
    throw InvalidArgument("top row has " + std::to_string(top_row.size()) + " entries, expected " + std::to_string(n));
}

std::size_t MulticirculantSpec::size() const { return top_row.size(); }

bool MulticirculantSpec::integral() const {
  return std::all_of(top_row.begin(), top_row.end(), [](const Rational& q) { return q.is_integer(); });
}

MulticirculantSpec MulticirculantSpec::parse(std::string_view s_list, std::string_view row_list) {
  MulticirculantSpec spec;
  for (std::string_view f : split(s_list)) {
    const Rational q = Rational::parse(f);
    if (!q.is_integer() || q.num < 1 || q.num > 4096) throw InvalidArgument("s_i must be a positive integer");
    spec.s.push_back(static_cast<int>(q.num));
  }
  for (std::string_view f : split(row_list)) spec.top_row.push_back(Rational::parse(f));
  spec.validate();
  return spec;
}

std::size_t star_index(const std::vector<int>& x, const std::vector<int>& s) {
  if (x.size() != s.size()) throw InvalidArgument("tuple and s differ in length");
  std::size_t idx = 0, scale = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (x[i] < 0 || x[i] >= s[i])
      throw InvalidArgument("component " + std::to_string(i + 1) + " = " + std::to_string(x[i]) + " is outside [0, " +
                            std::to_string(s[i]) + ")");
    idx += static_cast<std::size_t>(x[i]) * scale;
    scale *= static_cast<std::size_t>(s[i]);
  }
  return idx;
}

std::vector<int> star_tuple(std::size_t index, const std::vector<int>& s) {
  std::vector<int> x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    x[i] = static_cast<int>(index % static_cast<std::size_t>(s[i]));
    index /= static_cast<std::size_t>(s[i]);
  }
  return x;
}

RationalMatrix build_multicirculant(const MulticirculantSpec& spec) {
  spec.validate();
  const std::size_t n = spec.size();
  RationalMatrix a(n, std::vector<Rational>(n));
  std::vector<std::vector<int>> tuples;
  for (std::size_t i = 0; i < n; ++i) tuples.push_back(star_tuple(i, spec.s));
  std::vector<int> diff(spec.s.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < spec.s.size(); ++k) diff[k] = ((tuples[j][k] - tuples[i][k]) % spec.s[k] + spec.s[k]) % spec.s[k];
      a[i][j] = spec.top_row[star_index(diff, spec.s)];
    }
  }
  return a;
}

Spectrum eigenvalues(const MulticirculantSpec& spec) {
  spec.validate();
  const std::size_t n = spec.size();
  Spectrum out;
  out.determinant = 1.0;
  std::map<int, Poly> memo;
  std::vector<std::vector<int>> tuples;
  for (std::size_t i = 0; i < n; ++i) tuples.push_back(star_tuple(i, spec.s));
  for (std::size_t yi = 0; yi < n; ++yi) {
    EigenPair pair;
    pair.y = tuples[yi];
    pair.vector.resize(n);
    for (std::size_t xi = 0; xi < n; ++xi) {
      // Reduce the exponent before converting to an angle.
      double turns = 0;
      for (std::size_t k = 0; k < spec.s.size(); ++k)
        turns += static_cast<double>((static_cast<long long>(pair.y[k]) * tuples[xi][k]) % spec.s[k]) / spec.s[k];
      pair.vector[xi] = std::polar(1.0, 2 * std::numbers::pi * turns);
      pair.value += spec.top_row[xi].value() * pair.vector[xi];
    }
    double scale = 1;
    for (const Rational& q : spec.top_row) scale += std::abs(q.value());
    if (std::abs(pair.value) <= 1e-8 * scale && eigenvalue_is_zero(spec, pair.y, tuples, memo))
      pair.value = 0;
    out.determinant *= pair.value;
    out.pairs.push_back(std::move(pair));
  }
  out.exact_determinant = rational_determinant(build_multicirculant(spec));
  const std::size_t slash = out.exact_determinant.find('/');
  const double exact = slash == std::string::npos
                           ? std::stod(out.exact_determinant)
                           : std::stod(out.exact_determinant.substr(0, slash)) / std::stod(out.exact_determinant.substr(slash + 1));
  out.determinant_agrees = std::abs(out.determinant - exact) <= 1e-6 * std::max(1.0, std::abs(exact));
  return out;
}

IntMatrix v_matrix(const GroupSpec& g) {
  const int n = g.order();
  IntMatrix a(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  for (int h = 0; h < n; ++h) {
    const GroupElement e = g.element(h);
    auto& row = a[static_cast<std::size_t>(h)];
    row[static_cast<std::size_t>(h)] -= 1;
    row[static_cast<std::size_t>(g.index(g.mul(g.alpha(), e)))] += 1;
    row[static_cast<std::size_t>(g.index(g.mul(g.beta(), e)))] += 1;
  }
  return a;
}

namespace {

// Characters (j, k) with w^a xi^a' = exp(+-i pi/3) and w^b xi^b' its
// conjugate, the only way -1 + u + v = 0 with |u| = |v| = 1.
std::optional<std::pair<int, int>> vanishing_character(const GroupSpec& g) {
  const std::int64_t m = g.m(), n = g.n(), mod = 6 * m * n;
  const std::int64_t a = g.alpha().i, a2 = g.alpha().j, b = g.beta().i, b2 = g.beta().j;
  auto phase = [&](std::int64_t x, std::int64_t x2, std::int64_t j, std::int64_t k) {
    return (6 * n * x * j + 6 * m * x2 * k) % mod;
  };
  for (std::int64_t j = 0; j < m; ++j) {
    for (std::int64_t k = 0; k < n; ++k) {
      const std::int64_t pa = phase(a, a2, j, k), pb = phase(b, b2, j, k);
      if ((pa == m * n && pb == 5 * m * n) || (pa == 5 * m * n && pb == m * n))
        return std::pair{static_cast<int>(j), static_cast<int>(k)};
    }
  }
  return std::nullopt;
}

}  // namespace

BasisDecision interchange_basis_decision(const GroupSpec& g) {
  BasisDecision d;
  d.vanishing = vanishing_character(g);
  d.exact = {true, !d.vanishing.has_value(),
             d.vanishing ? "eigenvalue vanishes at character (" + std::to_string(d.vanishing->first) + "," +
                               std::to_string(d.vanishing->second) + ")"
                         : "no character satisfies the congruences"};

  if (g.order() <= kRankLimit) {
    const std::size_t r = integer_rank(v_matrix(g));
    d.rank = {true, r == static_cast<std::size_t>(g.order()),
              "rank " + std::to_string(r) + " of " + std::to_string(g.order())};
  } else {
    d.rank = {false, false, "group order above " + std::to_string(kRankLimit) + "; rank not computed"};
  }

  const bool canonical = g.alpha() == GroupElement{1 % g.m(), 0} && g.beta() == GroupElement{0, 1 % g.n()};
  if (canonical) {
    const bool both = g.m() % 6 == 0 && g.n() % 6 == 0;
    d.closed_form = {true, !both, both ? "m and n are both multiples of 6" : "m and n are not both multiples of 6"};
  } else {
    d.closed_form = {false, false, "needs alpha = (1,0), beta = (0,1)"};
  }

  d.verdict = d.exact.verdict;
  d.methods_agree = (!d.rank.applicable || d.rank.verdict == d.verdict) && (!d.closed_form.applicable || d.closed_form.verdict == d.verdict);
  return d;
}

nlohmann::json to_json(const BasisDecision& d, const GroupSpec& g) {
  auto method = [](const MethodReport& r) {
    nlohmann::json j{{"applicable", r.applicable}, {"detail", r.detail}};
    j["verdict"] = r.applicable ? nlohmann::json(r.verdict) : nlohmann::json(nullptr);
    return j;
  };
  nlohmann::json j{{"group", g.str()},
                   {"basis", d.verdict},
                   {"methods_agree", d.methods_agree},
                   {"methods", {{"exact", method(d.exact)}, {"rank", method(d.rank)}, {"closed_form", method(d.closed_form)}}}};
  j["vanishing_character"] = d.vanishing ? nlohmann::json{d.vanishing->first, d.vanishing->second} : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const Spectrum& s) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const EigenPair& p : s.pairs) pairs.push_back({{"y", p.y}, {"re", p.value.real()}, {"im", p.value.imag()}});
  return {{"eigenvalues", std::move(pairs)},
          {"determinant", {{"re", s.determinant.real()}, {"im", s.determinant.imag()}}},
          {"exact_determinant", s.exact_determinant},
          {"determinant_agrees", s.determinant_agrees}};
}

}  // namespace medial
