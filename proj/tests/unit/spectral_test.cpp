#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "medial/error.hpp"
#include "medial/exact_linalg.hpp"
#include "medial/spectral.hpp"
#include "oracle.hpp"

using namespace medial;

namespace {

std::vector<double> sorted_real(const Spectrum& s) {
  std::vector<double> out;
  for (const EigenPair& p : s.pairs) out.push_back(p.value.real());
  std::sort(out.begin(), out.end());
  return out;
}

oracle::CMatrix to_complex(const RationalMatrix& a) {
  oracle::CMatrix out;
  for (const auto& row : a) {
    auto& r = out.emplace_back();
    for (const Rational& q : row) r.emplace_back(q.value(), 0.0);
  }
  return out;
}

// Product of row norms bounds |det|; elimination error scales with it.
double hadamard(const oracle::CMatrix& a) {
  double h = 1;
  for (const auto& row : a) {
    double n = 0;
    for (const auto& v : row) n += std::norm(v);
    h *= std::max(1.0, std::sqrt(n));
  }
  return h;
}

// Some character makes -1 + w^(a.y) + w^(b.y) vanish, by floating point.
bool vanishes_numerically(const GroupSpec& g) {
  for (int j = 0; j < g.m(); ++j)
    for (int k = 0; k < g.n(); ++k) {
      auto chi = [&](GroupElement e) {
        return std::polar(1.0, 2 * std::numbers::pi * (double(e.i * j) / g.m() + double(e.j * k) / g.n()));
      };
      if (std::abs(-1.0 + chi(g.alpha()) + chi(g.beta())) < 1e-9) return true;
    }
  return false;
}

std::vector<GroupSpec> generating_specs(int m, int n) {
  std::vector<GroupSpec> out;
  for (int ai = 0; ai < m; ++ai)
    for (int aj = 0; aj < n; ++aj)
      for (int bi = 0; bi < m; ++bi)
        for (int bj = 0; bj < n; ++bj)
          if (generates(m, n, {ai, aj}, {bi, bj})) out.emplace_back(m, n, GroupElement{ai, aj}, GroupElement{bi, bj});
  return out;
}

MulticirculantSpec v_spec(const GroupSpec& g) {
  MulticirculantSpec s{{g.m(), g.n()}, std::vector<Rational>(static_cast<std::size_t>(g.order()), Rational{})};
  auto bump = [&](GroupElement e, std::int64_t d) {
    Rational& q = s.top_row[static_cast<std::size_t>(g.index(e))];
    q = Rational(q.num + d, 1);
  };
  bump(g.identity(), -1);
  bump(g.alpha(), 1);
  bump(g.beta(), 1);
  return s;
}

}  // namespace

TEST_CASE("star index") {
  CHECK(star_index({0, 0}, {2, 2}) == 0);
  CHECK(star_index({1, 0}, {2, 2}) == 1);
  CHECK(star_index({0, 1}, {2, 2}) == 2);
  CHECK(star_index({1, 2}, {2, 3}) == 5);
  CHECK(star_tuple(5, {2, 3}) == std::vector{1, 2});
  CHECK_THROWS_AS(star_index({2, 0}, {2, 2}), InvalidArgument);
  CHECK_THROWS_AS(star_index({0}, {2, 2}), InvalidArgument);
  for (std::size_t i = 0; i < 60; ++i) CHECK(star_index(star_tuple(i, {3, 4, 5}), {3, 4, 5}) == i);
}

TEST_CASE("multicirculant construction") {
  const RationalMatrix a = build_multicirculant(MulticirculantSpec::parse("2,2", "-1,1,1,0"));
  const std::vector<std::vector<int>> expect{{-1, 1, 1, 0}, {1, -1, 0, 1}, {1, 0, -1, 1}, {0, 1, 1, -1}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(a[i][j] == Rational(expect[i][j], 1));
  CHECK(build_multicirculant(MulticirculantSpec::parse("1", "7")) == RationalMatrix{{Rational(7, 1)}});
  const RationalMatrix c = build_multicirculant(MulticirculantSpec::parse("3", "1,2,3"));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(c[i][j] == Rational(static_cast<std::int64_t>((j + 3 - i) % 3 + 1), 1));
  CHECK_THROWS_AS(MulticirculantSpec::parse("2,2", "1,2,3"), InvalidArgument);
  CHECK_THROWS_AS(MulticirculantSpec::parse("0", ""), InvalidArgument);
  CHECK_THROWS_AS(MulticirculantSpec::parse("2", "1,x"), ParseError);
  CHECK_THROWS_AS(MulticirculantSpec::parse("2", "1,1/0"), ParseError);
}

TEST_CASE("spectrum of M(2,2)") {
  const Spectrum s = eigenvalues(MulticirculantSpec::parse("2,2", "-1,1,1,0"));
  const auto re = sorted_real(s);
  const std::vector<double> expect{-3, -1, -1, 1};
  for (std::size_t i = 0; i < 4; ++i) CHECK(re[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  for (const EigenPair& p : s.pairs) CHECK(std::abs(p.value.imag()) < 1e-12);
  CHECK(s.exact_determinant == "-3");
  CHECK(s.determinant.real() == doctest::Approx(-3).epsilon(1e-12));
  CHECK(s.determinant_agrees);
  const nlohmann::json j = to_json(s);
  CHECK(j["exact_determinant"] == "-3");
  CHECK(j["eigenvalues"].size() == 4);
}

TEST_CASE("small spectra") {
  Spectrum s = eigenvalues(MulticirculantSpec::parse("1", "5"));
  REQUIRE(s.pairs.size() == 1);
  CHECK(s.pairs[0].value.real() == doctest::Approx(5));
  CHECK(s.exact_determinant == "5");
  s = eigenvalues(MulticirculantSpec::parse("2", "3,-7"));
  CHECK(sorted_real(s) == std::vector<double>{-4, 10});
  s = eigenvalues(MulticirculantSpec::parse("2", "1/2,1/3"));
  CHECK(s.exact_determinant == "5/36");
  CHECK(s.determinant_agrees);
}

TEST_CASE("eigenpairs, trace and determinant of random multicirculants") {
  std::mt19937_64 rng(42);
  const std::vector<std::vector<int>> shapes{{3, 4}, {2, 3, 2}, {5}, {4, 4}, {2, 2, 2, 2}};
  for (const auto& s : shapes) {
    for (int trial = 0; trial < 20; ++trial) {
      MulticirculantSpec spec{s, {}};
      std::size_t n = 1;
      for (int si : s) n *= static_cast<std::size_t>(si);
      std::uniform_int_distribution<int> entry(-5, 5);
      for (std::size_t i = 0; i < n; ++i) spec.top_row.emplace_back(entry(rng), 1);
      const RationalMatrix a = build_multicirculant(spec);
      const Spectrum sp = eigenvalues(spec);
      REQUIRE(sp.pairs.size() == n);
      std::complex<double> sum = 0;
      for (const EigenPair& p : sp.pairs) {
        // Direct character sum, independent of the library's loop order.
        std::complex<double> lambda = 0;
        for (std::size_t x = 0; x < n; ++x) {
          const auto xt = star_tuple(x, s);
          double phase = 0;
          for (std::size_t k = 0; k < s.size(); ++k) phase += double(p.y[k] * xt[k]) / s[k];
          lambda += spec.top_row[x].value() * std::polar(1.0, 2 * std::numbers::pi * phase);
        }
        REQUIRE(std::abs(lambda - p.value) < 1e-9);
        double residual = 0;
        for (std::size_t i = 0; i < n; ++i) {
          std::complex<double> av = 0;
          for (std::size_t j = 0; j < n; ++j) av += a[i][j].value() * p.vector[j];
          residual = std::max(residual, std::abs(av - p.value * p.vector[i]));
        }
        REQUIRE(residual <= 1e-9);
        sum += p.value;
      }
      REQUIRE(std::abs(sum - double(n) * spec.top_row[0].value()) <= 1e-9);
      const double exact = std::stod(sp.exact_determinant);
      const oracle::CMatrix ca = to_complex(a);
      REQUIRE(std::abs(oracle::lu_determinant(ca) - exact) <= 1e-12 * hadamard(ca));
      REQUIRE(sp.determinant_agrees);
    }
  }
}

TEST_CASE("exact determinant and rank") {
  CHECK(integer_determinant({{2, 1}, {1, 3}}) == "5");
  CHECK(integer_determinant({{0, 1}, {1, 0}}) == "-1");
  CHECK(integer_determinant({{1, 2}, {2, 4}}) == "0");
  CHECK(integer_determinant({}) == "1");
  CHECK_THROWS_AS(integer_determinant({{1, 2}}), InvalidArgument);
  CHECK(integer_rank({{1, 2, 3}, {2, 4, 6}}) == 1);
  CHECK(integer_rank({{0, 0}, {0, 0}}) == 0);
  CHECK(integer_rank({{1, 0, 0}, {0, 0, 1}}) == 2);
  // 2^62 * 4: beyond 64 bits.
  const std::int64_t big = std::int64_t{1} << 62;
  CHECK(integer_determinant({{big, 0}, {0, 4}}) == "18446744073709551616");
  CHECK(rational_determinant({{Rational(1, 2), Rational(0, 1)}, {Rational(0, 1), Rational(2, 3)}}) == "1/3");
  CHECK(Rational::parse("-6/4") == Rational(-3, 2));
  CHECK(Rational::parse("+5").str() == "5");
  CHECK_THROWS_AS(Rational::parse("1/"), ParseError);
}

TEST_CASE("exact determinant against floating elimination") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 9);
    IntMatrix a(n, std::vector<std::int64_t>(n));
    oracle::CMatrix c(n, std::vector<std::complex<double>>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c[i][j] = double(a[i][j] = entry(rng));
    const double exact = std::stod(integer_determinant(a));
    REQUIRE(std::abs(oracle::lu_determinant(c).real() - exact) <= 1e-12 * hadamard(c));
    REQUIRE((integer_rank(a) == n) == (exact != 0));
  }
}

TEST_CASE("v matrices") {
  const GroupSpec kl = GroupSpec::klein();
  CHECK(v_matrix(kl) == IntMatrix{{-1, 1, 1, 0}, {1, -1, 0, 1}, {1, 0, -1, 1}, {0, 1, 1, -1}});
  CHECK(v_matrix(GroupSpec(1, 1, {0, 0}, {0, 0})) == IntMatrix{{1}});
  CHECK(v_matrix(GroupSpec(2, 1, {1, 0}, {1, 0})) == IntMatrix{{-1, 2}, {2, -1}});
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 4; ++n)
      for (const GroupSpec& g : generating_specs(m, n)) {
        CAPTURE(g.str());
        const RationalMatrix c = build_multicirculant(v_spec(g));
        const IntMatrix v = v_matrix(g);
        for (std::size_t i = 0; i < v.size(); ++i)
          for (std::size_t j = 0; j < v.size(); ++j) REQUIRE(c[i][j] == Rational(v[i][j], 1));
      }
}

TEST_CASE("basis decisions") {
  BasisDecision d = interchange_basis_decision(GroupSpec::klein());
  CHECK(d.verdict);
  CHECK(d.methods_agree);
  CHECK(d.rank.applicable);
  CHECK(d.closed_form.applicable);
  d = interchange_basis_decision(GroupSpec::parse("6,6,1,0,0,1"));
  CHECK_FALSE(d.verdict);
  REQUIRE(d.vanishing);
  CHECK(d.methods_agree);
  CHECK(interchange_basis_decision(GroupSpec::parse("6,4,1,0,0,1")).verdict);
  d = interchange_basis_decision(GroupSpec(1, 1, {0, 0}, {0, 0}));
  CHECK(d.verdict);
  d = interchange_basis_decision(GroupSpec::parse("6,1,1,0,5,0"));
  CHECK_FALSE(d.verdict);
  CHECK_FALSE(d.closed_form.applicable);
  const nlohmann::json j = to_json(interchange_basis_decision(GroupSpec::parse("6,6,1,0,0,1")), GroupSpec::parse("6,6,1,0,0,1"));
  CHECK(j["basis"] == false);
  CHECK(j["methods"]["rank"]["verdict"] == false);
  CHECK(j["group"] == "6,6,1,0,0,1");
  d = interchange_basis_decision(GroupSpec::parse("30,30,1,0,0,1"));
  CHECK_FALSE(d.rank.applicable);
  CHECK_FALSE(d.verdict);
}

TEST_CASE("exact and rank methods agree for every generating pair on small groups") {
  std::size_t specs = 0;
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 6; ++n) {
      if (m * n > 36) continue;
      for (const GroupSpec& g : generating_specs(m, n)) {
        ++specs;
        CAPTURE(g.str());
        const BasisDecision d = interchange_basis_decision(g);
        REQUIRE(d.rank.applicable);
        REQUIRE(d.rank.verdict == d.verdict);
        REQUIRE(d.methods_agree);
        REQUIRE(d.verdict == !vanishes_numerically(g));
      }
    }
  CHECK(specs > 1000);
}

TEST_CASE("sampled generating pairs up to 12 x 12") {
  std::mt19937_64 rng(12);
  for (int m = 1; m <= 12; ++m)
    for (int n = 1; n <= 12; ++n) {
      std::uniform_int_distribution<int> ri(0, m - 1), rj(0, n - 1);
      int done = 0;
      for (int tries = 0; done < 4 && tries < 400; ++tries) {
        const GroupElement a{ri(rng), rj(rng)}, b{ri(rng), rj(rng)};
        if (!generates(m, n, a, b)) continue;
        ++done;
        const GroupSpec g(m, n, a, b);
        CAPTURE(g.str());
        const BasisDecision d = interchange_basis_decision(g);
        REQUIRE(d.methods_agree);
        REQUIRE(d.verdict == !vanishes_numerically(g));
      }
    }
}

TEST_CASE("vanishing eigenvalues come out as exact zeros") {
  Spectrum s = eigenvalues(MulticirculantSpec::parse("3", "1,1,1"));
  CHECK(s.pairs[0].value == std::complex<double>(3, 0));
  CHECK(s.pairs[1].value == std::complex<double>(0, 0));
  CHECK(s.pairs[2].value == std::complex<double>(0, 0));
  CHECK(s.determinant == std::complex<double>(0, 0));
  CHECK(s.exact_determinant == "0");
  s = eigenvalues(MulticirculantSpec::parse("2,3", "1/2,0,1/2,0,1/2,0"));
  int zeros = 0;
  for (const EigenPair& p : s.pairs) zeros += p.value == std::complex<double>(0, 0);
  CHECK(zeros == 4);
  s = eigenvalues(MulticirculantSpec::parse("5", "1,-1,0,0,0"));
  CHECK(s.pairs[0].value == std::complex<double>(0, 0));
  for (std::size_t i = 1; i < 5; ++i) CHECK(std::abs(s.pairs[i].value) > 0.5);
}
