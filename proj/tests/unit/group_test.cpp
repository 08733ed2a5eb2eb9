#include <doctest.h>

#include "medial/error.hpp"
#include "medial/group.hpp"
#include "medial/rewrite.hpp"
#include "oracle.hpp"

using namespace medial;

namespace {

const GroupSpec kl = GroupSpec::klein();
const GroupElement one{0, 0}, alpha{1, 0}, beta{0, 1}, gamma_{1, 1};

GroupRingElement ring(std::initializer_list<std::pair<GroupElement, std::int64_t>> terms) {
  GroupRingElement r;
  for (const auto& [g, c] : terms) r.add(g, c);
  return r;
}

const std::vector<OperationSelector>& supported() {
  static const std::vector<OperationSelector> ks{OperationSelector{1, 2, 3}, OperationSelector{1, 2, 4},
                                                 OperationSelector{2, 3, 4}, OperationSelector{2, 4},
                                                 OperationSelector{1, 3, 4}, OperationSelector{3, 4}};
  return ks;
}

// lhs rewritten by a few random steps of a sound rule set: always true for
// the set's operations.
Identity derived_identity(std::mt19937_64& rng, const IdentitySet& rules) {
  const Term lhs = oracle::random_term(rng, std::uniform_int_distribution<int>(2, 6)(rng), {"x", "y", "z", "t"});
  Term rhs = lhs;
  for (int s = std::uniform_int_distribution<int>(1, 3)(rng); s > 0; --s) {
    const auto next = one_step_rewrites(rhs, rules);
    if (next.empty()) break;
    const Term& candidate = next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)].result;
    if (candidate.rank() <= 7) rhs = candidate;
  }
  return {lhs, rhs};
}

}  // namespace

TEST_CASE("group spec parsing and validation") {
  const GroupSpec g = GroupSpec::parse("2,2,1,0,0,1");
  CHECK(g == kl);
  CHECK(g.is_klein());
  CHECK(g.order() == 4);
  CHECK(g.gamma() == gamma_);
  CHECK(g.str() == "2,2,1,0,0,1");
  CHECK(GroupSpec::parse("6,4,1,0,0,1").order() == 24);
  CHECK_THROWS_AS(GroupSpec::parse("2,2,1,0,1,0"), InvalidArgument);  // generates only Z2
  CHECK_THROWS_AS(GroupSpec::parse("0,2,0,0,0,1"), InvalidArgument);
  CHECK_THROWS(GroupSpec::parse("2,2,1,0"));
  CHECK(generates(6, 1, {2, 0}, {3, 0}));
  CHECK_FALSE(generates(6, 1, {2, 0}, {4, 0}));
}

TEST_CASE("leaf colors") {
  auto colors = leaf_colors(parse_term("(xy)(zt)"), kl);
  CHECK(colors.at(Position::parse("LL")) == one);
  CHECK(colors.at(Position::parse("LR")) == gamma_);
  CHECK(colors.at(Position::parse("RL")) == gamma_);
  CHECK(colors.at(Position::parse("RR")) == one);
  CHECK(leaf_colors(parse_term("x"), kl).at(Position{}) == one);
  colors = leaf_colors(parse_term("((xy)z)t"), kl);
  CHECK(colors.at(Position::parse("LLR")) == beta);
  CHECK(colors.at(Position::parse("R")) == beta);
}

TEST_CASE("coefficient vectors") {
  CHECK(coefficient_vector(parse_term("x"), kl).at("x") == ring({{one, 1}}));
  const auto m1 = coefficient_vector(parse_term("(xy)(zt)"), kl);
  CHECK(m1.at("x") == ring({{one, 1}}));
  CHECK(m1.at("y") == ring({{gamma_, 1}}));
  CHECK(m1.at("z") == ring({{gamma_, 1}}));
  CHECK(m1.at("t") == ring({{one, 1}}));
  const auto c = coefficient_vector(parse_term("x(xy)"), kl);
  CHECK(c.at("x") == ring({{alpha, 1}, {gamma_, 1}}));
  CHECK(c.at("y") == ring({{one, 1}}));
}

TEST_CASE("membership in Sigma over the Klein group") {
  for (const NamedIdentity& m : mutation_laws()) {
    CAPTURE(m.name);
    CHECK(in_sigma(m.identity, kl));
  }
  CHECK_FALSE(in_sigma(parse_identity("xy=yx"), kl));
  CHECK(in_sigma(parse_identity("x=x"), kl));
  CHECK_FALSE(in_sigma(parse_identity("x(xy)=y"), kl));
}

TEST_CASE("oracle over the integers") {
  CHECK(oracle_in_sigma_K(parse_identity("x(xy)=y"), OperationSelector{2, 4}));
  CHECK(oracle_in_sigma_K(parse_identity("x(y(z(xy)))=z"), OperationSelector{2}));
  CHECK(oracle_in_sigma_K(parse_identity("(x(yy))(yy)=x"), OperationSelector{2, 3, 4}));
  CHECK_FALSE(oracle_in_sigma_K(parse_identity("x(xy)=y"), OperationSelector{1}));
  CHECK(integer_coefficients(parse_term("x(xy)"), 2) == std::map<std::string, std::int64_t>{{"y", 1}});
}

TEST_CASE("lattice criterion") {
  CHECK(criterion_in_sigma_K(parse_identity("(z(xx))(yy)=(z(yy))(xx)"), OperationSelector{1, 2, 3}));
  CHECK(criterion_in_sigma_K(parse_identity("x(x(yz))=(x(zy))x"), OperationSelector{1, 2, 4}));
  CHECK(criterion_in_sigma_K(parse_identity("(x(yy))(yy)=x"), OperationSelector{2, 3, 4}));
  for (const OperationSelector& k : supported()) {
    CAPTURE(k.str());
    CHECK_FALSE(criterion_in_sigma_K(parse_identity("x=y"), k));
    CHECK(criterion_supports(k));
  }
  CHECK_THROWS_AS(criterion_in_sigma_K(parse_identity("x=x"), OperationSelector{2}), UnsupportedSelector);
  CHECK_FALSE(criterion_supports(OperationSelector{1, 2, 3, 4}));
}

TEST_CASE("selectors") {
  const OperationSelector k = OperationSelector::parse("2,4");
  CHECK(k.members() == std::vector{2, 4});
  CHECK(k.dual() == OperationSelector{3, 4});
  CHECK(k.str() == "2,4");
  CHECK_THROWS(OperationSelector::parse("5"));
  CHECK_THROWS(OperationSelector::parse(""));
}

TEST_CASE("classification") {
  Classification c = classify(mutation_laws().find("M1")->identity, kl);
  CHECK(c.balanced);
  CHECK(c.linear);
  CHECK(c.interchange);
  REQUIRE(c.swapped_colors);
  CHECK(c.swapped_colors->first == gamma_);
  CHECK(c.swapped_colors->second == gamma_);
  c = classify(parse_identity("(x(yy))(yy)=x"), kl);
  CHECK_FALSE(c.balanced);
  c = classify(parse_identity("x=x"), kl);
  CHECK(c.balanced);
  CHECK(c.linear);
  CHECK_FALSE(c.interchange);
}

TEST_CASE("leaf colors equal the path walk, all shapes up to rank 7, several groups") {
  const std::vector<oracle::Walk> walks{oracle::kKlein, {3, 1, 1, 0, 2, 0}, {6, 4, 1, 0, 0, 1}, {4, 6, 1, 3, 2, 1}};
  for (const oracle::Walk& w : walks) {
    const GroupSpec g(w.m, w.n, {w.ai, w.aj}, {w.bi, w.bj});
    for (int r = 1; r <= 7; ++r) {
      for (const Term& t : enumerate_shapes(static_cast<std::size_t>(r))) {
        const auto colors = leaf_colors(t, g);
        for (const auto& [path, var] : oracle::leaves(t)) {
          const GroupElement c = colors.at(Position::parse(path));
          REQUIRE(std::pair{c.i, c.j} == w.color(path));
        }
        const auto ring = oracle::ring_coefficients(t, w);
        const auto cv = coefficient_vector(t, g);
        for (const auto& [var, entries] : ring)
          for (const auto& [color, count] : entries) REQUIRE(cv.at(var)[{color.first, color.second}] == count);
      }
    }
  }
}

TEST_CASE("integer coefficients match a direct sign walk") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Term t = oracle::random_term(rng, 1 + i % 9, {"x", "y", "z"});
    for (int k = 1; k <= 4; ++k) {
      auto lib = integer_coefficients(t, k);
      std::erase_if(lib, [](const auto& kv) { return kv.second == 0; });
      REQUIRE(lib == oracle::z_coefficients(t, k));
    }
  }
}

TEST_CASE("membership invariants over a random corpus") {
  std::mt19937_64 rng(20261016);
  const std::vector<std::vector<int>> subsets = [] {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 1; mask < 16; ++mask) {
      std::vector<int> ks;
      for (int k = 1; k <= 4; ++k)
        if (mask & (1U << (k - 1))) ks.push_back(k);
      out.push_back(ks);
    }
    return out;
  }();
  std::size_t in_sigma_count = 0;
  for (int i = 0; i < 3000; ++i) {
    const Identity e = oracle::random_identity(rng, 7, 1 + i % 4);
    CAPTURE(to_string(e));
    const bool sigma = in_sigma(e, kl);
    in_sigma_count += sigma;
    REQUIRE(sigma == in_sigma(dual(e), kl));
    REQUIRE(sigma == oracle_in_sigma_K(e, OperationSelector{1, 2, 3, 4}));

    std::map<unsigned, bool> verdict;
    for (const auto& ks : subsets) {
      const bool lib = oracle_in_sigma_K(e, OperationSelector(ks));
      REQUIRE(lib == oracle::holds_in_z(e, ks));
      unsigned mask = 0;
      for (int k : ks) mask |= 1U << (k - 1);
      verdict[mask] = lib;
      if (lib && (mask & 1U)) REQUIRE(classify(e, kl).balanced);
    }
    for (const auto& [big, vb] : verdict)
      for (const auto& [small, vs] : verdict)
        if ((small & big) == small && vb) REQUIRE(vs);

    for (const OperationSelector& k : supported()) REQUIRE(criterion_in_sigma_K(e, k) == oracle_in_sigma_K(e, k));
  }
  CHECK(in_sigma_count > 100);
}

TEST_CASE("criterion accepts identities derived from each row's basis") {
  std::mt19937_64 rng(5);
  for (const std::string& row : table_rows()) {
    const OperationSelector k = table_row_selector(row);
    if (!criterion_supports(k)) continue;
    CAPTURE(row);
    for (int i = 0; i < 300; ++i) {
      const Identity e = derived_identity(rng, table_basis(row));
      CAPTURE(to_string(e));
      REQUIRE(oracle_in_sigma_K(e, k));
      REQUIRE(criterion_in_sigma_K(e, k));
    }
  }
}
