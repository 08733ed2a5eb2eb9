#include "medial/harness.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "internal.hpp"
#include "medial/error.hpp"
#include "medial/total_color.hpp"

namespace medial {

RepresentabilitySweep sweep_representability(int max_rank) {
  RepresentabilitySweep r;
  r.max_rank = max_rank;
  const GroupSpec& kl = detail::klein_group();
  std::set<TotalColor> seen;
  for (int rank = 1; rank <= max_rank; ++rank) {
    for (const Term& t : enumerate_shapes(static_cast<std::size_t>(rank))) {
      ++r.shapes;
      const TotalColor q = total_color(t).color;
      seen.insert(q);
      bool ok = (2 * q.m() + q.n()) % 3 == 1;
      const auto counts = vertex_color_counts(t);
      auto count = [&](GroupElement g) {
        auto it = counts.find(g);
        return it == counts.end() ? std::int64_t{0} : it->second;
      };
      ok = ok && count(kl.alpha()) == q.phi1() && count(kl.beta()) == q.phi1() && count(kl.gamma()) == q.phi2() &&
           count(kl.identity()) == q.phi2() + 1;
      if (rank > 1) ok = ok && q.a <= q.phi1() && q.b <= q.phi1() && q.c <= q.phi2() && q.d <= q.phi2();
      if (!ok) ++r.condition_failures;
    }
  }
  std::set<TotalColor> predicted;
  for (std::int64_t a = 0; a <= max_rank; ++a)
    for (std::int64_t b = 0; a + b <= max_rank; ++b)
      for (std::int64_t c = 0; a + b + c <= max_rank; ++c)
        for (std::int64_t d = 0; a + b + c + d <= max_rank; ++d) {
          const TotalColor q{a, b, c, d};
          if (q.sum() == 0 || !is_representable(q)) continue;
          predicted.insert(q);
          if (!(total_color(construct_tree(q)).color == q)) ++r.witness_failures;
        }
  r.achieved = seen.size();
  r.predicted = predicted.size();
  r.sets_equal = seen == predicted;
  return r;
}

InterchangeSweep sweep_interchange(int max_rank) {
  InterchangeSweep r;
  r.max_rank = max_rank;
  const GroupSpec& kl = detail::klein_group();
  for (int rank = 1; rank <= max_rank; ++rank) {
    for (const Term& t : enumerate_shapes(static_cast<std::size_t>(rank))) {
      ++r.shapes;
      const auto leaves = leaf_positions(t);
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        for (std::size_t j = i + 1; j < leaves.size(); ++j) {
          if (kl.evaluate(leaves[i]) != kl.evaluate(leaves[j])) continue;
          ++r.pairs;
          try {
            const DerivationTrace tr = derive_interchange({t, leaves[i], leaves[j]}, &r.stats);
            const VerifyResult v = verify_trace(tr, mutation_laws());
            if (!v.ok || !(v.final == detail::swap_subtrees(t, leaves[i], leaves[j]))) ++r.failures;
            r.steps += tr.steps.size();
          } catch (const Error&) {
            ++r.failures;
          }
        }
      }
      std::set<GroupElement> colors;
      for (const auto& [p, c] : leaf_colors(t, kl)) colors.insert(c);
      if (colors.size() != 4) continue;
      ++r.quad_terms;
      try {
        const QuadResult q = to_quad_form(t);
        const VerifyResult v = verify_trace(q.trace, mutation_laws());
        if (!v.ok || !(v.final == q.term) || !find_quad_shape(q.term)) ++r.quad_failures;
        if (q.used_fallback) ++r.quad_fallbacks;
      } catch (const Error&) {
        ++r.quad_failures;
      }
    }
  }
  return r;
}

ClosureCheck check_closure() {
  ClosureCheck r;
  auto closed = [](const char* term, const char* dropped) {
    const Term t = parse_term(term);
    const IdentitySet rules = mutation_laws().without(dropped);
    for (const Neighbor& n : one_step_rewrites(t, rules))
      if (!(n.result == t)) return false;
    return true;
  };
  r.without_m1_closed = closed("(ux)(yu)", "M1");
  r.without_m2_closed = closed("(xu)(uy)", "M2");
  const FiniteGroupoid projection({{0, 1}, {0, 1}});
  r.projection_satisfies = model_check(projection, parse_identity("x(xy)=y"));
  r.projection_refutes_m2 = !model_check(projection, mutation_laws().find("M2")->identity);
  return r;
}

nlohmann::json to_json(const RepresentabilitySweep& r) {
  return {{"report", "representability"}, {"max_rank", r.max_rank},   {"shapes", r.shapes},
          {"condition_failures", r.condition_failures}, {"achieved", r.achieved}, {"predicted", r.predicted},
          {"sets_equal", r.sets_equal},   {"witness_failures", r.witness_failures}};
}

nlohmann::json to_json(const InterchangeSweep& r) {
  return {{"report", "interchange"},
          {"max_rank", r.max_rank},
          {"shapes", r.shapes},
          {"pairs", r.pairs},
          {"failures", r.failures},
          {"steps", r.steps},
          {"base_searches", r.stats.base_searches},
          {"move_searches", r.stats.move_searches},
          {"fallbacks", r.stats.fallbacks},
          {"quad_terms", r.quad_terms},
          {"quad_failures", r.quad_failures},
          {"quad_fallbacks", r.quad_fallbacks}};
}

nlohmann::json to_json(const ClosureCheck& r) {
  return {{"report", "closure"},
          {"without_m1_closed", r.without_m1_closed},
          {"without_m2_closed", r.without_m2_closed},
          {"projection_satisfies_x_xy_y", r.projection_satisfies},
          {"projection_refutes_m2", r.projection_refutes_m2}};
}

}  // namespace medial
