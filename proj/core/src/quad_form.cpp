#include <deque>
#include <set>
#include <functional>
#include <unordered_map>

#include "internal.hpp"
#include "medial/error.hpp"
#include "medial/interchange.hpp"

namespace medial {

bool is_quad_shape(const Term& t) {
  if (t.is_leaf()) return false;
  const Term& a = t.left();
  const Term& b = t.right();
  auto pair = [](const Term& s) { return !s.is_leaf() && s.left().is_leaf() && s.right().is_leaf(); };
  if (!pair(b) || a.is_leaf()) return false;
  return pair(a.left()) || (a.left().is_leaf() && pair(a.right()));
}

std::optional<Position> find_quad_shape(const Term& t) {
  for (const Position& p : all_positions(t))
    if (is_quad_shape(subterm_at(t, p))) return p;
  return std::nullopt;
}

namespace {

using detail::find_leaf;

const Position L = Position{}.left();
const Position R = Position{}.right();
const Position LL = L.left(), LR = L.right(), RL = R.left(), RR = R.right();
const Position LLL = LL.left(), LLR = LL.right(), LRL = LR.left(), LRR = LR.right();

struct Done {};

class QuadBuilder {
 public:
  QuadBuilder(const Term& t, InterchangeStats* stats) : cur_(t), trace_{t, {}}, stats_(stats) {}

  void run() {
    try {
      descend();
      case_b();
    } catch (const Done&) {
    }
  }

  QuadResult finish(bool fallback) && {
    auto at = find_quad_shape(cur_);
    if (!at) throw Error("internal error: no quad shape in " + to_string(cur_));
    return {cur_, std::move(trace_), *at, fallback};
  }

  const Term& term() const { return cur_; }
  DerivationTrace& trace() { return trace_; }
  void reset_to(Term t, DerivationTrace tr) {
    cur_ = std::move(t);
    trace_ = std::move(tr);
  }

 private:
  GroupElement color(const Position& rel) const { return detail::klein_group().evaluate(rel); }
  Position abs(const Position& rel) const { return base_ + rel; }
  const Term& at(const Position& rel) const { return subterm_at(cur_, abs(rel)); }
  bool internal(const Position& rel) const { return !at(rel).is_leaf(); }
  Position rel(const Position& absolute) const { return absolute.suffix(base_.depth()); }
  Position where(const std::string& var) const { return rel(*find_leaf(cur_, var)); }

  void check() const {
    if (find_quad_shape(cur_)) throw Done{};
  }

  // Vertices of the current subterm in preorder, relative to its root.
  std::vector<Position> vertices() const { return all_positions(subterm_at(cur_, base_)); }

  std::optional<Position> first_vertex(const std::function<bool(const Position&)>& pred) const {
    for (const Position& p : vertices())
      if (pred(p)) return p;
    return std::nullopt;
  }

  std::string leaf_of(GroupElement c) const {
    auto p = first_vertex([&](const Position& v) { return !internal(v) && color(v) == c; });
    if (!p) throw InvalidArgument("no leaf of color " + detail::klein_group().name(c));
    return at(*p).name();
  }

  void swap(const Position& a, const Position& b) {
    if (a == b) return;
    append(trace_, interchange_vertices(cur_, abs(a), abs(b), stats_));
    cur_ = detail::swap_subtrees(cur_, abs(a), abs(b));
    check();
  }

  void rule(const char* name, const Position& p) {
    auto [next, step] = apply_rule_at(cur_, mutation_laws(), name, abs(p), Direction::Forward);
    trace_.steps.push_back(std::move(step));
    cur_ = std::move(next);
    check();
  }

  // Double rule: move leaf `var` to `target`, first trading `target` with
  // `helper` if it contains the leaf.
  void place(const std::string& var, const Position& target, const Position& helper) {
    if (target.is_prefix_of(where(var))) swap(target, helper);
    swap(target, where(var));
  }

  // Descends by `s` from `from` to a leaf.
  Position descend_from(Position from, Step s) const {
    while (internal(from)) from = from.child(s);
    return from;
  }

  void descend() {
    const GroupSpec& kl = detail::klein_group();
    check();
    for (;;) {
      auto internal_of = [&](GroupElement c) {
        return first_vertex([&](const Position& v) { return internal(v) && color(v) == c; });
      };
      if (!internal_of(kl.alpha())) base_ = base_.right();
      else if (!internal_of(kl.beta())) base_ = base_.left();
      else return;
      if (at({}).is_leaf()) throw Error("internal error: ran out of subterm");
    }
  }

  void case_b() {
    const GroupSpec& kl = detail::klein_group();
    auto internal_vertex = [&](GroupElement c, const Position& not_this) {
      return first_vertex([&](const Position& v) { return !v.is_root() && v != not_this && internal(v) && color(v) == c; });
    };
    if (!internal(L)) swap(L, *internal_vertex(kl.alpha(), L));
    if (!internal(R)) swap(R, *internal_vertex(kl.beta(), R));
    place(leaf_of(kl.gamma()), RL, LR);
    place(leaf_of(kl.identity()), RR, LL);
    if (!internal(LR))
      if (auto v = internal_vertex(kl.gamma(), LR)) swap(LR, *v);
    if (!internal(LL))
      if (auto v = internal_vertex(kl.identity(), LL)) swap(LL, *v);

    if (internal(LL) && internal(LR)) {
      place(leaf_of(kl.alpha()), LLL, LRR);
      place(leaf_of(kl.beta()), LLR, LRL);
    } else if (!internal(LR)) {
      no_internal_gamma();
    } else {
      no_internal_one();
    }
  }

  void no_internal_gamma() {
    const GroupSpec& kl = detail::klein_group();
    if (internal(LLL)) {
      const Position u = descend_from(LLL, Step::Left);
      std::string x;
      if (color(u) == kl.identity()) {
        x = leaf_of(kl.alpha());
        swap(u.parent(), where(x));
      } else {
        x = at(u).name();
      }
      place(leaf_of(kl.beta()), where(x).sibling(), LLR);
      const Position g = where(x).parent().parent().parent();
      swap(g.right(), R);
    } else {
      const std::string x = at(LLL).name();
      const Position u = descend_from(LLR, Step::Right);
      std::string y;
      if (color(u) == kl.identity()) {
        y = leaf_of(kl.beta());
        swap(u.parent(), where(y));
      } else {
        y = at(u).name();
      }
      swap(where(y).sibling(), where(x));
      swap(LL, RR);
      swap(LR, RL);
      const Position g = where(y).parent().parent().parent();
      swap(g.left(), L);
      rule("M1", g);
      rule("M2", g);
    }
  }

  void no_internal_one() {
    const GroupSpec& kl = detail::klein_group();
    if (internal(LRL)) {
      const Position u = descend_from(LRL, Step::Left);
      std::string y;
      if (color(u) == kl.gamma()) {
        y = leaf_of(kl.beta());
        swap(u.parent(), where(y));
      } else {
        y = at(u).name();
      }
      place(leaf_of(kl.alpha()), where(y).sibling(), LRR);
      swap(LL, RR);
      swap(LR, RL);
      const Position h = where(y).parent().parent().parent();
      swap(h.right(), L);
    } else {
      const std::string y = at(LRL).name();
      const Position u = descend_from(LRR, Step::Right);
      std::string x;
      if (color(u) == kl.gamma()) {
        x = leaf_of(kl.alpha());
        swap(u.parent(), where(x));
      } else {
        x = at(u).name();
      }
      swap(where(x).sibling(), where(y));
      const Position g = where(x).parent().parent().parent();
      swap(g.left(), R);
      rule("M1", g);
      rule("M2", g);
    }
  }

  Term cur_;
  DerivationTrace trace_;
  InterchangeStats* stats_;
  Position base_;
};

// Shortest M-derivation from `t` to any term with the quad shape.
std::optional<DerivationTrace> search_shape(const Term& t, std::size_t depth) {
  struct Visit {
    Term term;
    std::size_t parent;
    std::optional<TraceStep> via;
    std::size_t depth;
  };
  std::vector<Visit> visits{{t, 0, std::nullopt, 0}};
  std::unordered_map<std::string, std::size_t> seen{{to_string(t), 0}};
  std::deque<std::size_t> frontier{0};
  auto build = [&](std::size_t idx) {
    std::vector<TraceStep> rev;
    for (std::size_t i = idx; i != 0; i = visits[i].parent) rev.push_back(*visits[i].via);
    return DerivationTrace{t, {rev.rbegin(), rev.rend()}};
  };
  if (find_quad_shape(t)) return build(0);
  while (!frontier.empty()) {
    const std::size_t idx = frontier.front();
    frontier.pop_front();
    if (visits[idx].depth >= depth) continue;
    for (Neighbor& nb : one_step_rewrites(visits[idx].term, mutation_laws())) {
      if (!seen.emplace(to_string(nb.result), visits.size()).second) continue;
      const bool hit = find_quad_shape(nb.result).has_value();
      visits.push_back({std::move(nb.result), idx, std::move(nb.step), visits[idx].depth + 1});
      if (hit) return build(visits.size() - 1);
      if (seen.size() > 2'000'000) return std::nullopt;
      frontier.push_back(visits.size() - 1);
    }
  }
  return std::nullopt;
}

}  // namespace

QuadResult to_quad_form(const Term& t, InterchangeStats* stats) {
  if (!is_linear(t)) throw InvalidArgument("term is not linear: " + to_string(t));
  const GroupSpec& kl = detail::klein_group();
  std::set<GroupElement> seen;
  for (const auto& [p, c] : leaf_colors(t, kl)) seen.insert(c);
  if (seen.size() != 4) throw InvalidArgument("term lacks a leaf of every color: " + to_string(t));

  QuadBuilder b(t, stats);
  bool fallback = false;
  try {
    b.run();
  } catch (const Error&) {
    fallback = true;
  }
  if (!find_quad_shape(b.term())) {
    fallback = true;
    if (stats) ++stats->fallbacks;
    auto rest = search_shape(b.term(), 8);
    if (!rest) throw Error("no quad shape reachable from " + to_string(b.term()));
    DerivationTrace tr = std::move(b.trace());
    append(tr, *rest);
    Term end = verify_trace(tr, mutation_laws()).final;
    b.reset_to(std::move(end), std::move(tr));
  }
  QuadResult out = std::move(b).finish(fallback);
  const VerifyResult v = verify_trace(out.trace, mutation_laws());
  if (!v.ok || !(v.final == out.term)) throw Error("internal error: quad-form trace failed verification: " + v.message);
  return out;
}

}  // namespace medial
