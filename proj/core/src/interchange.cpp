#include "medial/interchange.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_set>

#include "medial/error.hpp"
#include "medial/group.hpp"
#include "internal.hpp"

namespace medial {

namespace detail {

const GroupSpec& klein_group() {
  static const GroupSpec g = GroupSpec::klein();
  return g;
}

std::optional<Position> find_leaf(const Term& t, const std::string& name) {
  if (t.is_leaf()) return t.name() == name ? std::optional<Position>(Position{}) : std::nullopt;
  if (auto p = find_leaf(t.left(), name)) return Position{}.left() + *p;
  if (auto p = find_leaf(t.right(), name)) return Position{}.right() + *p;
  return std::nullopt;
}

Term swap_subtrees(const Term& t, const Position& a, const Position& b) {
  const Term sa = subterm_at(t, a);
  const Term sb = subterm_at(t, b);
  return replace_at(replace_at(t, a, sb), b, sa);
}

std::optional<Term> forward_at(const Term& t, const NamedIdentity& rule, const Position& p) {
  if (!is_valid(t, p)) return std::nullopt;
  auto s = match(rule.identity.lhs, subterm_at(t, p));
  if (!s) return std::nullopt;
  return replace_at(t, p, substitute(rule.identity.rhs, *s));
}

}  // namespace detail

namespace {

using detail::find_leaf;
using detail::forward_at;

struct Move {
  std::string rule;
  Position at;
};

std::size_t distance(const Position& a, const Position& b) {
  return a.depth() + b.depth() - 2 * common_prefix(a, b).depth();
}

// First forbidden factor (aab, aba, bba, bab) of a path; returns the index
// where it starts and the law that shortens it there.
std::optional<std::pair<std::size_t, const char*>> forbidden_factor(const Position& path) {
  for (std::size_t i = 0; i + 2 < path.depth(); ++i) {
    const bool l0 = path[i] == Step::Left, l1 = path[i + 1] == Step::Left, l2 = path[i + 2] == Step::Left;
    if (l0 && l1 && !l2) return std::pair{i, "M3"};
    if (l0 && !l1 && l2) return std::pair{i, "M4"};
    if (!l0 && !l1 && l2) return std::pair{i, "M6"};
    if (!l0 && l1 && !l2) return std::pair{i, "M5"};
  }
  return std::nullopt;
}

bool constant(const Position& path, Step s) {
  for (Step x : path.steps())
    if (x != s) return false;
  return true;
}

class Deriver {
 public:
  explicit Deriver(InterchangeStats* stats) : stats_(stats ? stats : &local_) {}

  DerivationTrace swap(const Term& t, const Position& a, const Position& b) {
    const Position c = common_prefix(a, b);
    const std::string x = fresh(), y = fresh();
    const Position ra = a.suffix(c.depth()), rb = b.suffix(c.depth());
    Substitution back;
    std::function<Term(const Term&, const Position&)> abstract = [&](const Term& s, const Position& at) -> Term {
      if (at == ra || at == rb) {
        const std::string& name = at == ra ? x : y;
        back.emplace(name, s);
        return Term::leaf(name);
      }
      if (at.is_prefix_of(ra) || at.is_prefix_of(rb)) {
        Term l = abstract(s.left(), at.left());
        return Term::node(std::move(l), abstract(s.right(), at.right()));
      }
      const std::string w = fresh();
      back.emplace(w, s);
      return Term::leaf(w);
    };
    const Term shape = abstract(subterm_at(t, c), Position{});
    return embed(instantiate(core(shape, x, y), back), t, c);
  }

 private:
  std::string fresh() { return "w" + std::to_string(++counter_); }

  DerivationTrace core(const Term& a, const std::string& x, const std::string& y) {
    const Term target = substitute(a, {{x, Term::leaf(y)}, {y, Term::leaf(x)}});
    const Identity goal{a, target};
    if (a.rank() <= 4) {
      ++stats_->base_searches;
      if (auto tr = bounded_search(goal, mutation_laws(), 4)) return *tr;
      return fallback(goal);
    }

    auto dist = [&](const Term& t) { return distance(*find_leaf(t, x), *find_leaf(t, y)); };
    const std::size_t d0 = dist(a);

    for (const auto& r : mutation_laws())
      for (const Position& p : all_positions(a))
        if (auto next = forward_at(a, r, p); next && *next == target) return single(a, r.name, p);

    std::vector<Move> plan;
    if (auto m = shape_move(a, x, y)) {
      auto next = forward_at(a, *mutation_laws().find(m->rule), m->at);
      if (next && dist(*next) < d0) plan.push_back(*m);
    }
    if (plan.empty()) {
      ++stats_->move_searches;
      auto found = search_moves(a, target, dist, d0);
      if (!found) return fallback(goal);
      if (found->second) return replay(a, found->first);
      plan = std::move(found->first);
    }

    DerivationTrace out{a, {}};
    Term cur = a;
    for (const Move& m : plan) {
      auto [next, step] = apply_rule_at(cur, mutation_laws(), m.rule, m.at, Direction::Forward);
      out.steps.push_back(std::move(step));
      cur = std::move(next);
    }
    append(out, swap(cur, *find_leaf(cur, x), *find_leaf(cur, y)));
    cur = substitute(cur, {{x, Term::leaf(y)}, {y, Term::leaf(x)}});
    for (auto it = plan.rbegin(); it != plan.rend(); ++it) {
      auto [next, step] = apply_rule_at(cur, mutation_laws(), it->rule, it->at, Direction::Reverse);
      out.steps.push_back(std::move(step));
      cur = std::move(next);
    }
    if (!(cur == target)) throw Error("internal error: interchange ended at " + to_string(cur));
    return out;
  }

  // Distance-reducing move suggested by the shape of the two paths.
  static std::optional<Move> shape_move(const Term& t, const std::string& x, const std::string& y) {
    Position a = *find_leaf(t, x), b = *find_leaf(t, y);
    if (a[0] == Step::Right) std::swap(a, b);
    const Position sigma = a.suffix(1), tau = b.suffix(1);
    const Position root, left = root.left(), right = root.right();

    if (auto f = forbidden_factor(sigma)) return Move{f->second, left + sigma.prefix(f->first)};
    if (auto f = forbidden_factor(tau)) return Move{f->second, right + tau.prefix(f->first)};
    if (sigma.depth() >= 2 && constant(sigma, Step::Left)) return Move{"M3", root};
    if (sigma.depth() >= 2 && constant(sigma, Step::Right)) return Move{"M4", root};
    if (tau.depth() >= 2 && constant(tau, Step::Right)) return Move{"M6", root};
    if (tau.depth() >= 2 && constant(tau, Step::Left)) return Move{"M5", root};
    if (sigma.is_root() || tau.is_root()) return std::nullopt;
    if (sigma[0] == tau[0]) return Move{"M1", root};
    auto at = [](const Position& p, std::size_t i, Step s) { return p.depth() > i && p[i] == s; };
    if (sigma[0] == Step::Left) {
      if (at(sigma, 1, Step::Left)) return Move{"M3", root};
      if (at(tau, 1, Step::Right)) return Move{"M6", root};
    } else {
      if (at(sigma, 1, Step::Right)) return Move{"M4", root};
      if (at(tau, 1, Step::Left)) return Move{"M5", root};
    }
    return std::nullopt;
  }

  // Breadth-first over short forward-move sequences; the flag is set when the
  // sequence reaches the swapped term outright.
  template <class Dist>
  std::optional<std::pair<std::vector<Move>, bool>> search_moves(const Term& a, const Term& target, Dist dist,
                                                                 std::size_t d0) {
    constexpr std::size_t kDepth = 4;
    constexpr std::size_t kStates = 200'000;
    struct Node {
      Term term;
      std::vector<Move> moves;
    };
    std::deque<Node> frontier{{a, {}}};
    std::unordered_set<std::string> seen{to_string(a)};
    while (!frontier.empty()) {
      Node n = std::move(frontier.front());
      frontier.pop_front();
      if (n.moves.size() >= kDepth) continue;
      const auto positions = all_positions(n.term);
      for (const auto& r : mutation_laws()) {
        for (const Position& p : positions) {
          auto next = forward_at(n.term, r, p);
          if (!next || !seen.insert(to_string(*next)).second) continue;
          std::vector<Move> moves = n.moves;
          moves.push_back({r.name, p});
          if (*next == target) return std::pair{std::move(moves), true};
          if (dist(*next) < d0) return std::pair{std::move(moves), false};
          if (seen.size() > kStates) return std::nullopt;
          frontier.push_back({std::move(*next), std::move(moves)});
        }
      }
    }
    return std::nullopt;
  }

  static DerivationTrace single(const Term& a, const std::string& rule, const Position& p) {
    return replay(a, {{rule, p}});
  }

  static DerivationTrace replay(const Term& a, const std::vector<Move>& moves) {
    DerivationTrace out{a, {}};
    Term cur = a;
    for (const Move& m : moves) {
      auto [next, step] = apply_rule_at(cur, mutation_laws(), m.rule, m.at, Direction::Forward);
      out.steps.push_back(std::move(step));
      cur = std::move(next);
    }
    return out;
  }

  DerivationTrace fallback(const Identity& goal) {
    ++stats_->fallbacks;
    for (std::size_t depth = 1; depth <= 16; ++depth) {
      if (auto tr = bounded_search(goal, mutation_laws(), SearchOptions{depth, 1'000'000})) return *tr;
    }
    throw Error("no derivation found for " + to_string(goal));
  }

  InterchangeStats local_;
  InterchangeStats* stats_;
  std::size_t counter_ = 0;
};

bool reserved_name(const std::string& v) {
  return v.size() > 1 && v[0] == 'w' && std::all_of(v.begin() + 1, v.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void check_pair(const Term& t, const Position& a, const Position& b) {
  if (!is_valid(t, a)) throw InvalidPosition("position '" + a.str() + "' is not in " + to_string(t));
  if (!is_valid(t, b)) throw InvalidPosition("position '" + b.str() + "' is not in " + to_string(t));
  if (!incomparable(a, b)) throw InvalidArgument("positions '" + a.str() + "' and '" + b.str() + "' are nested");
  const GroupSpec& kl = detail::klein_group();
  const GroupElement ca = kl.evaluate(a), cb = kl.evaluate(b);
  if (ca != cb)
    throw InvalidArgument("colors differ: '" + a.str() + "' is " + kl.name(ca) + ", '" + b.str() + "' is " + kl.name(cb));
}

}  // namespace

DerivationTrace interchange_vertices(const Term& t, const Position& a, const Position& b, InterchangeStats* stats) {
  check_pair(t, a, b);
  Deriver d(stats);
  DerivationTrace tr = d.swap(t, a, b);
  const VerifyResult v = verify_trace(tr, mutation_laws());
  if (!v.ok || !(v.final == detail::swap_subtrees(t, a, b)))
    throw Error("internal error: interchange trace failed verification: " + v.message);
  return tr;
}

DerivationTrace derive_interchange(const SwapRequest& r, InterchangeStats* stats) {
  const Measures m = measures(r.term);
  if (!m.linear) throw InvalidArgument("term is not linear: " + to_string(r.term));
  for (const auto& [v, n] : m.occurrences)
    if (reserved_name(v)) throw InvalidArgument("variable name '" + v + "' is reserved (w followed by digits)");
  for (const Position* p : {&r.first, &r.second}) {
    if (!is_valid(r.term, *p)) throw InvalidPosition("position '" + p->str() + "' is not in " + to_string(r.term));
    if (!subterm_at(r.term, *p).is_leaf()) throw InvalidArgument("position '" + p->str() + "' is not a leaf");
  }
  if (r.first == r.second) throw InvalidArgument("both positions hold the same variable");
  return interchange_vertices(r.term, r.first, r.second, stats);
}

}  // namespace medial
