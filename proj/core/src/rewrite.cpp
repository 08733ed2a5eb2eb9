#include "medial/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "medial/error.hpp"

namespace medial {

// --- identity sets --------------------------------------------------------

IdentitySet::IdentitySet(std::string name, std::vector<NamedIdentity> rules)
    : name_(std::move(name)), rules_(std::move(rules)) {
  for (std::size_t i = 0; i < rules_.size(); ++i)
    for (std::size_t j = i + 1; j < rules_.size(); ++j)
      if (rules_[i].name == rules_[j].name)
        throw InvalidArgument("duplicate rule name '" + rules_[i].name + "' in set " + name_);
}

const NamedIdentity* IdentitySet::find(std::string_view rule) const {
  for (const auto& r : rules_)
    if (r.name == rule) return &r;
  return nullptr;
}

IdentitySet IdentitySet::without(std::string_view rule) const {
  std::vector<NamedIdentity> kept;
  for (const auto& r : rules_)
    if (r.name != rule) kept.push_back(r);
  return IdentitySet(name_ + "-" + std::string(rule), std::move(kept));
}

namespace {

NamedIdentity named(std::string name, std::string_view text) { return {std::move(name), parse_identity(text)}; }

std::vector<NamedIdentity> mutation_list() {
  return {
      named("M1", "(xy)(zt)=(xz)(yt)"), named("M2", "(xy)(zt)=(ty)(zx)"), named("M3", "((xy)z)t=((xt)z)y"),
      named("M4", "(x(yz))t=(x(tz))y"), named("M5", "x((yz)t)=z((yx)t)"), named("M6", "x(y(zt))=z(y(xt))"),
  };
}

struct Row {
  const char* name;
  std::vector<int> ks;
  std::vector<const char*> mutation;  // mutation laws included by name ("*" = all six)
  std::vector<const char*> extra;
};

const std::vector<Row>& rows() {
  // The {1,2,3} row uses (zx^2)y^2=(zy^2)x^2 for its second extra identity.
  static const std::vector<Row> r{
      {"B1", {1}, {}, {"x(yz)=(xy)z", "xy=yx"}},
      {"B2", {2}, {}, {"x(y(z(xy)))=z"}},
      {"B3", {3}, {}, {"(((yx)z)y)x=z"}},
      {"B4", {4}, {"M1"}, {"xy=yx", "x(xy)=y"}},
      {"B12", {1, 2}, {"M1"}, {"(xy)z=(xz)y", "x(zy)=y(zx)"}},
      {"B13", {1, 3}, {"M1"}, {"z(yx)=y(zx)", "(yz)x=(xz)y"}},
      {"B14", {1, 4}, {"M1"}, {"xy=yx", "x(z(ty))=y(z(tx))"}},
      {"B23", {2, 3}, {"M1"}, {"xx=yy", "(x(xx))(xx)=x"}},
      {"B24", {2, 4}, {"M2"}, {"x(xy)=y"}},
      {"B34", {3, 4}, {"M2"}, {"(yx)x=y"}},
      {"B123", {1, 2, 3}, {"*"}, {"((xx)y)(zz)=((zz)y)(xx)", "(z(xx))(yy)=(z(yy))(xx)"}},
      {"B124", {1, 2, 4}, {"*"}, {"x(x(yz))=(x(zy))x"}},
      {"B134", {1, 3, 4}, {"*"}, {"((zy)x)x=x((yz)x)"}},
      {"B234", {2, 3, 4}, {"M1", "M2"}, {"(x(yy))(yy)=x"}},
  };
  return r;
}

const Row& row(std::string_view name) {
  for (const auto& r : rows())
    if (name == r.name) return r;
  throw InvalidArgument("unknown rule set '" + std::string(name) + "'");
}

IdentitySet build_row(const Row& r) {
  std::vector<NamedIdentity> rules;
  for (const auto& m : mutation_list()) {
    const bool take = std::any_of(r.mutation.begin(), r.mutation.end(), [&](const char* want) {
      return std::string_view(want) == "*" || m.name == want;
    });
    if (take) rules.push_back(m);
  }
  int i = 0;
  for (const char* text : r.extra) rules.push_back(named(std::string(r.name) + "." + std::to_string(++i), text));
  return IdentitySet(r.name, std::move(rules));
}

}  // namespace

const IdentitySet& mutation_laws() {
  static const IdentitySet m("M", mutation_list());
  return m;
}

std::vector<std::string> table_rows() {
  std::vector<std::string> out;
  for (const auto& r : rows()) out.emplace_back(r.name);
  return out;
}

const IdentitySet& table_basis(std::string_view name) {
  static const std::vector<IdentitySet> built = [] {
    std::vector<IdentitySet> v;
    for (const auto& r : rows()) v.push_back(build_row(r));
    return v;
  }();
  const Row& r = row(name);
  return built[static_cast<std::size_t>(&r - rows().data())];
}

OperationSelector table_row_selector(std::string_view name) { return OperationSelector(row(name).ks); }

const IdentitySet& builtin_rules(std::string_view name) {
  if (name == "M") return mutation_laws();
  return table_basis(name);
}

// --- matching and single steps --------------------------------------------

namespace {
bool match_into(const Term& pattern, const Term& subject, Substitution& s) {
  if (pattern.is_leaf()) {
    auto [it, inserted] = s.try_emplace(pattern.name(), subject);
    return inserted || it->second == subject;
  }
  if (subject.is_leaf()) return false;
  return match_into(pattern.left(), subject.left(), s) && match_into(pattern.right(), subject.right(), s);
}

void variables_of(const Term& t, std::vector<std::string>& out) {
  if (t.is_leaf()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  variables_of(t.left(), out);
  variables_of(t.right(), out);
}

bool binds_all(const Term& t, const Substitution& s) {
  std::vector<std::string> vars;
  variables_of(t, vars);
  return std::all_of(vars.begin(), vars.end(), [&](const std::string& v) { return s.count(v) > 0; });
}
}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  Substitution s;
  if (!match_into(pattern, subject, s)) return std::nullopt;
  return s;
}

Rewrite apply_identity_at(const Term& t, const Identity& e, const Position& p, Direction dir,
                          const Substitution& extra) {
  const Term& source = dir == Direction::Forward ? e.lhs : e.rhs;
  const Term& target = dir == Direction::Forward ? e.rhs : e.lhs;
  const Term& sub = subterm_at(t, p);
  auto s = match(source, sub);
  if (!s) throw NoMatch("'" + to_string(source) + "' does not match '" + to_string(sub) + "' at '" + p.str() + "'");
  for (const auto& [v, term] : extra) s->try_emplace(v, term);
  if (!binds_all(target, *s))
    throw NoMatch("target '" + to_string(target) + "' has variables the match leaves unbound");
  return {replace_at(t, p, substitute(target, *s)), std::move(*s)};
}

std::pair<Term, TraceStep> apply_rule_at(const Term& t, const IdentitySet& rules, std::string_view rule,
                                         const Position& p, Direction dir) {
  const NamedIdentity* r = rules.find(rule);
  if (!r) throw InvalidArgument("rule '" + std::string(rule) + "' is not in set " + rules.name());
  Rewrite rw = apply_identity_at(t, r->identity, p, dir);
  return {std::move(rw.result), TraceStep{p, r->name, dir, std::move(rw.substitution)}};
}

std::vector<Neighbor> one_step_rewrites(const Term& t, const IdentitySet& rules) {
  std::vector<Neighbor> out;
  for (const Position& p : all_positions(t)) {
    const Term& sub = subterm_at(t, p);
    for (const auto& r : rules) {
      for (Direction dir : {Direction::Forward, Direction::Reverse}) {
        const Term& source = dir == Direction::Forward ? r.identity.lhs : r.identity.rhs;
        const Term& target = dir == Direction::Forward ? r.identity.rhs : r.identity.lhs;
        auto s = match(source, sub);
        if (!s || !binds_all(target, *s)) continue;
        Term result = replace_at(t, p, substitute(target, *s));
        out.push_back({TraceStep{p, r.name, dir, std::move(*s)}, std::move(result)});
      }
    }
  }
  return out;
}

// --- traces ---------------------------------------------------------------

VerifyResult verify_trace(const DerivationTrace& trace, const IdentitySet& rules) {
  Term cur = trace.initial;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& st = trace.steps[i];
    auto fail = [&](std::string msg) { return VerifyResult{false, cur, i, std::move(msg)}; };
    const NamedIdentity* r = rules.find(st.rule);
    if (!r) return fail("unknown rule '" + st.rule + "'");
    const Term& source = st.direction == Direction::Forward ? r->identity.lhs : r->identity.rhs;
    const Term& target = st.direction == Direction::Forward ? r->identity.rhs : r->identity.lhs;
    if (!binds_all(source, st.substitution) || !binds_all(target, st.substitution))
      return fail("substitution does not bind every variable of " + st.rule);
    if (!is_valid(cur, st.position)) return fail("position '" + st.position.str() + "' is not in the term");
    if (!(subterm_at(cur, st.position) == substitute(source, st.substitution)))
      return fail("instance of " + st.rule + " does not occur at '" + st.position.str() + "'");
    cur = replace_at(cur, st.position, substitute(target, st.substitution));
  }
  return {true, cur, std::nullopt, {}};
}

Term replay_by_matching(const DerivationTrace& trace, const IdentitySet& rules) {
  Term cur = trace.initial;
  for (const TraceStep& st : trace.steps) {
    const NamedIdentity* r = rules.find(st.rule);
    if (!r) throw InvalidArgument("unknown rule '" + st.rule + "'");
    cur = apply_identity_at(cur, r->identity, st.position, st.direction, st.substitution).result;
  }
  return cur;
}

void append(DerivationTrace& trace, const DerivationTrace& more) {
  trace.steps.insert(trace.steps.end(), more.steps.begin(), more.steps.end());
}

DerivationTrace embed(const DerivationTrace& trace, const Term& host, const Position& at) {
  DerivationTrace out{replace_at(host, at, trace.initial), {}};
  out.steps.reserve(trace.steps.size());
  for (const TraceStep& st : trace.steps) {
    TraceStep moved = st;
    moved.position = at + st.position;
    out.steps.push_back(std::move(moved));
  }
  return out;
}

DerivationTrace instantiate(const DerivationTrace& trace, const Substitution& s) {
  DerivationTrace out{substitute(trace.initial, s), {}};
  out.steps.reserve(trace.steps.size());
  for (const TraceStep& st : trace.steps) {
    TraceStep inst = st;
    for (auto& [v, term] : inst.substitution) term = substitute(term, s);
    out.steps.push_back(std::move(inst));
  }
  return out;
}

// --- search ---------------------------------------------------------------

std::optional<DerivationTrace> bounded_search(const Identity& e, const IdentitySet& rules, SearchOptions opts) {
  struct Visit {
    Term term;
    std::size_t parent;
    std::optional<TraceStep> via;
    std::size_t depth;
  };
  std::vector<Visit> visits{{e.lhs, 0, std::nullopt, 0}};
  std::unordered_map<std::string, std::size_t> seen{{to_string(e.lhs), 0}};
  const std::string goal = to_string(e.rhs);

  auto build = [&](std::size_t idx) {
    std::vector<TraceStep> rev;
    for (std::size_t i = idx; i != 0; i = visits[i].parent) rev.push_back(*visits[i].via);
    DerivationTrace tr{e.lhs, {rev.rbegin(), rev.rend()}};
    if (!verify_trace(tr, rules).ok) throw Error("internal error: search produced an invalid trace");
    return tr;
  };

  if (seen.count(goal)) return build(0);
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const std::size_t idx = frontier.front();
    frontier.pop_front();
    if (visits[idx].depth >= opts.depth) continue;
    for (Neighbor& nb : one_step_rewrites(visits[idx].term, rules)) {
      std::string key = to_string(nb.result);
      if (seen.count(key)) continue;
      if (seen.size() >= opts.max_terms) return std::nullopt;
      visits.push_back({std::move(nb.result), idx, std::move(nb.step), visits[idx].depth + 1});
      seen.emplace(key, visits.size() - 1);
      if (key == goal) return build(visits.size() - 1);
      frontier.push_back(visits.size() - 1);
    }
  }
  return std::nullopt;
}

std::optional<DerivationTrace> bounded_search(const Identity& e, const IdentitySet& rules, std::size_t depth) {
  return bounded_search(e, rules, SearchOptions{depth, SearchOptions{}.max_terms});
}

// --- finite models --------------------------------------------------------

FiniteGroupoid::FiniteGroupoid(std::vector<std::vector<int>> table) : table_(std::move(table)) {
  const std::size_t k = table_.size();
  if (k == 0) throw InvalidArgument("groupoid must have at least one element");
  for (std::size_t i = 0; i < k; ++i) {
    if (table_[i].size() != k) throw InvalidArgument("row " + std::to_string(i) + " does not have " + std::to_string(k) + " entries");
    for (int v : table_[i])
      if (v < 0 || static_cast<std::size_t>(v) >= k)
        throw InvalidArgument("table entry " + std::to_string(v) + " out of range in row " + std::to_string(i));
  }
}

FiniteGroupoid FiniteGroupoid::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long k = 0;
  if (!(in >> k) || k <= 0 || k > 4096) throw InvalidArgument("groupoid file must start with a positive size");
  std::vector<std::vector<int>> table(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k)));
  for (auto& r : table)
    for (int& v : r)
      if (!(in >> v)) throw InvalidArgument("groupoid table is truncated or not numeric");
  std::string rest;
  if (in >> rest) throw InvalidArgument("trailing data after groupoid table");
  return FiniteGroupoid(std::move(table));
}

FiniteGroupoid FiniteGroupoid::abelian(int k, int modulus) {
  if (k < 1 || k > 4) throw InvalidArgument("operation index must be in 1..4");
  if (modulus < 1) throw InvalidArgument("modulus must be positive");
  const int ls = (k == 1 || k == 2) ? 1 : -1;
  const int rs = (k == 1 || k == 3) ? 1 : -1;
  std::vector<std::vector<int>> table(static_cast<std::size_t>(modulus), std::vector<int>(static_cast<std::size_t>(modulus)));
  for (int a = 0; a < modulus; ++a)
    for (int b = 0; b < modulus; ++b)
      table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (((ls * a + rs * b) % modulus) + modulus) % modulus;
  return FiniteGroupoid(std::move(table));
}

int FiniteGroupoid::evaluate(const Term& t, const std::map<std::string, int>& assignment) const {
  if (t.is_leaf()) return assignment.at(t.name());
  return (*this)(evaluate(t.left(), assignment), evaluate(t.right(), assignment));
}

bool model_check(const FiniteGroupoid& m, const Identity& e) {
  std::vector<std::string> vars;
  variables_of(e.lhs, vars);
  variables_of(e.rhs, vars);
  std::map<std::string, int> assignment;
  for (const auto& v : vars) assignment[v] = 0;
  for (;;) {
    if (m.evaluate(e.lhs, assignment) != m.evaluate(e.rhs, assignment)) return false;
    // Odometer over all size^|vars| assignments.
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      int& v = assignment[vars[i]];
      if (++v < m.size()) break;
      v = 0;
    }
    if (i == vars.size()) return true;
  }
}

}  // namespace medial
