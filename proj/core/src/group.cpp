#include "medial/group.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "medial/error.hpp"

namespace medial {

namespace {

std::vector<long long> parse_int_list(std::string_view text, std::string_view what) {
  std::vector<long long> out;
  std::size_t pos = 0;
  for (;;) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc{}) throw ParseError(std::string("malformed ") + std::string(what), pos);
    out.push_back(v);
    pos = static_cast<std::size_t>(ptr - text.data());
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos == text.size()) break;
    if (text[pos] != ',') throw ParseError(std::string("expected ',' in ") + std::string(what), pos);
    ++pos;
  }
  return out;
}

int reduce(long long v, int mod) { return static_cast<int>(((v % mod) + mod) % mod); }

}  // namespace

// --- GroupSpec ------------------------------------------------------------

bool generates(int m, int n, GroupElement alpha, GroupElement beta) {
  const int order = m * n;
  std::vector<char> seen(static_cast<std::size_t>(order), 0);
  std::vector<GroupElement> stack{{0, 0}};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const GroupElement g = stack.back();
    stack.pop_back();
    for (GroupElement s : {alpha, beta}) {
      const GroupElement h{(g.i + s.i) % m, (g.j + s.j) % n};
      const int idx = h.i + h.j * m;
      if (!seen[static_cast<std::size_t>(idx)]) {
        seen[static_cast<std::size_t>(idx)] = 1;
        ++count;
        stack.push_back(h);
      }
    }
  }
  return count == order;
}

GroupSpec::GroupSpec(int m, int n, GroupElement alpha, GroupElement beta) : m_(m), n_(n) {
  if (m < 1 || n < 1) throw InvalidArgument("group orders must be positive");
  alpha_ = {reduce(alpha.i, m), reduce(alpha.j, n)};
  beta_ = {reduce(beta.i, m), reduce(beta.j, n)};
  if (!generates(m, n, alpha_, beta_))
    throw InvalidArgument("alpha and beta do not generate Z_" + std::to_string(m) + " x Z_" + std::to_string(n));
}

GroupSpec GroupSpec::klein() { return GroupSpec(2, 2, {1, 0}, {0, 1}); }

GroupSpec GroupSpec::parse(std::string_view text) {
  const auto v = parse_int_list(text, "group spec");
  if (v.size() != 6) throw ParseError("group spec needs six integers m,n,a,a',b,b'", 0);
  for (long long x : v)
    if (x < 0) throw ParseError("group spec entries must be nonnegative", 0);
  if (v[0] > 4096 || v[1] > 4096) throw InvalidArgument("group order too large");
  return GroupSpec(static_cast<int>(v[0]), static_cast<int>(v[1]),
                   {reduce(v[2], std::max<int>(1, static_cast<int>(v[0]))), reduce(v[3], std::max<int>(1, static_cast<int>(v[1])))},
                   {reduce(v[4], std::max<int>(1, static_cast<int>(v[0]))), reduce(v[5], std::max<int>(1, static_cast<int>(v[1])))});
}

GroupElement GroupSpec::mul(GroupElement a, GroupElement b) const {
  return {(a.i + b.i) % m_, (a.j + b.j) % n_};
}

GroupElement GroupSpec::evaluate(const Position& p) const {
  GroupElement g = identity();
  for (Step s : p.steps()) g = step(g, s);
  return g;
}

bool GroupSpec::is_klein() const { return *this == klein(); }

std::string GroupSpec::name(GroupElement g) const {
  if (is_klein()) {
    if (g == GroupElement{0, 0}) return "1";
    if (g == GroupElement{1, 0}) return "alpha";
    if (g == GroupElement{0, 1}) return "beta";
    return "gamma";
  }
  return "(" + std::to_string(g.i) + "," + std::to_string(g.j) + ")";
}

std::string GroupSpec::str() const {
  return std::to_string(m_) + "," + std::to_string(n_) + "," + std::to_string(alpha_.i) + "," +
         std::to_string(alpha_.j) + "," + std::to_string(beta_.i) + "," + std::to_string(beta_.j);
}

// --- GroupRingElement -----------------------------------------------------

void GroupRingElement::add(GroupElement g, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(g, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::int64_t GroupRingElement::operator[](GroupElement g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? 0 : it->second;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
  for (const auto& [g, c] : o.terms_) add(g, c);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
  for (const auto& [g, c] : o.terms_) add(g, -c);
  return *this;
}

// --- OperationSelector ----------------------------------------------------

void OperationSelector::insert(int k) {
  if (k < 1 || k > 4) throw InvalidArgument("operation index must be in 1..4, got " + std::to_string(k));
  mask_ |= 1U << k;
}

OperationSelector::OperationSelector(std::initializer_list<int> ks) {
  for (int k : ks) insert(k);
  if (mask_ == 0) throw InvalidArgument("operation selector must be nonempty");
}

OperationSelector::OperationSelector(const std::vector<int>& ks) {
  for (int k : ks) insert(k);
  if (mask_ == 0) throw InvalidArgument("operation selector must be nonempty");
}

OperationSelector OperationSelector::parse(std::string_view text) {
  const auto v = parse_int_list(text, "operation list");
  std::vector<int> ks;
  for (long long k : v) {
    if (k < 1 || k > 4) throw ParseError("operation index must be in 1..4", 0);
    ks.push_back(static_cast<int>(k));
  }
  return OperationSelector(ks);
}

std::vector<int> OperationSelector::members() const {
  std::vector<int> out;
  for (int k = 1; k <= 4; ++k)
    if (contains(k)) out.push_back(k);
  return out;
}

OperationSelector OperationSelector::dual() const {
  OperationSelector d;
  for (int k : members()) d.insert(k == 2 ? 3 : k == 3 ? 2 : k);
  return d;
}

std::string OperationSelector::str() const {
  std::string out;
  for (int k : members()) {
    if (!out.empty()) out += ',';
    out += std::to_string(k);
  }
  return out;
}

// --- coloring -------------------------------------------------------------

namespace {
void color_walk(const Term& t, const GroupSpec& g, const Position& at, GroupElement c, bool leaves_only,
                std::map<Position, GroupElement>& out) {
  if (t.is_leaf() || !leaves_only) out.emplace(at, c);
  if (t.is_leaf()) return;
  color_walk(t.left(), g, at.left(), g.step(c, Step::Left), leaves_only, out);
  color_walk(t.right(), g, at.right(), g.step(c, Step::Right), leaves_only, out);
}
}  // namespace

std::map<Position, GroupElement> leaf_colors(const Term& t, const GroupSpec& g) {
  std::map<Position, GroupElement> out;
  color_walk(t, g, Position{}, g.identity(), true, out);
  return out;
}

std::map<Position, GroupElement> vertex_colors(const Term& t, const GroupSpec& g) {
  std::map<Position, GroupElement> out;
  color_walk(t, g, Position{}, g.identity(), false, out);
  return out;
}

CoefficientVector coefficient_vector(const Term& t, const GroupSpec& g) {
  CoefficientVector out;
  std::function<void(const Term&, GroupElement)> walk = [&](const Term& s, GroupElement c) {
    if (s.is_leaf()) {
      out[s.name()].add(c, 1);
      return;
    }
    walk(s.left(), g.step(c, Step::Left));
    walk(s.right(), g.step(c, Step::Right));
  };
  walk(t, g.identity());
  return out;
}

bool in_sigma(const Identity& e, const GroupSpec& g) {
  return coefficient_vector(e.lhs, g) == coefficient_vector(e.rhs, g);
}

std::map<std::string, std::int64_t> integer_coefficients(const Term& t, int k) {
  if (k < 1 || k > 4) throw InvalidArgument("operation index must be in 1..4");
  const std::int64_t left_sign = (k == 1 || k == 2) ? 1 : -1;
  const std::int64_t right_sign = (k == 1 || k == 3) ? 1 : -1;
  std::map<std::string, std::int64_t> out;
  std::function<void(const Term&, std::int64_t)> walk = [&](const Term& s, std::int64_t sign) {
    if (s.is_leaf()) {
      out[s.name()] += sign;
      return;
    }
    walk(s.left(), sign * left_sign);
    walk(s.right(), sign * right_sign);
  };
  walk(t, 1);
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

bool oracle_in_sigma_K(const Identity& e, const OperationSelector& k) {
  for (int op : k.members())
    if (integer_coefficients(e.lhs, op) != integer_coefficients(e.rhs, op)) return false;
  return true;
}

namespace {

struct KlTuple {
  std::int64_t alpha, beta, gamma, one;
};

// Per-variable (alpha, beta, gamma, 1) coefficients of [lhs] - [rhs] over KL.
std::map<std::string, KlTuple> kl_difference(const Identity& e) {
  const GroupSpec kl = GroupSpec::klein();
  CoefficientVector lhs = coefficient_vector(e.lhs, kl);
  const CoefficientVector rhs = coefficient_vector(e.rhs, kl);
  for (const auto& [v, c] : rhs) lhs[v] -= c;
  std::map<std::string, KlTuple> out;
  for (const auto& [v, c] : lhs)
    out[v] = {c[{1, 0}], c[{0, 1}], c[{1, 1}], c[{0, 0}]};
  return out;
}

enum class Lattice { L123, L124, L234, L24 };

bool in_lattice(const KlTuple& d, Lattice l) {
  switch (l) {
    case Lattice::L123: return d.beta == d.alpha && d.gamma == -d.alpha && d.one == -d.alpha;
    case Lattice::L124: return d.beta == -d.alpha && d.gamma == d.alpha && d.one == -d.alpha;
    case Lattice::L234: return d.beta == d.alpha && d.gamma == d.alpha && d.one == d.alpha;
    case Lattice::L24: return d.gamma == d.alpha && d.one == d.beta;
  }
  return false;
}

std::optional<std::pair<Lattice, bool>> lattice_for(const OperationSelector& k) {
  using S = OperationSelector;
  if (k == S{1, 2, 3}) return std::pair{Lattice::L123, false};
  if (k == S{1, 2, 4}) return std::pair{Lattice::L124, false};
  if (k == S{2, 3, 4}) return std::pair{Lattice::L234, false};
  if (k == S{2, 4}) return std::pair{Lattice::L24, false};
  if (k == S{1, 3, 4}) return std::pair{Lattice::L124, true};
  if (k == S{3, 4}) return std::pair{Lattice::L24, true};
  return std::nullopt;
}

}  // namespace

bool criterion_supports(const OperationSelector& k) { return lattice_for(k).has_value(); }

bool criterion_in_sigma_K(const Identity& e, const OperationSelector& k) {
  const auto lattice = lattice_for(k);
  if (!lattice) throw UnsupportedSelector("no lattice criterion for K = {" + k.str() + "}");
  const auto diff = kl_difference(lattice->second ? dual(e) : e);
  return std::all_of(diff.begin(), diff.end(),
                     [&](const auto& kv) { return in_lattice(kv.second, lattice->first); });
}

// --- classification -------------------------------------------------------

namespace {

std::vector<std::string> leaf_names(const Term& t) {
  std::vector<std::string> out;
  std::function<void(const Term&)> walk = [&](const Term& s) {
    if (s.is_leaf()) {
      out.push_back(s.name());
      return;
    }
    walk(s.left());
    walk(s.right());
  };
  walk(t);
  return out;
}

std::map<std::string, std::vector<GroupElement>> colors_by_variable(const Term& t, const GroupSpec& g) {
  std::map<std::string, std::vector<GroupElement>> out;
  for (const auto& [pos, c] : leaf_colors(t, g)) out[subterm_at(t, pos).name()].push_back(c);
  for (auto& [v, cs] : out) std::sort(cs.begin(), cs.end());
  return out;
}

using ColorPair = std::pair<GroupElement, GroupElement>;

bool general(const Identity& e, const ColorPair& first, const ColorPair& second) {
  const GroupSpec kl = GroupSpec::klein();
  auto lhs = colors_by_variable(e.lhs, kl);
  auto rhs = colors_by_variable(e.rhs, kl);
  std::vector<std::string> vars;
  for (const auto& kv : lhs) vars.push_back(kv.first);
  for (const auto& kv : rhs) vars.push_back(kv.first);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

  auto is_pair = [](const std::vector<GroupElement>& cs, const ColorPair& p) {
    std::vector<GroupElement> want{p.first, p.second};
    std::sort(want.begin(), want.end());
    return cs == want;
  };
  for (const auto& v : vars) {
    const auto& l = lhs[v];
    const auto& r = rhs[v];
    if (l.size() == 1 && r.size() == 1) {
      if (l != r) return false;
    } else if (l.size() == 2 && r.size() == 2) {
      const bool ok = (is_pair(l, first) && is_pair(r, second)) || (is_pair(l, second) && is_pair(r, first));
      if (!ok) return false;
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace

Classification classify(const Identity& e, const GroupSpec& g) {
  Classification c;
  const Measures ml = measures(e.lhs);
  const Measures mr = measures(e.rhs);
  c.balanced = ml.occurrences == mr.occurrences;
  c.linear = c.balanced && ml.linear && mr.linear;

  if (ml.linear && same_shape(e.lhs, e.rhs)) {
    const auto a = leaf_names(e.lhs);
    const auto b = leaf_names(e.rhs);
    std::vector<std::size_t> diff;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) diff.push_back(i);
    if (diff.size() == 2 && a[diff[0]] == b[diff[1]] && a[diff[1]] == b[diff[0]]) {
      c.interchange = true;
      c.swapped = {a[diff[0]], a[diff[1]]};
      const auto leaves = leaf_positions(e.lhs);
      c.swapped_colors = {g.evaluate(leaves[diff[0]]), g.evaluate(leaves[diff[1]])};
    }
  }

  const GroupElement one{0, 0}, alpha{1, 0}, beta{0, 1}, gamma{1, 1};
  c.general_123 = general(e, {alpha, beta}, {gamma, one});
  c.general_124 = general(e, {alpha, gamma}, {beta, one});
  return c;
}

}  // namespace medial
