#include "medial/total_color.hpp"

#include <algorithm>
#include <charconv>
#include <vector>

#include "internal.hpp"
#include "medial/error.hpp"

namespace medial {

TotalColor TotalColor::parse(std::string_view text) {
  std::vector<std::int64_t> v;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string_view field = text.substr(start, end - start);
    std::int64_t x = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() || x < 0)
      throw ParseError("count must be a nonnegative integer", start);
    v.push_back(x);
    if (end == text.size()) break;
    start = end + 1;
  }
  if (v.size() != 4) throw ParseError("total color needs exactly four counts", 0);
  return {v[0], v[1], v[2], v[3]};
}

std::string TotalColor::str() const {
  return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," + std::to_string(d);
}

TotalColorReport total_color(const Term& t) {
  const GroupSpec& kl = detail::klein_group();
  TotalColor q;
  for (const auto& [p, g] : leaf_colors(t, kl)) {
    if (g == kl.alpha()) ++q.a;
    else if (g == kl.beta()) ++q.b;
    else if (g == kl.gamma()) ++q.c;
    else ++q.d;
  }
  return {q, q.phi1(), q.phi2()};
}

bool is_representable(const TotalColor& q) {
  if (q.a < 0 || q.b < 0 || q.c < 0 || q.d < 0) return false;
  if (q == TotalColor{0, 0, 0, 1}) return true;
  if ((2 * q.m() + q.n()) % 3 != 1) return false;
  return q.a <= q.phi1() && q.b <= q.phi1() && q.c <= q.phi2() && q.d <= q.phi2();
}

namespace {

// Replaces the first leaf (left to right) of color g by a two-leaf tree.
Term grow_first(const Term& t, GroupElement g) {
  const GroupSpec& kl = detail::klein_group();
  for (const auto& [p, c] : leaf_colors(t, kl)) {
    if (c == g) return replace_at(t, p, Term::node(Term::leaf("v"), Term::leaf("v")));
  }
  throw Error("internal error: no leaf of color " + kl.name(g) + " in " + to_string(t));
}

Term swap_root(const Term& t) { return Term::node(t.right(), t.left()); }

Term build(TotalColor q) {
  if (q == TotalColor{0, 0, 0, 1}) return Term::leaf("v");
  if (q == TotalColor{1, 1, 0, 0}) return Term::node(Term::leaf("v"), Term::leaf("v"));
  const bool swapped = q.c > q.d;
  if (swapped) q = {q.b, q.a, q.d, q.c};
  const bool dualized = q.a > q.b;
  if (dualized) std::swap(q.a, q.b);

  const GroupSpec& kl = detail::klein_group();
  Term t = q.c > 0 ? grow_first(build({q.a + 1, q.b, q.c - 1, q.d - 1}), kl.alpha())
                   : grow_first(build({q.a - 1, q.b - 1, q.c + 1, q.d}), kl.gamma());
  if (dualized) t = dual(t);
  if (swapped) t = swap_root(t);
  return t;
}

}  // namespace

Term construct_tree(const TotalColor& q) {
  if (!is_representable(q)) throw InvalidArgument("total color " + q.str() + " is not representable");
  return relabel(build(q), "v");
}

std::map<GroupElement, std::int64_t> vertex_color_counts(const Term& t) {
  std::map<GroupElement, std::int64_t> out;
  for (const auto& [p, g] : vertex_colors(t, detail::klein_group())) ++out[g];
  return out;
}

}  // namespace medial
