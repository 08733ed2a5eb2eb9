#pragma once

// Total color of a tree over the Klein group: counts of alpha-, beta-, gamma-
// and 1-colored leaves, and which 4-tuples occur.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "medial/group.hpp"
#include "medial/term.hpp"

namespace medial {

struct TotalColor {
  std::int64_t a = 0;  // alpha leaves
  std::int64_t b = 0;  // beta leaves
  std::int64_t c = 0;  // gamma leaves
  std::int64_t d = 0;  // 1 leaves

  std::int64_t m() const { return a + b; }
  std::int64_t n() const { return c + d; }
  std::int64_t sum() const { return a + b + c + d; }
  /// (2m+n-1)/3 and (m+2n-2)/3; exact only when 2m+n = 1 mod 3.
  std::int64_t phi1() const { return (2 * m() + n() - 1) / 3; }
  std::int64_t phi2() const { return (m() + 2 * n() - 2) / 3; }

  /// "a,b,c,d" with nonnegative entries.
  static TotalColor parse(std::string_view text);
  std::string str() const;

  friend auto operator<=>(const TotalColor&, const TotalColor&) = default;
};

struct TotalColorReport {
  TotalColor color;
  std::int64_t phi1 = 0;
  std::int64_t phi2 = 0;
};

TotalColorReport total_color(const Term& t);

bool is_representable(const TotalColor& q);

/// A tree with total color q, leaves named v1, v2, ... left to right. Throws
/// InvalidArgument if q is not representable.
Term construct_tree(const TotalColor& q);

/// Color -> number of vertices (internal and leaves) over the Klein group.
std::map<GroupElement, std::int64_t> vertex_color_counts(const Term& t);

}  // namespace medial
