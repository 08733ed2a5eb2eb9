#pragma once

// Terms of a single binary operation, their concrete syntax and the
// positional/substitution machinery the rest of the library is built on.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace medial {

enum class Step : std::uint8_t { Left, Right };

/// Address of a subterm: the sequence of child choices taken from the root.
class Position {
 public:
  Position() = default;
  explicit Position(std::vector<Step> steps) : steps_(std::move(steps)) {}

  /// Parses a string over 'L'/'R'; the empty string is the root.
  static Position parse(std::string_view text);

  std::string str() const;
  std::span<const Step> steps() const { return steps_; }
  std::size_t depth() const { return steps_.size(); }
  bool is_root() const { return steps_.empty(); }
  Step operator[](std::size_t i) const { return steps_[i]; }

  Position child(Step s) const;
  Position left() const { return child(Step::Left); }
  Position right() const { return child(Step::Right); }
  Position parent() const;
  Position sibling() const;
  Step last() const { return steps_.back(); }

  bool is_prefix_of(const Position& other) const;
  /// Steps from index `n` on; `n` must not exceed depth().
  Position suffix(std::size_t n) const;
  Position prefix(std::size_t n) const;
  Position mirrored() const;

  friend Position operator+(const Position& head, const Position& tail);
  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;

 private:
  std::vector<Step> steps_;
};

Position common_prefix(const Position& a, const Position& b);
/// True when neither position addresses an ancestor-or-self of the other.
bool incomparable(const Position& a, const Position& b);

/// Immutable full binary tree over named variables. Copies share structure.
class Term {
 public:
  static Term leaf(std::string name);
  static Term node(Term left, Term right);

  bool is_leaf() const;
  /// Variable name; only meaningful for leaves.
  const std::string& name() const;
  const Term& left() const;
  const Term& right() const;
  const Term& child(Step s) const { return s == Step::Left ? left() : right(); }
  /// Number of leaves (variable occurrences).
  std::size_t rank() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Identity {
  Term lhs;
  Term rhs;
  friend bool operator==(const Identity&, const Identity&) = default;
};

/// Simultaneous replacement of variables by terms.
using Substitution = std::map<std::string, Term>;

// --- concrete syntax ------------------------------------------------------

/// One lowercase letter followed by zero or more digits.
bool is_variable_name(std::string_view name);

/// Juxtaposition is left-associative: "xyzt" is ((xy)z)t.
Term parse_term(std::string_view text);
Identity parse_identity(std::string_view text);

/// Leaves print bare; each child that is itself a node is parenthesized.
std::string to_string(const Term& t);
std::string to_string(const Identity& e);

// --- structure ------------------------------------------------------------

bool is_valid(const Term& t, const Position& p);
const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& s);

/// Mirror image: children swapped at every node.
Term dual(const Term& t);
Identity dual(const Identity& e);

Term substitute(const Term& t, const Substitution& s);

struct Measures {
  std::size_t rank = 0;
  bool linear = true;
  std::map<std::string, std::size_t> occurrences;
  std::map<std::string, std::vector<Position>> positions;
};

Measures measures(const Term& t);
bool is_linear(const Term& t);

/// Leaf positions in left-to-right order.
std::vector<Position> leaf_positions(const Term& t);
/// Every vertex position in preorder.
std::vector<Position> all_positions(const Term& t);

/// All full binary trees with `rank` leaves, leaves named v1, v2, ... left to
/// right. There are Catalan(rank - 1) of them.
std::vector<Term> enumerate_shapes(std::size_t rank);

/// Renames leaves prefix1, prefix2, ... in left-to-right order.
Term relabel(const Term& t, std::string_view prefix = "v");

/// Structural equality ignoring variable names.
bool same_shape(const Term& a, const Term& b);

}  // namespace medial
