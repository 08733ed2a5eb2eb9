#include "medial/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "medial/error.hpp"

namespace medial {

// --- Position -------------------------------------------------------------

Position Position::parse(std::string_view text) {
  std::vector<Step> steps;
  steps.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'L': steps.push_back(Step::Left); break;
      case 'R': steps.push_back(Step::Right); break;
      default: throw ParseError("position must be a string over L/R", i);
    }
  }
  return Position(std::move(steps));
}

std::string Position::str() const {
  std::string out;
  out.reserve(steps_.size());
  for (Step s : steps_) out.push_back(s == Step::Left ? 'L' : 'R');
  return out;
}

Position Position::child(Step s) const {
  Position p = *this;
  p.steps_.push_back(s);
  return p;
}

Position Position::parent() const {
  if (steps_.empty()) throw InvalidPosition("the root has no parent");
  Position p = *this;
  p.steps_.pop_back();
  return p;
}

Position Position::sibling() const {
  if (steps_.empty()) throw InvalidPosition("the root has no sibling");
  Position p = *this;
  p.steps_.back() = p.steps_.back() == Step::Left ? Step::Right : Step::Left;
  return p;
}

bool Position::is_prefix_of(const Position& other) const {
  return steps_.size() <= other.steps_.size() &&
         std::equal(steps_.begin(), steps_.end(), other.steps_.begin());
}

Position Position::suffix(std::size_t n) const {
  return Position(std::vector<Step>(steps_.begin() + static_cast<std::ptrdiff_t>(n), steps_.end()));
}

Position Position::prefix(std::size_t n) const {
  return Position(std::vector<Step>(steps_.begin(), steps_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Position Position::mirrored() const {
  Position p = *this;
  for (Step& s : p.steps_) s = s == Step::Left ? Step::Right : Step::Left;
  return p;
}

Position operator+(const Position& head, const Position& tail) {
  Position p = head;
  p.steps_.insert(p.steps_.end(), tail.steps_.begin(), tail.steps_.end());
  return p;
}

Position common_prefix(const Position& a, const Position& b) {
  std::size_t n = 0;
  while (n < a.depth() && n < b.depth() && a[n] == b[n]) ++n;
  return a.prefix(n);
}

bool incomparable(const Position& a, const Position& b) {
  return !a.is_prefix_of(b) && !b.is_prefix_of(a);
}

// --- Term -----------------------------------------------------------------

struct Term::Node {
  std::string name;
  Term left;
  Term right;
  std::size_t rank;
  bool leaf;
};

Term Term::leaf(std::string name) {
  return Term(std::shared_ptr<const Node>(new Node{std::move(name), Term(nullptr), Term(nullptr), 1, true}));
}

Term Term::node(Term left, Term right) {
  const std::size_t r = left.rank() + right.rank();
  return Term(std::shared_ptr<const Node>(new Node{{}, std::move(left), std::move(right), r, false}));
}

bool Term::is_leaf() const { return node_->leaf; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::left() const { return node_->left; }
const Term& Term::right() const { return node_->right; }
std::size_t Term::rank() const { return node_->rank; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.name() == b.name();
  if (a.rank() != b.rank()) return false;
  return a.left() == b.left() && a.right() == b.right();
}

// --- parsing --------------------------------------------------------------

bool is_variable_name(std::string_view name) {
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term term() {
    skip_ws();
    Term acc = factor();
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] == ')' || text_[pos_] == '=') return acc;
      acc = Term::node(std::move(acc), factor());
    }
  }

  void expect_end() {
    skip_ws();
    if (pos_ < text_.size()) {
      if (text_[pos_] == ')') throw ParseError("unbalanced ')'", pos_);
      throw ParseError("unexpected character", pos_);
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::size_t offset() const { return pos_; }

 private:
  Term factor() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected a variable or '('", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      const std::size_t open = pos_++;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')') throw ParseError("empty factor", open);
      Term inner = term();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("unbalanced '('", open);
      ++pos_;
      return inner;
    }
    if (c >= 'a' && c <= 'z') {
      const std::size_t start = pos_++;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
      return Term::leaf(std::string(text_.substr(start, pos_ - start)));
    }
    if (c == ')') throw ParseError("unbalanced ')'", pos_);
    if (c == '=') throw ParseError("empty term", pos_);
    throw ParseError("illegal identifier", pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  p.expect_end();
  return t;
}

Identity parse_identity(std::string_view text) {
  Parser p(text);
  Term lhs = p.term();
  if (!p.accept('=')) {
    p.expect_end();
    throw ParseError("expected '='", p.offset());
  }
  Term rhs = p.term();
  p.expect_end();
  return {std::move(lhs), std::move(rhs)};
}

// --- printing -------------------------------------------------------------

namespace {
void print(const Term& t, std::string& out) {
  if (t.is_leaf()) {
    out += t.name();
    return;
  }
  for (const Term* c : {&t.left(), &t.right()}) {
    if (c->is_leaf()) {
      out += c->name();
    } else {
      out.push_back('(');
      print(*c, out);
      out.push_back(')');
    }
  }
}
}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

std::string to_string(const Identity& e) { return to_string(e.lhs) + "=" + to_string(e.rhs); }

// --- structure ------------------------------------------------------------

bool is_valid(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (Step s : p.steps()) {
    if (cur->is_leaf()) return false;
    cur = &cur->child(s);
  }
  return true;
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (Step s : p.steps()) {
    if (cur->is_leaf()) throw InvalidPosition("position " + p.str() + " descends below a leaf");
    cur = &cur->child(s);
  }
  return *cur;
}

namespace {
Term replace_from(const Term& t, std::span<const Step> steps, const Term& s, const Position& full) {
  if (steps.empty()) return s;
  if (t.is_leaf()) throw InvalidPosition("position " + full.str() + " descends below a leaf");
  if (steps.front() == Step::Left) return Term::node(replace_from(t.left(), steps.subspan(1), s, full), t.right());
  return Term::node(t.left(), replace_from(t.right(), steps.subspan(1), s, full));
}
}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& s) {
  return replace_from(t, p.steps(), s, p);
}

Term dual(const Term& t) {
  if (t.is_leaf()) return t;
  return Term::node(dual(t.right()), dual(t.left()));
}

Identity dual(const Identity& e) { return {dual(e.lhs), dual(e.rhs)}; }

Term substitute(const Term& t, const Substitution& s) {
  if (t.is_leaf()) {
    auto it = s.find(t.name());
    return it == s.end() ? t : it->second;
  }
  return Term::node(substitute(t.left(), s), substitute(t.right(), s));
}

namespace {
void collect(const Term& t, Position& at, Measures& m) {
  if (t.is_leaf()) {
    ++m.rank;
    if (++m.occurrences[t.name()] > 1) m.linear = false;
    m.positions[t.name()].push_back(at);
    return;
  }
  at = at.left();
  collect(t.left(), at, m);
  at = at.parent().right();
  collect(t.right(), at, m);
  at = at.parent();
}
}  // namespace

Measures measures(const Term& t) {
  Measures m;
  Position at;
  collect(t, at, m);
  return m;
}

bool is_linear(const Term& t) { return measures(t).linear; }

std::vector<Position> leaf_positions(const Term& t) {
  std::vector<Position> out;
  std::function<void(const Term&, const Position&)> walk = [&](const Term& s, const Position& p) {
    if (s.is_leaf()) {
      out.push_back(p);
      return;
    }
    walk(s.left(), p.left());
    walk(s.right(), p.right());
  };
  walk(t, Position{});
  return out;
}

std::vector<Position> all_positions(const Term& t) {
  std::vector<Position> out;
  std::function<void(const Term&, const Position&)> walk = [&](const Term& s, const Position& p) {
    out.push_back(p);
    if (s.is_leaf()) return;
    walk(s.left(), p.left());
    walk(s.right(), p.right());
  };
  walk(t, Position{});
  return out;
}

namespace {
std::vector<Term> unlabeled_shapes(std::size_t rank) {
  if (rank == 1) return {Term::leaf("v")};
  std::vector<Term> out;
  for (std::size_t k = 1; k < rank; ++k) {
    const auto lefts = unlabeled_shapes(k);
    const auto rights = unlabeled_shapes(rank - k);
    for (const Term& l : lefts)
      for (const Term& r : rights) out.push_back(Term::node(l, r));
  }
  return out;
}
}  // namespace

std::vector<Term> enumerate_shapes(std::size_t rank) {
  if (rank == 0) return {};
  std::vector<Term> out = unlabeled_shapes(rank);
  for (Term& t : out) t = relabel(t);
  return out;
}

Term relabel(const Term& t, std::string_view prefix) {
  std::size_t next = 0;
  std::function<Term(const Term&)> go = [&](const Term& s) -> Term {
    if (s.is_leaf()) return Term::leaf(std::string(prefix) + std::to_string(++next));
    Term l = go(s.left());
    return Term::node(std::move(l), go(s.right()));
  };
  return go(t);
}

bool same_shape(const Term& a, const Term& b) {
  if (a.is_leaf() || b.is_leaf()) return a.is_leaf() && b.is_leaf();
  return same_shape(a.left(), b.left()) && same_shape(a.right(), b.right());
}

}  // namespace medial
