#pragma once

// Local equational derivation: one step replaces a single subterm occurrence
// by a substitution instance of an identity (read in either direction).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "medial/group.hpp"
#include "medial/term.hpp"

namespace medial {

struct NamedIdentity {
  std::string name;
  Identity identity;
};

class IdentitySet {
 public:
  /// Throws InvalidArgument on duplicate rule names.
  IdentitySet(std::string name, std::vector<NamedIdentity> rules);

  const std::string& name() const { return name_; }
  const std::vector<NamedIdentity>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  auto begin() const { return rules_.begin(); }
  auto end() const { return rules_.end(); }

  const NamedIdentity* find(std::string_view rule) const;
  bool contains(std::string_view rule) const { return find(rule) != nullptr; }
  /// Copy with one rule dropped.
  IdentitySet without(std::string_view rule) const;

 private:
  std::string name_;
  std::vector<NamedIdentity> rules_;
};

/// The six mutation laws M1..M6, set name "M".
const IdentitySet& mutation_laws();

/// Row names of the table of finite bases: B1, B2, B3, B4, B12, B13, B14,
/// B23, B24, B34, B123, B124, B134, B234.
std::vector<std::string> table_rows();
const IdentitySet& table_basis(std::string_view row);
/// The operations a row is a basis for, e.g. B24 -> {2,4}.
OperationSelector table_row_selector(std::string_view row);
/// "M" or a table row; throws InvalidArgument for unknown names.
const IdentitySet& builtin_rules(std::string_view name);

// --- single steps ---------------------------------------------------------

enum class Direction { Forward, Reverse };

struct TraceStep {
  Position position;
  std::string rule;
  Direction direction = Direction::Forward;
  Substitution substitution;
};

struct DerivationTrace {
  Term initial;
  std::vector<TraceStep> steps;
};

/// First-order matching of `pattern` against `subject`; variables may bind
/// arbitrary subterms, repeated variables must bind equal subterms.
std::optional<Substitution> match(const Term& pattern, const Term& subject);

struct Rewrite {
  Term result;
  Substitution substitution;
};

/// Matches the source side of `e` (lhs for Forward) at `p` and rewrites it to
/// the other side. Variables of the target side that the match leaves unbound
/// are taken from `extra`. Throws InvalidPosition or NoMatch.
Rewrite apply_identity_at(const Term& t, const Identity& e, const Position& p, Direction dir,
                          const Substitution& extra = {});

/// Applies a named rule and returns the step that records it.
std::pair<Term, TraceStep> apply_rule_at(const Term& t, const IdentitySet& rules, std::string_view rule,
                                         const Position& p, Direction dir);

struct Neighbor {
  TraceStep step;
  Term result;
};

/// Every term reachable by one application of a rule of `rules`, at any
/// position, in either direction. Directions whose target has variables not
/// bound by the match are skipped.
std::vector<Neighbor> one_step_rewrites(const Term& t, const IdentitySet& rules);

// --- traces ---------------------------------------------------------------

struct VerifyResult {
  bool ok = false;
  Term final;
  std::optional<std::size_t> failed_step;
  std::string message;
};

/// Replays every step by instantiating the recorded substitution into the
/// rule and comparing syntactically; never performs matching.
VerifyResult verify_trace(const DerivationTrace& trace, const IdentitySet& rules);

/// Term obtained by folding apply_identity_at over the steps.
Term replay_by_matching(const DerivationTrace& trace, const IdentitySet& rules);

/// Appends `more` (which must start where `trace` currently ends).
void append(DerivationTrace& trace, const DerivationTrace& more);
/// Prefixes every step position with `at`.
DerivationTrace embed(const DerivationTrace& trace, const Term& host, const Position& at);
/// Applies `s` to the initial term and to every recorded substitution value.
DerivationTrace instantiate(const DerivationTrace& trace, const Substitution& s);

nlohmann::json trace_to_json(const DerivationTrace& trace);
DerivationTrace trace_from_json(const nlohmann::json& j);
std::string trace_to_string(const DerivationTrace& trace, int indent = 2);
DerivationTrace parse_trace(std::string_view text);

// --- search ---------------------------------------------------------------

struct SearchOptions {
  std::size_t depth = 4;
  /// Upper bound on distinct terms visited; the search gives up beyond it.
  std::size_t max_terms = 2'000'000;
};

/// Breadth-first search from lhs to rhs, memoized on canonical text; the
/// returned trace is minimal within the explored depth and verified.
std::optional<DerivationTrace> bounded_search(const Identity& e, const IdentitySet& rules, SearchOptions opts);
std::optional<DerivationTrace> bounded_search(const Identity& e, const IdentitySet& rules, std::size_t depth);

// --- finite models --------------------------------------------------------

class FiniteGroupoid {
 public:
  /// Throws InvalidArgument unless the table is k x k with entries in [0, k).
  explicit FiniteGroupoid(std::vector<std::vector<int>> table);

  /// First line k, then k lines of k space-separated indices (row i = i*j).
  static FiniteGroupoid parse(std::string_view text);
  /// x + y, x - y, -x + y or -x - y modulo `modulus` (k selects as in f_k).
  static FiniteGroupoid abelian(int k, int modulus);

  int size() const { return static_cast<int>(table_.size()); }
  int operator()(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }

  int evaluate(const Term& t, const std::map<std::string, int>& assignment) const;

 private:
  std::vector<std::vector<int>> table_;
};

/// True iff both sides agree under every assignment of elements to variables.
bool model_check(const FiniteGroupoid& m, const Identity& e);

}  // namespace medial
