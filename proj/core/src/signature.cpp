#include "medial/signature.hpp"

#include <algorithm>

#include "medial/error.hpp"

namespace medial {

Signature Signature::parse(std::string_view text) {
  std::vector<Step> letters;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == 'a') letters.push_back(Step::Left);
    else if (text[i] == 'b') letters.push_back(Step::Right);
    else throw ParseError("signature must be a word over 'a' and 'b'", i);
  }
  return Signature(std::move(letters));
}

std::string Signature::str() const {
  std::string out;
  for (Step s : letters_) out.push_back(s == Step::Left ? 'a' : 'b');
  return out;
}

Term build_sigma_term(const Signature& s, std::string_view var) {
  if (!is_variable_name(var)) throw InvalidArgument("'" + std::string(var) + "' is not a variable name");
  for (std::size_t k = 1; k <= s.size(); ++k)
    if (var == "z" + std::to_string(k))
      throw InvalidArgument("variable '" + std::string(var) + "' collides with an auxiliary variable");
  Term t = Term::leaf(std::string(var));
  // Build from the deepest edge upwards: the suffix of length k is wrapped by z_k.
  const auto& letters = s.letters();
  for (std::size_t k = 1; k <= letters.size(); ++k) {
    Term aux = Term::leaf("z" + std::to_string(k));
    t = letters[letters.size() - k] == Step::Left ? Term::node(std::move(t), std::move(aux))
                                                  : Term::node(std::move(aux), std::move(t));
  }
  return t;
}

bool is_compressed(const Signature& s) {
  const auto& w = s.letters();
  if (w.size() <= 1) return true;
  // alpha^k, beta^k, or a single head letter followed by a constant run of the other.
  const bool constant_tail = std::all_of(w.begin() + 1, w.end(), [&](Step x) { return x == w[1]; });
  return constant_tail;
}

bool avoids_forbidden_factors(const Signature& s) {
  const auto& w = s.letters();
  constexpr Step a = Step::Left, b = Step::Right;
  const std::vector<std::vector<Step>> forbidden{{a, a, b}, {a, b, a}, {b, b, a}, {b, a, b}};
  for (const auto& f : forbidden)
    if (std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end()) return false;
  return true;
}

Position terminator(const Term& t, const Position& from, const Signature& s) {
  Position p = from + s.path();
  if (!is_valid(t, p))
    throw InvalidPosition("no descending path with signature '" + s.str() + "' from '" + from.str() + "'");
  return p;
}

GroupElement evaluate(const Signature& s, const GroupSpec& g) { return g.evaluate(s.path()); }

}  // namespace medial
