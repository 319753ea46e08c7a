#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "groupeq/bigint.hpp"

namespace groupeq {

// An identifier, optionally a member of an indexed family ("x" or "x_3").
struct Symbol {
  std::string name;
  long index = kNoIndex;  // kNoIndex for plain identifiers, >= 1 for family members

  static constexpr long kNoIndex = -1;

  bool indexed() const { return index != kNoIndex; }
  std::string str() const {
    return indexed() ? name + "_" + std::to_string(index) : name;
  }
  auto operator<=>(const Symbol&) const = default;
};

using Variable = Symbol;

// One letter of a word in G * F(X): a variable power or a coefficient power.
// Coefficient letters carry exponents too so that inverses and telescoped
// powers of coefficients stay single letters.
struct Letter {
  Symbol sym;
  bool is_variable = false;
  Int exponent = 1;  // nonzero

  auto operator<=>(const Letter&) const = default;
};

// A free-reduced word: no adjacent letters share (sym, is_variable), no zero
// exponents. The empty word is the identity.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters);

  const std::vector<Letter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  GroupWord inverse() const;
  GroupWord operator*(const GroupWord& rhs) const;
  // w^e by repetition; throws budget_error past kExpansionBudget letters.
  GroupWord pow(const Int& e) const;
  static GroupWord commutator(const GroupWord& u, const GroupWord& v);

  // Cyclic rotation by one letter (re-reduced); used by invariance tests.
  GroupWord rotated() const;

  std::string str() const;
  bool operator==(const GroupWord&) const = default;

  static constexpr std::size_t kExpansionBudget = 1u << 20;

 private:
  std::vector<Letter> letters_;
};

// Equation read as lhs = 1.
struct Equation {
  GroupWord lhs;
  bool operator==(const Equation&) const = default;
};

Int exponent_sum(const GroupWord& w, const Variable& v);
std::map<Variable, Int> exponent_sums(const GroupWord& w);
std::set<Variable> variables_of(const GroupWord& w);
std::set<Symbol> coefficients_of(const GroupWord& w);

enum class UnknownPolicy { Coefficient, Error };

// Which identifiers denote variables when parsing a word.
struct WordSyntax {
  std::set<std::string> variables;       // plain variable names
  std::set<std::string> var_families;    // base names of indexed variable families
  std::set<std::string> coefficients;    // declared coefficient names
  std::set<std::string> coeff_families;  // declared coefficient family bases
  UnknownPolicy unknown = UnknownPolicy::Coefficient;

  bool is_variable(const Symbol& s) const {
    return s.indexed() ? var_families.count(s.name) > 0
                       : variables.count(s.name) > 0;
  }
  bool is_declared_coefficient(const Symbol& s) const {
    return s.indexed() ? coeff_families.count(s.name) > 0
                       : coefficients.count(s.name) > 0;
  }
};

// Grammar (see docs/formats.md):
//   word   := item*
//   item   := atom ('^' sint)?
//   atom   := '1' | ident | '(' word ')' | '[' word ',' word ']'
//   ident  := letter alnum* ('_' uint)?
// '[u,v]' expands to u^-1 v^-1 u v.
GroupWord parse_word(std::string_view text, const WordSyntax& syntax = {});

// Evaluate w in a concrete group. G must provide Element, identity(), mul(),
// inverse() and power(Element, Int).
template <class G>
typename G::Element evaluate(
    const G& group, const GroupWord& w,
    const std::map<Symbol, typename G::Element>& variables,
    const std::map<Symbol, typename G::Element>& coefficients) {
  auto acc = group.identity();
  for (const Letter& l : w.letters()) {
    const auto& table = l.is_variable ? variables : coefficients;
    auto it = table.find(l.sym);
    if (it == table.end())
      throw std::invalid_argument("unbound symbol: " + l.sym.str());
    acc = group.mul(acc, group.power(it->second, l.exponent));
  }
  return acc;
}

}  // namespace groupeq
