#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "groupeq/linclass.hpp"
#include "groupeq/word.hpp"

namespace groupeq {

enum class SymbolRole { Variable, VarFamily, Coefficient, CoeffFamily };

// Declaration-ordered table of variable and coefficient names; the
// declaration order fixes matrix column order.
class SymbolTable {
 public:
  void declare(const std::string& base, SymbolRole role);
  std::optional<SymbolRole> role_of(const std::string& base) const;
  // rank in declaration order; undeclared bases sort after declared ones
  bool symbol_less(const Symbol& a, const Symbol& b) const;
  WordSyntax syntax(UnknownPolicy unknown = UnknownPolicy::Coefficient) const;
  const std::vector<std::pair<std::string, SymbolRole>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, SymbolRole>> entries_;
};

// Integer expressions over the rule index i: literals, i, +, -, *, ^.
class IndexExpr {
 public:
  struct Node;

  static IndexExpr parse(std::string_view text);
  static IndexExpr literal(const Int& v);
  Int eval(const Int& i) const;
  std::string str() const;

 private:
  std::shared_ptr<const Node> node_;
};

// One letter of a rule template: subscript and exponent may depend on i.
struct RuleLetter {
  std::string base;
  bool is_variable = false;
  std::optional<IndexExpr> subscript;
  IndexExpr exponent = IndexExpr::literal(1);
};

struct RuleTemplate {
  std::vector<RuleLetter> lhs, rhs;
  Equation instantiate(unsigned long i) const;  // i >= 1
};

// A finite system, or an infinite one given by a generation rule; infinite
// systems are only ever computed with through their truncations.
class SystemSource {
 public:
  static SystemSource finite(SymbolTable symbols, std::vector<Equation> eqs);
  static SystemSource generated(SymbolTable symbols,
                                std::function<Equation(unsigned long)> rule,
                                std::optional<unsigned long> max_index = {});

  bool is_generated() const { return static_cast<bool>(rule_); }
  // number of producible equations; nullopt = unbounded
  std::optional<unsigned long> max_equations() const;
  Equation equation(unsigned long i) const;  // 1-based
  std::vector<Equation> truncate(unsigned long n) const;
  const SymbolTable& symbols() const { return symbols_; }

 private:
  SymbolTable symbols_;
  std::vector<Equation> finite_;
  std::function<Equation(unsigned long)> rule_;
  std::optional<unsigned long> max_index_;
};

struct ExponentMatrixData {
  ExponentMatrix matrix;
  std::vector<Variable> columns;  // declared order
};

// One row per equation (first n for generated systems), one column per
// variable occurring in those equations, entry (i, j) = exponent sum.
ExponentMatrixData exponent_matrix(const SystemSource& sys, unsigned long n);

// System file format (see docs/formats.md):
//   var x, y            varfamily x i>=1
//   coeff g1, g2        coefffamily a i>=1
//   <word> = <word>     one equation per line (rhs usually 1)
//   rule i: <letters> = <letters>
SystemSource parse_system_file(std::istream& in);
SystemSource parse_system_file(const std::string& path);
SystemSource parse_system_text(const std::string& text);

void write_system_file(std::ostream& out, const SymbolTable& symbols,
                       const std::vector<Equation>& equations);

}  // namespace groupeq
