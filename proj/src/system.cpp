#include "groupeq/system.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace groupeq {

void SymbolTable::declare(const std::string& base, SymbolRole role) {
  if (role_of(base))
    throw std::invalid_argument("symbol '" + base + "' declared twice");
  entries_.emplace_back(base, role);
}

std::optional<SymbolRole> SymbolTable::role_of(const std::string& base) const {
  for (const auto& [name, role] : entries_)
    if (name == base) return role;
  return std::nullopt;
}

bool SymbolTable::symbol_less(const Symbol& a, const Symbol& b) const {
  auto rank = [&](const Symbol& s) {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].first == s.name) return i;
    return entries_.size();
  };
  std::size_t ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb;
  return a < b;
}

WordSyntax SymbolTable::syntax(UnknownPolicy unknown) const {
  WordSyntax syn;
  syn.unknown = unknown;
  for (const auto& [name, role] : entries_) {
    switch (role) {
      case SymbolRole::Variable: syn.variables.insert(name); break;
      case SymbolRole::VarFamily: syn.var_families.insert(name); break;
      case SymbolRole::Coefficient: syn.coefficients.insert(name); break;
      case SymbolRole::CoeffFamily: syn.coeff_families.insert(name); break;
    }
  }
  return syn;
}

// ---------------------------------------------------------------------------
// IndexExpr

struct IndexExpr::Node {
  enum class Op { Literal, Index, Add, Sub, Mul, Pow };
  Op op;
  Int value;  // Literal
  std::shared_ptr<const Node> a, b;
};

IndexExpr IndexExpr::literal(const Int& v) {
  IndexExpr e;
  auto n = std::make_shared<Node>();
  n->op = Node::Op::Literal;
  n->value = v;
  e.node_ = std::move(n);
  return e;
}

Int IndexExpr::eval(const Int& i) const {
  using Op = Node::Op;
  std::function<Int(const Node&)> go = [&](const Node& n) -> Int {
    switch (n.op) {
      case Op::Literal: return n.value;
      case Op::Index: return i;
      case Op::Add: return go(*n.a) + go(*n.b);
      case Op::Sub: return go(*n.a) - go(*n.b);
      case Op::Mul: return go(*n.a) * go(*n.b);
      case Op::Pow: {
        Int base = go(*n.a), exp = go(*n.b);
        if (exp < 0 || !exp.fits_ulong_p())
          throw std::invalid_argument("rule exponent out of range");
        return int_pow(base, exp.get_ui());
      }
    }
    throw std::logic_error("unreachable");
  };
  return go(*node_);
}

std::string IndexExpr::str() const {
  using Op = Node::Op;
  std::function<std::string(const Node&)> go = [&](const Node& n) -> std::string {
    switch (n.op) {
      case Op::Literal: return n.value.get_str();
      case Op::Index: return "i";
      case Op::Add: return "(" + go(*n.a) + "+" + go(*n.b) + ")";
      case Op::Sub: return "(" + go(*n.a) + "-" + go(*n.b) + ")";
      case Op::Mul: return "(" + go(*n.a) + "*" + go(*n.b) + ")";
      case Op::Pow: return "(" + go(*n.a) + "^" + go(*n.b) + ")";
    }
    throw std::logic_error("unreachable");
  };
  return go(*node_);
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view t) : text_(t) {}

  using NodePtr = std::shared_ptr<const IndexExpr::Node>;

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) throw parse_error("trailing input in expression", pos_);
    return e;
  }

  NodePtr expr() {
    NodePtr left = term();
    while (true) {
      char c = peek();
      if (c != '+' && c != '-') return left;
      ++pos_;
      left = make(c == '+' ? IndexExpr::Node::Op::Add : IndexExpr::Node::Op::Sub,
                  left, term());
    }
  }

  NodePtr term() {
    NodePtr left = factor();
    while (peek() == '*') {
      ++pos_;
      left = make(IndexExpr::Node::Op::Mul, left, factor());
    }
    return left;
  }

  NodePtr factor() {
    NodePtr base = atom();
    if (peek() == '^') {
      ++pos_;
      return make(IndexExpr::Node::Op::Pow, base, atom());
    }
    return base;
  }

  NodePtr atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (peek() != ')') throw parse_error("expected ')'", pos_);
      ++pos_;
      return e;
    }
    if (c == 'i') {
      ++pos_;
      auto n = std::make_shared<IndexExpr::Node>();
      n->op = IndexExpr::Node::Op::Index;
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      auto n = std::make_shared<IndexExpr::Node>();
      n->op = IndexExpr::Node::Op::Literal;
      n->value = Int(std::string(text_.substr(start, pos_ - start)));
      return n;
    }
    throw parse_error("expected expression atom", pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  static NodePtr make(IndexExpr::Node::Op op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<IndexExpr::Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }
};

}  // namespace

IndexExpr IndexExpr::parse(std::string_view text) {
  IndexExpr e;
  e.node_ = ExprParser(text).parse();
  return e;
}

// ---------------------------------------------------------------------------
// RuleTemplate

Equation RuleTemplate::instantiate(unsigned long i) const {
  Int iv(static_cast<unsigned long>(i));
  auto letters_of = [&](const std::vector<RuleLetter>& side) {
    std::vector<Letter> ls;
    for (const RuleLetter& rl : side) {
      Symbol s;
      s.name = rl.base;
      if (rl.subscript) {
        Int idx = rl.subscript->eval(iv);
        if (idx < 1 || !idx.fits_slong_p())
          throw std::invalid_argument("rule subscript out of range at i=" +
                                      std::to_string(i));
        s.index = idx.get_si();
      }
      Int e = rl.exponent.eval(iv);
      if (e == 0)
        throw std::invalid_argument("rule produced zero exponent at i=" +
                                    std::to_string(i));
      ls.push_back(Letter{s, rl.is_variable, e});
    }
    return GroupWord(std::move(ls));
  };
  GroupWord lhs = letters_of(this->lhs);
  GroupWord rhs = letters_of(this->rhs);
  return Equation{lhs * rhs.inverse()};
}

// ---------------------------------------------------------------------------
// SystemSource

SystemSource SystemSource::finite(SymbolTable symbols,
                                  std::vector<Equation> eqs) {
  SystemSource s;
  s.symbols_ = std::move(symbols);
  s.finite_ = std::move(eqs);
  return s;
}

SystemSource SystemSource::generated(
    SymbolTable symbols, std::function<Equation(unsigned long)> rule,
    std::optional<unsigned long> max_index) {
  SystemSource s;
  s.symbols_ = std::move(symbols);
  s.rule_ = std::move(rule);
  s.max_index_ = max_index;
  return s;
}

std::optional<unsigned long> SystemSource::max_equations() const {
  if (is_generated()) return max_index_;
  return static_cast<unsigned long>(finite_.size());
}

Equation SystemSource::equation(unsigned long i) const {
  if (i < 1) throw std::out_of_range("equation indices are 1-based");
  auto max = max_equations();
  if (max && i > *max)
    throw std::out_of_range("system has only " + std::to_string(*max) +
                            " equations");
  return is_generated() ? rule_(i) : finite_[i - 1];
}

std::vector<Equation> SystemSource::truncate(unsigned long n) const {
  std::vector<Equation> out;
  out.reserve(n);
  for (unsigned long i = 1; i <= n; ++i) out.push_back(equation(i));
  return out;
}

ExponentMatrixData exponent_matrix(const SystemSource& sys, unsigned long n) {
  std::vector<Equation> eqs = sys.truncate(n);
  std::set<Variable> seen;
  for (const Equation& e : eqs) {
    auto vs = variables_of(e.lhs);
    seen.insert(vs.begin(), vs.end());
  }
  std::vector<Variable> cols(seen.begin(), seen.end());
  std::sort(cols.begin(), cols.end(), [&](const Variable& a, const Variable& b) {
    return sys.symbols().symbol_less(a, b);
  });

  ExponentMatrixData data;
  data.columns = cols;
  data.matrix = ExponentMatrix(eqs.size(), cols.size());
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    auto sums = exponent_sums(eqs[i].lhs);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      auto it = sums.find(cols[j]);
      if (it != sums.end()) data.matrix.at(i, j) = it->second;
    }
  }
  return data;
}

// ---------------------------------------------------------------------------
// File format

namespace {

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

void check_family_clause(const std::string& clause) {
  std::string c;
  for (char ch : clause)
    if (!std::isspace(static_cast<unsigned char>(ch))) c += ch;
  if (c != "i>=1")
    throw std::invalid_argument("family declarations must end with 'i>=1'");
}

// Rule letters: base ('_' ('i' | uint | '{' expr '}'))? ('^' ['-'|'+'] factor)?
// The bare token "1" denotes the identity.
std::vector<RuleLetter> parse_rule_side(const std::string& text,
                                        const SymbolTable& table) {
  std::vector<RuleLetter> out;
  if (trim(text) == "1") return out;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  while (true) {
    skip_ws();
    if (pos >= text.size()) break;
    if (!std::isalpha(static_cast<unsigned char>(text[pos])))
      throw parse_error("expected identifier in rule", pos);
    RuleLetter rl;
    std::size_t start = pos;
    while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos])))
      ++pos;
    rl.base = text.substr(start, pos - start);
    if (pos < text.size() && text[pos] == '_') {
      ++pos;
      if (pos < text.size() && text[pos] == '{') {
        std::size_t close = text.find('}', pos);
        if (close == std::string::npos) throw parse_error("missing '}'", pos);
        rl.subscript = IndexExpr::parse(text.substr(pos + 1, close - pos - 1));
        pos = close + 1;
      } else {
        std::size_t s2 = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == 'i'))
          ++pos;
        if (pos == s2) throw parse_error("expected rule subscript", pos);
        rl.subscript = IndexExpr::parse(text.substr(s2, pos - s2));
      }
    }
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      bool neg = false;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        neg = text[pos] == '-';
        ++pos;
      }
      std::size_t s2 = pos;
      int depth = 0;
      while (pos < text.size()) {
        char c = text[pos];
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) break;
        ++pos;
      }
      std::string etext = text.substr(s2, pos - s2);
      for (char& ch : etext) {  // '{expr}' and '(expr)' are interchangeable here
        if (ch == '{') ch = '(';
        if (ch == '}') ch = ')';
      }
      IndexExpr mag = IndexExpr::parse(etext);
      rl.exponent = neg ? IndexExpr::parse("0-(" + mag.str() + ")") : mag;
    }
    auto role = table.role_of(rl.base);
    if (!role)
      throw std::invalid_argument("rule references undeclared symbol '" +
                                  rl.base + "'");
    if (rl.subscript) {
      if (*role != SymbolRole::VarFamily && *role != SymbolRole::CoeffFamily)
        throw std::invalid_argument("'" + rl.base + "' is not a family");
      rl.is_variable = (*role == SymbolRole::VarFamily);
    } else {
      if (*role != SymbolRole::Variable && *role != SymbolRole::Coefficient)
        throw std::invalid_argument("family '" + rl.base +
                                    "' used without subscript in rule");
      rl.is_variable = (*role == SymbolRole::Variable);
    }
    out.push_back(std::move(rl));
  }
  return out;
}

}  // namespace

SystemSource parse_system_file(std::istream& in) {
  SymbolTable table;
  std::vector<std::string> equation_lines;
  std::optional<std::string> rule_line;

  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    std::string rest = trim(line.substr(head.size()));
    if (head == "var") {
      for (const auto& n : split_names(rest)) table.declare(n, SymbolRole::Variable);
    } else if (head == "coeff") {
      for (const auto& n : split_names(rest)) table.declare(n, SymbolRole::Coefficient);
    } else if (head == "varfamily" || head == "coefffamily") {
      auto names = split_names(rest);
      if (names.size() < 2)
        throw std::invalid_argument(head + " needs a name and 'i>=1'");
      check_family_clause(rest.substr(rest.find(names[0]) + names[0].size()));
      table.declare(names[0], head == "varfamily" ? SymbolRole::VarFamily
                                                  : SymbolRole::CoeffFamily);
    } else if (head == "rule") {
      if (rule_line)
        throw std::invalid_argument("at most one rule line per system");
      rule_line = rest;
    } else {
      equation_lines.push_back(line);
    }
  }

  if (rule_line && !equation_lines.empty())
    throw std::invalid_argument(
        "a generated system cannot mix a rule with explicit equations");

  if (rule_line) {
    std::string r = *rule_line;  // "i: <lhs> = <rhs>"
    auto colon = r.find(':');
    if (colon == std::string::npos || trim(r.substr(0, colon)) != "i")
      throw std::invalid_argument("rule must start with 'rule i:'");
    std::string body = r.substr(colon + 1);
    auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("rule needs '='");
    RuleTemplate tmpl;
    tmpl.lhs = parse_rule_side(trim(body.substr(0, eq)), table);
    tmpl.rhs = parse_rule_side(trim(body.substr(eq + 1)), table);
    auto shared = std::make_shared<RuleTemplate>(std::move(tmpl));
    return SystemSource::generated(
        table, [shared](unsigned long i) { return shared->instantiate(i); });
  }

  WordSyntax syn = table.syntax();
  std::vector<Equation> eqs;
  for (const std::string& el : equation_lines) {
    auto eq = el.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("equation line needs '=': " + el);
    GroupWord lhs = parse_word(el.substr(0, eq), syn);
    GroupWord rhs = parse_word(el.substr(eq + 1), syn);
    eqs.push_back(Equation{lhs * rhs.inverse()});
  }
  return SystemSource::finite(std::move(table), std::move(eqs));
}

SystemSource parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open system file: " + path);
  return parse_system_file(in);
}

SystemSource parse_system_text(const std::string& text) {
  std::istringstream in(text);
  return parse_system_file(in);
}

void write_system_file(std::ostream& out, const SymbolTable& symbols,
                       const std::vector<Equation>& equations) {
  std::vector<std::string> vars, varfams, coeffs, coefffams;
  for (const auto& [name, role] : symbols.entries()) {
    switch (role) {
      case SymbolRole::Variable: vars.push_back(name); break;
      case SymbolRole::VarFamily: varfams.push_back(name); break;
      case SymbolRole::Coefficient: coeffs.push_back(name); break;
      case SymbolRole::CoeffFamily: coefffams.push_back(name); break;
    }
  }
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
  };
  if (!vars.empty()) out << "var " << join(vars) << '\n';
  for (const auto& f : varfams) out << "varfamily " << f << " i>=1\n";
  if (!coeffs.empty()) out << "coeff " << join(coeffs) << '\n';
  for (const auto& f : coefffams) out << "coefffamily " << f << " i>=1\n";
  for (const Equation& e : equations) out << e.lhs.str() << " = 1\n";
}

}  // namespace groupeq
