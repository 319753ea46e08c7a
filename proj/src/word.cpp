#include "groupeq/word.hpp"

#include <cctype>
#include <sstream>

namespace groupeq {

namespace {

void append_reduced(std::vector<Letter>& out, const Letter& l) {
  if (l.exponent == 0) return;
  if (!out.empty() && out.back().sym == l.sym &&
      out.back().is_variable == l.is_variable) {
    out.back().exponent += l.exponent;
    if (out.back().exponent == 0) out.pop_back();
    return;
  }
  out.push_back(l);
}

}  // namespace

GroupWord::GroupWord(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) append_reduced(letters_, l);
}

GroupWord GroupWord::inverse() const {
  std::vector<Letter> rev;
  rev.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    rev.push_back({it->sym, it->is_variable, -it->exponent});
  GroupWord w;
  w.letters_ = std::move(rev);  // reversal of a reduced word is reduced
  return w;
}

GroupWord GroupWord::operator*(const GroupWord& rhs) const {
  std::vector<Letter> out = letters_;
  for (const Letter& l : rhs.letters_) append_reduced(out, l);
  GroupWord w;
  w.letters_ = std::move(out);
  return w;
}

GroupWord GroupWord::pow(const Int& e) const {
  if (e == 0 || is_identity()) return GroupWord();
  GroupWord base = e < 0 ? inverse() : *this;
  Int reps = abs(e);
  if (reps * base.size() > kExpansionBudget)
    throw budget_error("word power expansion too large: (" + str() + ")^" +
                       e.get_str());
  GroupWord acc;
  for (Int i = 0; i < reps; ++i) acc = acc * base;
  return acc;
}

GroupWord GroupWord::commutator(const GroupWord& u, const GroupWord& v) {
  return u.inverse() * v.inverse() * u * v;
}

GroupWord GroupWord::rotated() const {
  if (letters_.size() < 2) return *this;
  std::vector<Letter> rot(letters_.begin() + 1, letters_.end());
  GroupWord w(std::move(rot));
  std::vector<Letter> first{letters_.front()};
  return w * GroupWord(std::move(first));
}

std::string GroupWord::str() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const Letter& l : letters_) {
    if (!first) os << ' ';
    first = false;
    os << l.sym.str();
    if (l.exponent != 1) os << '^' << l.exponent.get_str();
  }
  return os.str();
}

Int exponent_sum(const GroupWord& w, const Variable& v) {
  Int sum = 0;
  for (const Letter& l : w.letters())
    if (l.is_variable && l.sym == v) sum += l.exponent;
  return sum;
}

std::map<Variable, Int> exponent_sums(const GroupWord& w) {
  std::map<Variable, Int> sums;
  for (const Letter& l : w.letters())
    if (l.is_variable) sums[l.sym] += l.exponent;
  return sums;
}

std::set<Variable> variables_of(const GroupWord& w) {
  std::set<Variable> vars;
  for (const Letter& l : w.letters())
    if (l.is_variable) vars.insert(l.sym);
  return vars;
}

std::set<Symbol> coefficients_of(const GroupWord& w) {
  std::set<Symbol> cs;
  for (const Letter& l : w.letters())
    if (!l.is_variable) cs.insert(l.sym);
  return cs;
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, const WordSyntax& syn)
      : text_(text), syn_(syn) {}

  GroupWord parse_all() {
    GroupWord w = parse_word_until("");
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return w;
  }

 private:
  std::string_view text_;
  const WordSyntax& syn_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Int parse_int() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == digits) fail("expected integer");
    return Int(std::string(text_.substr(start, pos_ - start)));
  }

  Symbol parse_symbol() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_])))
      fail("expected identifier");
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    Symbol s;
    s.name = std::string(text_.substr(start, pos_ - start));
    if (pos_ < text_.size() && text_[pos_] == '_') {
      ++pos_;
      std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (pos_ == digits) fail("expected family index after '_'");
      s.index = std::stol(std::string(text_.substr(digits, pos_ - digits)));
      if (s.index < 1) fail("family index must be >= 1");
    }
    return s;
  }

  // Stops at end of input or at any of the given delimiters.
  GroupWord parse_word_until(std::string_view delims) {
    GroupWord w;
    while (true) {
      char c = peek();
      if (c == '\0' || delims.find(c) != std::string_view::npos) return w;
      w = w * parse_item();
    }
  }

  GroupWord parse_item() {
    GroupWord atom;
    bool single_letter = false;
    Symbol sym;
    char c = peek();
    if (c == '1') {
      ++pos_;
      atom = GroupWord();
    } else if (c == '(') {
      ++pos_;
      atom = parse_word_until(")");
      expect(')');
    } else if (c == '[') {
      ++pos_;
      GroupWord u = parse_word_until(",");
      expect(',');
      GroupWord v = parse_word_until("]");
      expect(']');
      atom = GroupWord::commutator(u, v);
    } else {
      sym = parse_symbol();
      single_letter = true;
    }

    Int exp = 1;
    if (peek() == '^') {
      ++pos_;
      exp = parse_int();
      if (exp == 0) fail("zero exponent is not allowed");
    }

    if (single_letter) {
      bool is_var = syn_.is_variable(sym);
      if (!is_var && syn_.unknown == UnknownPolicy::Error &&
          !syn_.is_declared_coefficient(sym))
        fail("undeclared symbol '" + sym.str() + "'");
      return GroupWord({Letter{sym, is_var, exp}});
    }
    return atom.pow(exp);
  }
};

}  // namespace

GroupWord parse_word(std::string_view text, const WordSyntax& syntax) {
  return WordParser(text, syntax).parse_all();
}

}  // namespace groupeq
