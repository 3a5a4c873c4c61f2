#include "jbgp/text.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace jbgp {

ParseError::ParseError(ErrorKind kind, const std::string &what, std::size_t offset,
                       std::size_t line, std::size_t column)
    : Error(kind, what), offset_(offset), line_(line), column_(column) {}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

Term unit_term() { return Term::gen(Generator{0, "1", Parity::Even, true}); }

class Parser {
public:
  Parser(std::string_view src, const Alphabet &alphabet, bool allow_vars)
      : src_(src), alphabet_(alphabet), allow_vars_(allow_vars) {}

  Term run() {
    Term t = expr();
    skip();
    if (pos_ < src_.size())
      fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return t;
  }

private:
  [[noreturn]] void fail(const std::string &msg, ErrorKind kind = ErrorKind::Parse) const {
    fail_at(pos_, msg, kind);
  }
  [[noreturn]] void fail_at(std::size_t at, const std::string &msg, ErrorKind kind) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream out;
    out << (kind == ErrorKind::Parse ? "syntax error" : "error") << " at offset " << at + 1
        << " (line " << line << ", column " << col << "): " << msg;
    throw ParseError(kind, out.str(), at + 1, line, col);
  }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < src_.size() && src_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c))
      return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c))
      fail(pos_ < src_.size() ? "expected '" + std::string(1, c) + "'"
                              : "expected '" + std::string(1, c) + "' before end of input");
  }
  bool at_digit() {
    skip();
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  Scalar rational() {
    std::size_t start = pos_;
    std::string num = digits();
    if (pos_ < src_.size() && src_[pos_] == '/') {
      ++pos_;
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        fail("expected a denominator");
      std::string den = digits();
      mpz_class n(num), d(den);
      if (d == 0)
        fail_at(start, "zero denominator", ErrorKind::Parse);
      Scalar s(n, d);
      s.canonicalize();
      return s;
    }
    return Scalar(mpz_class(num));
  }

  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_]))
      ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  Term expr() {
    std::vector<std::pair<Scalar, Term>> terms;
    skip();
    Scalar sign = 1;
    if (accept('+'))
      sign = 1;
    else if (accept('-'))
      sign = -1;
    terms.push_back(term(sign));
    for (;;) {
      if (accept('+'))
        terms.push_back(term(1));
      else if (accept('-'))
        terms.push_back(term(-1));
      else
        break;
    }
    if (terms.size() == 1 && terms.front().first == 1)
      return terms.front().second;
    return Term::sum(std::move(terms));
  }

  bool factor_follows() {
    skip();
    if (pos_ >= src_.size())
      return false;
    char c = src_[pos_];
    return ident_start(c) || c == '?' || c == '{' || c == '<' || c == '(' ||
           std::isdigit(static_cast<unsigned char>(c));
  }

  std::pair<Scalar, Term> term(Scalar sign) {
    skip();
    if (accept('-'))
      sign = -sign;
    else
      accept('+');
    Scalar coeff = sign;
    bool had_number = false;
    if (at_digit()) {
      coeff *= rational();
      had_number = true;
      accept('*');
    }
    std::optional<Term> prod;
    while (factor_follows()) {
      Term f = factor();
      prod = prod ? Term::prod(*prod, f) : f;
      if (!accept('*'))
        continue;
      if (!factor_follows())
        fail("expected a factor after '*'");
    }
    if (!prod) {
      if (!had_number)
        fail(pos_ < src_.size() ? "expected a term" : "expected a term before end of input");
      prod = unit_term();
    }
    return {coeff, *prod};
  }

  Term factor() {
    Term a = atom();
    if (accept('^')) {
      skip();
      if (!at_digit())
        fail("expected an exponent");
      std::size_t at = pos_;
      std::string k = digits();
      if (k.size() > 4)
        fail_at(at, "exponent too large", ErrorKind::Parse);
      int n = std::stoi(k);
      if (n == 0)
        return unit_term();
      Term r = a;
      for (int i = 1; i < n; ++i)
        r = Term::prod(r, a);
      return r;
    }
    return a;
  }

  Term atom() {
    skip();
    std::size_t start = pos_;
    char c = src_[pos_];
    if (c == '{') {
      ++pos_;
      Term a = expr();
      expect(',');
      Term b = expr();
      expect('}');
      return Term::bracket(a, b);
    }
    if (c == '<') {
      ++pos_;
      Term a = expr();
      expect(',');
      Term b = expr();
      expect('>');
      Term da = Term::bracket(a, unit_term()), db = Term::bracket(b, unit_term());
      return Term::sum({{Scalar(1), Term::bracket(a, b)},
                        {Scalar(-1), Term::prod(da, b)},
                        {Scalar(1), Term::prod(a, db)}});
    }
    if (c == '(') {
      ++pos_;
      Term a = expr();
      expect(')');
      return a;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string n = digits();
      if (n != "1")
        fail_at(start, "a number may only lead a term as its coefficient", ErrorKind::Parse);
      return unit_term();
    }
    if (c == '?') {
      ++pos_;
      if (pos_ >= src_.size() || !ident_start(src_[pos_]))
        fail("expected a variable name after '?'");
      std::string name = ident();
      if (!allow_vars_)
        fail_at(start, "variables (?" + name + ") are only allowed in identities",
                ErrorKind::Parse);
      return Term::var(name);
    }
    if (ident_start(c)) {
      std::string name = ident();
      if (name == "D" && peek('(')) {
        ++pos_;
        Term a = expr();
        expect(')');
        return Term::bracket(a, unit_term());
      }
      auto id = alphabet_.find(name);
      if (!id)
        fail_at(start, "undeclared identifier '" + name + "'", ErrorKind::UnknownIdentifier);
      return Term::gen(alphabet_[*id]);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  const Alphabet &alphabet_;
  bool allow_vars_;
  std::size_t pos_ = 0;
};

void print_term(const Term &t, const Alphabet &alphabet, std::ostream &out, bool in_product) {
  if (auto g = t.as<TermGen>()) {
    out << (g->id < alphabet.size() ? alphabet[g->id].name : "#" + std::to_string(g->id));
  } else if (auto v = t.as<TermVar>()) {
    out << '?' << v->name;
  } else if (auto p = t.as<TermProd>()) {
    print_term(p->left, alphabet, out, true);
    out << ' ';
    print_term(p->right, alphabet, out, true);
  } else if (auto b = t.as<TermBracket>()) {
    out << '{';
    print_term(b->left, alphabet, out, false);
    out << ',';
    print_term(b->right, alphabet, out, false);
    out << '}';
  } else if (auto s = t.as<TermSum>()) {
    bool wrap = in_product && s->terms.size() != 1;
    if (wrap)
      out << '(';
    if (s->terms.empty())
      out << '0';
    for (std::size_t i = 0; i < s->terms.size(); ++i) {
      if (i)
        out << " + ";
      const auto &[c, u] = s->terms[i];
      if (c != 1)
        out << scalar_to_string(c) << ' ';
      print_term(u, alphabet, out, true);
    }
    if (wrap)
      out << ')';
  }
}

} // namespace

Term parse_term(std::string_view src, const Alphabet &alphabet, bool allow_vars) {
  return Parser(src, alphabet, allow_vars).run();
}

std::string print(const Element &e, const Alphabet &alphabet) { return e.to_string(alphabet); }

std::string print(const Term &t, const Alphabet &alphabet) {
  std::ostringstream out;
  print_term(t, alphabet, out, false);
  return out.str();
}

Alphabet parse_generators(const std::string &spec) {
  std::vector<std::pair<std::string, Parity>> gens;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    item = trim(item);
    if (item.empty())
      continue;
    Parity p = Parity::Even;
    if (auto colon = item.find(':'); colon != std::string::npos) {
      p = parse_parity(trim(item.substr(colon + 1)));
      item = trim(item.substr(0, colon));
    }
    if (!ident_start(item[0]) || !std::all_of(item.begin(), item.end(), ident_char) || item == "D")
      throw Error(ErrorKind::Malformed, "bad generator name '" + item + "'");
    gens.emplace_back(item, p);
  }
  return Alphabet::from_list(gens);
}

} // namespace jbgp
