#include "jbgp/core.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace jbgp {

Scalar make_scalar(long num, long den) {
  if (den == 0)
    throw Error(ErrorKind::Malformed, "zero denominator");
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

Scalar parse_scalar(const std::string &text) {
  auto slash = text.find('/');
  auto is_int = [](const std::string &s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size())
      return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!num.empty() && num[0] == '+')
    num.erase(0, 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
    throw Error(ErrorKind::Malformed, "malformed rational '" + text + "'");
  mpz_class n(num, 10), d(den, 10);
  if (d == 0)
    throw Error(ErrorKind::Malformed, "zero denominator in '" + text + "'");
  Scalar s(n, d);
  s.canonicalize();
  return s;
}

std::string scalar_to_string(const Scalar &s) {
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

const char *error_kind_name(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::UndefinedParity: return "undefined-parity";
  case ErrorKind::NotAShuffle: return "not-a-shuffle";
  case ErrorKind::TheoryMismatch: return "theory-mismatch";
  case ErrorKind::Parse: return "parse";
  case ErrorKind::UnknownIdentifier: return "unknown-identifier";
  case ErrorKind::UnboundVariable: return "unbound-variable";
  case ErrorKind::NonHomogeneous: return "non-homogeneous";
  case ErrorKind::Malformed: return "malformed";
  case ErrorKind::NotADerivation: return "not-a-derivation";
  case ErrorKind::Precondition: return "precondition";
  case ErrorKind::Degenerate: return "degenerate";
  case ErrorKind::Limit: return "limit";
  case ErrorKind::Internal: return "internal";
  }
  return "internal";
}

const char *parity_name(Parity p) { return is_odd(p) ? "odd" : "even"; }

Parity parse_parity(const std::string &text) {
  if (text == "even" || text == "0")
    return Parity::Even;
  if (text == "odd" || text == "1")
    return Parity::Odd;
  throw Error(ErrorKind::Malformed, "parity must be 'even' or 'odd', got '" + text + "'");
}

Alphabet::Alphabet() { gens_.push_back(Generator{0, "1", Parity::Even, true}); }

Alphabet Alphabet::from_list(const std::vector<std::pair<std::string, Parity>> &gens) {
  Alphabet a;
  for (const auto &[name, parity] : gens)
    a.add(name, parity);
  return a;
}

GenId Alphabet::add(const std::string &name, Parity parity) {
  if (name.empty())
    throw Error(ErrorKind::Malformed, "empty generator name");
  if (find(name))
    throw Error(ErrorKind::Malformed, "duplicate generator name '" + name + "'");
  auto id = static_cast<GenId>(gens_.size());
  gens_.push_back(Generator{id, name, parity, false});
  return id;
}

std::string Alphabet::fresh_name(const std::string &base) const {
  std::string name = base + "'";
  while (find(name))
    name += "'";
  return name;
}

std::optional<GenId> Alphabet::find(const std::string &name) const {
  for (const auto &g : gens_)
    if (g.name == name)
      return g.id;
  return std::nullopt;
}

MultiDegree MultiDegree::of(GenId g, std::uint32_t count) {
  MultiDegree d;
  d.add(g, count);
  return d;
}

std::uint32_t MultiDegree::operator[](GenId g) const {
  auto it = counts_.find(g);
  return it == counts_.end() ? 0 : it->second;
}

void MultiDegree::add(GenId g, std::uint32_t count) {
  if (count != 0)
    counts_[g] += count;
}

std::uint32_t MultiDegree::total() const {
  std::uint32_t t = 0;
  for (const auto &[g, c] : counts_)
    t += c;
  return t;
}

std::uint32_t MultiDegree::x_total() const { return total() - (*this)[0]; }

MultiDegree MultiDegree::without_unit() const {
  MultiDegree d = *this;
  d.counts_.erase(0);
  return d;
}

bool MultiDegree::divides(const MultiDegree &other) const {
  for (const auto &[g, c] : counts_)
    if (other[g] < c)
      return false;
  return true;
}

MultiDegree MultiDegree::operator+(const MultiDegree &o) const {
  MultiDegree d = *this;
  for (const auto &[g, c] : o.counts_)
    d.add(g, c);
  return d;
}

MultiDegree MultiDegree::operator-(const MultiDegree &o) const {
  if (!o.divides(*this))
    throw Error(ErrorKind::Precondition, "multidegree subtraction underflow");
  MultiDegree d = *this;
  for (const auto &[g, c] : o.counts_) {
    auto &v = d.counts_[g];
    v -= c;
    if (v == 0)
      d.counts_.erase(g);
  }
  return d;
}

std::string MultiDegree::to_string(const Alphabet &alphabet) const {
  std::ostringstream out;
  out << "(";
  bool first = true;
  for (const auto &[g, c] : counts_) {
    if (!first)
      out << ", ";
    first = false;
    out << alphabet[g].name << ":" << c;
  }
  out << ")";
  return out.str();
}

Term Term::gen(const Generator &g) {
  return Term(std::make_shared<const TermNode>(TermGen{g.id, g.parity}));
}
Term Term::prod(Term a, Term b) {
  return Term(std::make_shared<const TermNode>(TermProd{std::move(a), std::move(b)}));
}
Term Term::bracket(Term a, Term b) {
  return Term(std::make_shared<const TermNode>(TermBracket{std::move(a), std::move(b)}));
}
Term Term::sum(std::vector<std::pair<Scalar, Term>> terms) {
  return Term(std::make_shared<const TermNode>(TermSum{std::move(terms)}));
}
Term Term::var(std::string name) {
  return Term(std::make_shared<const TermNode>(TermVar{std::move(name)}));
}

namespace {

std::optional<Parity> parity_or_empty(const Term &t) {
  if (auto g = t.as<TermGen>())
    return g->parity;
  if (auto p = t.as<TermProd>()) {
    auto a = parity_or_empty(p->left), b = parity_or_empty(p->right);
    return (a && b) ? std::optional(*a + *b) : std::nullopt;
  }
  if (auto p = t.as<TermBracket>()) {
    auto a = parity_or_empty(p->left), b = parity_or_empty(p->right);
    return (a && b) ? std::optional(*a + *b) : std::nullopt;
  }
  if (auto s = t.as<TermSum>()) {
    std::optional<Parity> result;
    for (const auto &[c, sub] : s->terms) {
      auto p = parity_or_empty(sub);
      if (!p)
        throw Error(ErrorKind::UndefinedParity, "variable inside sum has no parity");
      if (c == 0)
        continue;
      if (result && *result != *p)
        throw Error(ErrorKind::UndefinedParity, "sum of terms with different parities");
      result = *p;
    }
    return result ? result : std::optional(Parity::Even);
  }
  return std::nullopt;
}

} // namespace

Parity term_parity(const Term &t) {
  auto p = parity_or_empty(t);
  if (!p)
    throw Error(ErrorKind::UndefinedParity, "term contains a variable leaf");
  return *p;
}

MultiDegree multidegree(const Term &t) {
  if (auto g = t.as<TermGen>())
    return MultiDegree::of(g->id);
  if (auto p = t.as<TermProd>())
    return multidegree(p->left) + multidegree(p->right);
  if (auto p = t.as<TermBracket>())
    return multidegree(p->left) + multidegree(p->right);
  if (auto s = t.as<TermSum>()) {
    // sums are taken as homogeneous; the first nonzero summand decides
    for (const auto &[c, sub] : s->terms)
      if (c != 0)
        return multidegree(sub);
    return MultiDegree{};
  }
  throw Error(ErrorKind::UnboundVariable, "multidegree of a variable leaf");
}

bool has_vars(const Term &t) {
  if (t.as<TermVar>())
    return true;
  if (auto p = t.as<TermProd>())
    return has_vars(p->left) || has_vars(p->right);
  if (auto p = t.as<TermBracket>())
    return has_vars(p->left) || has_vars(p->right);
  if (auto s = t.as<TermSum>())
    return std::any_of(s->terms.begin(), s->terms.end(),
                       [](const auto &ct) { return has_vars(ct.second); });
  return false;
}

int koszul_sign(std::span<const Parity> seq, std::span<const std::size_t> order) {
  if (order.size() != seq.size())
    throw Error(ErrorKind::Precondition, "permutation length mismatch");
  std::vector<bool> seen(seq.size(), false);
  for (auto i : order) {
    if (i >= seq.size() || seen[i])
      throw Error(ErrorKind::Precondition, "not a permutation");
    seen[i] = true;
  }
  int s = 1;
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b)
      if (order[a] > order[b] && is_odd(seq[order[a]]) && is_odd(seq[order[b]]))
        s = -s;
  return s;
}

Scalar koszul_merge_sign(std::span<const Parity> left, std::span<const Parity> right,
                         std::span<const std::size_t> merged) {
  const std::size_t L = left.size();
  if (merged.size() != L + right.size())
    throw Error(ErrorKind::NotAShuffle, "merged order has the wrong length");
  std::size_t next_left = 0, next_right = L;
  for (auto i : merged) {
    if (i < L && i == next_left)
      ++next_left;
    else if (i >= L && i == next_right)
      ++next_right;
    else
      throw Error(ErrorKind::NotAShuffle, "merged order is not a shuffle of the two blocks");
  }
  std::vector<Parity> seq(left.begin(), left.end());
  seq.insert(seq.end(), right.begin(), right.end());
  return make_scalar(koszul_sign(seq, merged));
}

} // namespace jbgp
