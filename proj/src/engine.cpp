#include "jbgp/engine.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace jbgp {

const char *theory_name(Theory th) {
  switch (th) {
  case Theory::GenP: return "genp";
  case Theory::JB: return "jb";
  case Theory::GP: return "gp";
  }
  return "genp";
}

Theory parse_theory(const std::string &text) {
  if (text == "genp")
    return Theory::GenP;
  if (text == "jb")
    return Theory::JB;
  if (text == "gp")
    return Theory::GP;
  throw Error(ErrorKind::Malformed, "theory must be genp, jb or gp, got '" + text + "'");
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Word w, std::uint32_t exp) {
  if (exp == 0)
    return Monomial{};
  return from_factors({Factor{w, exp}});
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto &f = factors[i];
    if (f.exp == 0 || (f.word.is_leaf() && f.word.gen() == 0))
      throw Error(ErrorKind::Precondition, "unit letter or zero exponent inside a monomial");
    if (is_odd(f.word.parity()) && f.exp > 1)
      throw Error(ErrorKind::Precondition, "odd factor with exponent above 1");
    if (i > 0 && compare_M(factors[i - 1].word, f.word) >= 0)
      throw Error(ErrorKind::Precondition, "monomial factors out of order");
  }
  Monomial m;
  m.factors_ = std::move(factors);
  return m;
}

std::uint32_t Monomial::deg_e() const {
  std::uint32_t d = 0;
  for (const auto &f : factors_)
    d += f.exp;
  return d;
}

Parity Monomial::parity() const {
  Parity p = Parity::Even;
  for (const auto &f : factors_)
    p += power_parity(f.word.parity(), f.exp);
  return p;
}

MultiDegree Monomial::multidegree() const {
  MultiDegree d;
  for (const auto &f : factors_) {
    MultiDegree w = f.word.multidegree();
    for (const auto &[g, c] : w.counts())
      d.add(g, c * f.exp);
  }
  return d;
}

std::uint32_t Monomial::length() const {
  std::uint32_t n = 0;
  for (const auto &f : factors_)
    n += f.word.length() * f.exp;
  return n;
}

Monomial Monomial::without_one(std::size_t i) const {
  Monomial m = *this;
  if (--m.factors_.at(i).exp == 0)
    m.factors_.erase(m.factors_.begin() + static_cast<long>(i));
  return m;
}

std::string Monomial::to_string(const Alphabet &alphabet) const {
  if (factors_.empty())
    return "1";
  std::string out;
  for (const auto &f : factors_) {
    if (!out.empty())
      out += " ";
    out += f.word.to_string(alphabet);
    if (f.exp > 1)
      out += "^" + std::to_string(f.exp);
  }
  return out;
}

bool MonomialLess::operator()(const Monomial &a, const Monomial &b) const {
  if (a.length() != b.length())
    return a.length() < b.length();
  const auto &fa = a.factors(), &fb = b.factors();
  for (std::size_t i = 0; i < fa.size() && i < fb.size(); ++i) {
    if (auto c = compare_M(fa[i].word, fb[i].word); c != 0)
      return c < 0;
    if (fa[i].exp != fb[i].exp)
      return fa[i].exp < fb[i].exp;
  }
  return fa.size() < fb.size();
}

// ----------------------------------------------------------------- Element

Element Element::unit(Theory th) {
  Element e(th);
  e.add(Monomial{}, 1);
  return e;
}

Element Element::word(Theory th, Word w, const Scalar &c) {
  if (w.is_leaf() && w.gen() == 0)
    return c * unit(th);
  return monomial(th, Monomial::of(w), c);
}

Element Element::monomial(Theory th, const Monomial &m, const Scalar &c) {
  Element e(th);
  e.add(m, c);
  return e;
}

Element Element::generator(Theory th, const Generator &g) {
  return word(th, Word::leaf(g));
}

Scalar Element::coeff(const Monomial &m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void Element::add(const Monomial &m, const Scalar &c) {
  if (c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

void Element::add(const Element &other, const Scalar &c) {
  if (other.theory_ != theory_)
    throw Error(ErrorKind::TheoryMismatch, "adding elements of different theories");
  if (c == 0)
    return;
  for (const auto &[m, x] : other.terms_)
    add(m, x * c);
}

Parity Element::parity() const {
  if (terms_.empty())
    return Parity::Even;
  Parity p = terms_.begin()->first.parity();
  for (const auto &[m, c] : terms_)
    if (m.parity() != p)
      throw Error(ErrorKind::UndefinedParity, "element mixes even and odd monomials");
  return p;
}

bool Element::is_homogeneous() const {
  try {
    parity();
    return true;
  } catch (const Error &) {
    return false;
  }
}

Element Element::operator+(const Element &o) const {
  Element r = *this;
  r.add(o, 1);
  return r;
}

Element Element::operator-(const Element &o) const {
  Element r = *this;
  r.add(o, -1);
  return r;
}

Element Element::operator-() const { return Scalar(-1) * *this; }

Element operator*(const Scalar &c, const Element &e) {
  Element r(e.theory_);
  r.add(e, c);
  return r;
}

std::string Element::to_string(const Alphabet &alphabet) const {
  if (terms_.empty())
    return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto &[m, c] : terms_) {
    if (!first)
      out << " + ";
    first = false;
    if (m.is_unit()) {
      out << (c == 1 ? std::string("1") : scalar_to_string(c));
      continue;
    }
    if (c != 1)
      out << scalar_to_string(c) << " ";
    out << m.to_string(alphabet);
  }
  return out.str();
}

// ---------------------------------------------------------- multiplication

namespace {

void require_same(const Element &a, const Element &b) {
  if (a.theory() != b.theory())
    throw Error(ErrorKind::TheoryMismatch,
                std::string("operands from theories ") + theory_name(a.theory()) + " and " +
                    theory_name(b.theory()));
}

} // namespace

Element mul(const Monomial &a, const Monomial &b, Theory th) {
  const auto &fa = a.factors(), &fb = b.factors();
  // suffix[i] = parity of fa[i..]
  std::vector<Parity> suffix(fa.size() + 1, Parity::Even);
  for (std::size_t i = fa.size(); i-- > 0;)
    suffix[i] = suffix[i + 1] + power_parity(fa[i].word.parity(), fa[i].exp);

  std::vector<Factor> out;
  out.reserve(fa.size() + fb.size());
  int s = 1;
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size()) {
      out.push_back(fa[i++]);
      continue;
    }
    if (i == fa.size()) {
      out.push_back(fb[j++]);
      continue;
    }
    auto c = compare_M(fa[i].word, fb[j].word);
    if (c < 0) {
      out.push_back(fa[i++]);
    } else if (c > 0) {
      s *= sign(power_parity(fb[j].word.parity(), fb[j].exp), suffix[i]);
      out.push_back(fb[j++]);
    } else {
      if (is_odd(fa[i].word.parity()))
        return Element(th);
      out.push_back(Factor{fa[i].word, fa[i].exp + fb[j].exp});
      ++i;
      ++j;
    }
  }
  Monomial m = Monomial::from_factors(std::move(out));
  return Element::monomial(th, m, Scalar(s));
}

Element mul(const Element &a, const Element &b) {
  require_same(a, b);
  Element r(a.theory());
  for (const auto &[ma, ca] : a.terms())
    for (const auto &[mb, cb] : b.terms())
      r.add(mul(ma, mb, a.theory()), ca * cb);
  return r;
}

// ----------------------------------------------------------------- bracket

namespace {

constexpr int kMaxDepth = 2048;

Word unit_letter() { return Word::leaf(0, Parity::Even); }

struct WordPairHash {
  std::size_t operator()(const std::pair<Word, Word> &p) const {
    auto a = p.first.hash(), b = p.second.hash();
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  }
};

struct JBMemo {
  std::shared_mutex mutex;
  std::unordered_map<std::pair<Word, Word>, Element, WordPairHash> table;
};

JBMemo &jb_memo() {
  static JBMemo memo;
  return memo;
}

Element bracket_mono(const Monomial &a, const Monomial &b, Theory th, int depth);
Element bracket_el(const Element &a, const Element &b, int depth);
Element words_bracket(Word u, Word v, Theory th, int depth);

Element lift(const LieCombination &c, Theory th) {
  Element r(th);
  for (const auto &[w, x] : c.terms())
    r.add(Monomial::of(w), x);
  return r;
}

Element bracket_el(const Element &a, const Element &b, int depth) {
  require_same(a, b);
  Element r(a.theory());
  for (const auto &[ma, ca] : a.terms())
    for (const auto &[mb, cb] : b.terms())
      r.add(bracket_mono(ma, mb, a.theory(), depth + 1), ca * cb);
  return r;
}

Element wordel(Theory th, Word w) { return Element::word(th, w); }

Element d_word(Word w, Theory th, int depth) {
  return words_bracket(w, unit_letter(), th, depth + 1);
}

// {{a,b},c} = {a,{b,c}} - (-1)^{|a||b|}{b,{a,c}} - D(a){b,c}
//             - (-1)^{|a|(|b|+|c|)} D(b){c,a} - (-1)^{|c|(|a|+|b|)} D(c){a,b}
Element jb_left_rewrite(Word a, Word b, Word c, int depth) {
  const Theory th = Theory::JB;
  Parity pa = a.parity(), pb = b.parity(), pc = c.parity();
  Element r = bracket_el(wordel(th, a), words_bracket(b, c, th, depth + 1), depth);
  r.add(bracket_el(wordel(th, b), words_bracket(a, c, th, depth + 1), depth),
        Scalar(-sign(pa, pb)));
  r.add(mul(d_word(a, th, depth), words_bracket(b, c, th, depth + 1)), -1);
  r.add(mul(d_word(b, th, depth), words_bracket(c, a, th, depth + 1)), Scalar(-sign(pa, pb + pc)));
  r.add(mul(d_word(c, th, depth), words_bracket(a, b, th, depth + 1)), Scalar(-sign(pc, pa + pb)));
  return r;
}

// {a,{b,c}} = {{a,b},c} + (-1)^{|a||b|}{b,{a,c}} + D(a){b,c}
//             + (-1)^{|a|(|b|+|c|)} D(b){c,a} + (-1)^{|c|(|a|+|b|)} D(c){a,b}
Element jb_right_rewrite(Word a, Word b, Word c, int depth) {
  const Theory th = Theory::JB;
  Parity pa = a.parity(), pb = b.parity(), pc = c.parity();
  Element r = bracket_el(words_bracket(a, b, th, depth + 1), wordel(th, c), depth);
  r.add(bracket_el(wordel(th, b), words_bracket(a, c, th, depth + 1), depth),
        Scalar(sign(pa, pb)));
  r.add(mul(d_word(a, th, depth), words_bracket(b, c, th, depth + 1)), 1);
  r.add(mul(d_word(b, th, depth), words_bracket(c, a, th, depth + 1)), Scalar(sign(pa, pb + pc)));
  r.add(mul(d_word(c, th, depth), words_bracket(a, b, th, depth + 1)), Scalar(sign(pc, pa + pb)));
  return r;
}

Element jb_straighten(Word u, Word v, int depth) {
  const Theory th = Theory::JB;
  if (u == v) {
    if (is_odd(u.parity()) && is_good(u))
      return wordel(th, Word::node(u, u));
    return Element(th);
  }
  if (compare_M(u, v) < 0)
    return Scalar(-sign(u.parity(), v.parity())) * words_bracket(v, u, th, depth + 1);
  Word w = Word::node(u, v);
  if (is_good(w))
    return wordel(th, w);
  if (is_odd_square(v) && !is_odd_square(u))
    return jb_right_rewrite(u, v.left(), v.left(), depth);
  // a = b = c = x odd in the Jacobi deformation gives {{x,x},x} = -D(x){x,x}.
  if (is_odd_square(u) && u.left() == v)
    return -mul(d_word(v, th, depth), wordel(th, u));
  return jb_left_rewrite(u.left(), u.right(), v, depth);
}

Element gp_orient(Word u, Word v) {
  const Theory th = Theory::GP;
  if ((u.is_leaf() && u.gen() == 0) || (v.is_leaf() && v.gen() == 0))
    return Element(th);
  if (u == v)
    return is_odd(u.parity()) ? wordel(th, Word::node(u, u)) : Element(th);
  if (compare_M(u, v) < 0)
    return Element::word(th, Word::node(v, u), Scalar(-sign(u.parity(), v.parity())));
  return wordel(th, Word::node(u, v));
}

Element words_bracket(Word u, Word v, Theory th, int depth) {
  if (depth > kMaxDepth)
    throw Error(ErrorKind::Limit, "bracket expansion exceeded the recursion limit");
  switch (th) {
  case Theory::GenP:
    return lift(bracket_M(u, v), th);
  case Theory::GP:
    return gp_orient(u, v);
  case Theory::JB:
    break;
  }
  auto &memo = jb_memo();
  auto key = std::make_pair(u, v);
  {
    std::shared_lock lock(memo.mutex);
    if (auto it = memo.table.find(key); it != memo.table.end())
      return it->second;
  }
  Element r = jb_straighten(u, v, depth);
  std::unique_lock lock(memo.mutex);
  memo.table.try_emplace(key, r);
  return r;
}

// {x, e_1^{t_1} ... e_n^{t_n}} for deg_e >= 2, x given as a one-term element.
Element leibniz_expand(const Monomial &x, const Monomial &b, Theory th, int depth) {
  Element r(th);
  Parity prefix = Parity::Even;
  const auto &fb = b.factors();
  for (std::size_t k = 0; k < fb.size(); ++k) {
    const Factor &f = fb[k];
    Scalar coeff(static_cast<long>(f.exp) * sign(f.word.parity(), prefix));
    Element inner = bracket_mono(x, Monomial::of(f.word), th, depth + 1);
    r.add(mul(inner, Element::monomial(th, b.without_one(k))), coeff);
    prefix += power_parity(f.word.parity(), f.exp);
  }
  if (th != Theory::GP) {
    Element dx = bracket_mono(x, Monomial{}, th, depth + 1);
    r.add(mul(dx, Element::monomial(th, b)), -Scalar(static_cast<long>(b.deg_e()) - 1));
  }
  return r;
}

Element bracket_mono(const Monomial &a, const Monomial &b, Theory th, int depth) {
  if (depth > kMaxDepth)
    throw Error(ErrorKind::Limit, "bracket expansion exceeded the recursion limit");
  if (th == Theory::GP && (a.is_unit() || b.is_unit()))
    return Element(th);
  std::uint32_t la = a.is_unit() ? 1 : a.deg_e();
  std::uint32_t lb = b.is_unit() ? 1 : b.deg_e();
  if (lb >= 2)
    return leibniz_expand(a, b, th, depth);
  if (la >= 2)
    return Scalar(-sign(a.parity(), b.parity())) * leibniz_expand(b, a, th, depth);
  Word u = a.is_unit() ? unit_letter() : a.factors().front().word;
  Word v = b.is_unit() ? unit_letter() : b.factors().front().word;
  return words_bracket(u, v, th, depth + 1);
}

} // namespace

Element bracket(const Monomial &a, const Monomial &b, Theory th) {
  return bracket_mono(a, b, th, 0);
}

Element bracket_words(Word u, Word v, Theory th) { return words_bracket(u, v, th, 0); }

Element bracket(const Element &a, const Element &b) { return bracket_el(a, b, 0); }

Element d_op(const Element &a) { return bracket(a, Element::unit(a.theory())); }

// ------------------------------------------------------------- evaluation

namespace {

Element eval(const Term &t, const Bindings *bindings, Theory th) {
  if (auto g = t.as<TermGen>()) {
    if (g->id == 0)
      return Element::unit(th);
    return Element::word(th, Word::leaf(g->id, g->parity));
  }
  if (auto p = t.as<TermProd>())
    return mul(eval(p->left, bindings, th), eval(p->right, bindings, th));
  if (auto p = t.as<TermBracket>())
    return bracket(eval(p->left, bindings, th), eval(p->right, bindings, th));
  if (auto s = t.as<TermSum>()) {
    Element r(th);
    for (const auto &[c, sub] : s->terms)
      if (c != 0)
        r.add(eval(sub, bindings, th), c);
    return r;
  }
  auto v = t.as<TermVar>();
  if (!bindings)
    throw Error(ErrorKind::UnboundVariable, "variable ?" + v->name + " in a closed term");
  auto it = bindings->find(v->name);
  if (it == bindings->end())
    throw Error(ErrorKind::UnboundVariable, "variable ?" + v->name + " is not bound");
  if (it->second.theory() != th)
    throw Error(ErrorKind::TheoryMismatch, "binding for ?" + v->name + " has the wrong theory");
  return it->second;
}

} // namespace

Element normal_form(const Term &t, Theory th) { return eval(t, nullptr, th); }

Element substitute(const Term &t, const Bindings &bindings, Theory th) {
  for (const auto &[name, e] : bindings)
    if (!e.is_homogeneous())
      throw Error(ErrorKind::NonHomogeneous, "binding for ?" + name + " is not homogeneous");
  return eval(t, &bindings, th);
}

namespace {

Element image_of_word(Word w, const std::map<GenId, Element> &images, Theory th) {
  if (w.is_leaf()) {
    if (w.gen() == 0)
      return Element::unit(th);
    auto it = images.find(w.gen());
    return it == images.end() ? Element::word(th, w) : it->second;
  }
  return bracket(image_of_word(w.left(), images, th), image_of_word(w.right(), images, th));
}

} // namespace

Element substitute_generators(const Element &e, const std::map<GenId, Element> &images) {
  const Theory th = e.theory();
  for (const auto &[g, img] : images) {
    if (img.theory() != th)
      throw Error(ErrorKind::TheoryMismatch, "generator image has the wrong theory");
    if (!img.is_homogeneous())
      throw Error(ErrorKind::NonHomogeneous, "generator image is not homogeneous");
  }
  Element r(th);
  for (const auto &[m, c] : e.terms()) {
    Element prod = Element::unit(th);
    for (const auto &f : m.factors()) {
      Element img = image_of_word(f.word, images, th);
      for (std::uint32_t k = 0; k < f.exp; ++k)
        prod = mul(prod, img);
    }
    r.add(prod, c);
  }
  return r;
}

Term to_term(Word w) {
  if (w.is_leaf())
    return Term::gen(Generator{w.gen(), "", w.parity(), w.gen() == 0});
  return Term::bracket(to_term(w.left()), to_term(w.right()));
}

Term to_term(const Element &e) {
  std::vector<std::pair<Scalar, Term>> terms;
  for (const auto &[m, c] : e.terms()) {
    std::optional<Term> t;
    for (const auto &f : m.factors())
      for (std::uint32_t k = 0; k < f.exp; ++k)
        t = t ? Term::prod(*t, to_term(f.word)) : to_term(f.word);
    if (!t)
      t = Term::gen(Generator{0, "1", Parity::Even, true});
    terms.emplace_back(c, *t);
  }
  return Term::sum(std::move(terms));
}

std::uint32_t max_length(const Element &e) {
  std::uint32_t n = 0;
  for (const auto &[m, c] : e.terms())
    n = std::max(n, m.length());
  return n;
}

// ------------------------------------------------------------------ twist

Element twist_bracket(const Element &a, const Element &b, const BracketFn &br, const UnaryFn &d) {
  Element r = br(a, b);
  r.add(mul(a, d(b)) - mul(d(a), b), Scalar(1, 2));
  return r;
}

Element d_twist_bracket(const Element &a, const Element &b) {
  if (a.theory() != Theory::JB || b.theory() != Theory::JB)
    throw Error(ErrorKind::TheoryMismatch, "the D-twist is defined on the JB bracket");
  return twist_bracket(
      a, b, [](const Element &x, const Element &y) { return bracket(x, y); }, d_op);
}

void check_derivation(const UnaryFn &e, const std::vector<Element> &probes, Theory th) {
  if (!e(Element::unit(th)).is_zero())
    throw Error(ErrorKind::NotADerivation, "E(1) is not zero");
  for (const auto &f : probes) {
    Element ef = e(f);
    if (!ef.is_zero() && f.is_homogeneous() && ef.is_homogeneous() && ef.parity() != f.parity())
      throw Error(ErrorKind::NotADerivation, "E is not even");
    for (const auto &g : probes) {
      Element lhs = e(mul(f, g));
      Element rhs = mul(ef, g) + mul(f, e(g));
      if (!(lhs == rhs))
        throw Error(ErrorKind::NotADerivation, "E(fg) differs from E(f)g + fE(g)");
    }
  }
}

Element untwist_bracket(const Element &a, const Element &b, const BracketFn &br,
                        const UnaryFn &e) {
  require_same(a, b);
  std::vector<Element> probes;
  std::set<const void *> seen;
  for (const Element *x : {&a, &b})
    for (const auto &[m, c] : x->terms())
      for (const auto &f : m.factors())
        if (seen.insert(f.word.raw()).second)
          probes.push_back(Element::word(a.theory(), f.word));
  check_derivation(e, probes, a.theory());
  Element r = br(a, b);
  r.add(mul(a, e(b)) - mul(e(a), b), -1);
  return r;
}

// ------------------------------------------------------------- enumeration

namespace {

void sub_degrees(const std::vector<std::pair<GenId, std::uint32_t>> &parts, std::size_t i,
                 const MultiDegree &cur, std::vector<MultiDegree> &out) {
  if (i == parts.size()) {
    if (cur.total() > 0)
      out.push_back(cur);
    return;
  }
  for (std::uint32_t c = 0; c <= parts[i].second; ++c) {
    MultiDegree next = cur;
    next.add(parts[i].first, c);
    sub_degrees(parts, i + 1, next, out);
  }
}

std::vector<MultiDegree> nonzero_sub_degrees(const MultiDegree &d) {
  std::vector<std::pair<GenId, std::uint32_t>> parts(d.counts().begin(), d.counts().end());
  std::vector<MultiDegree> out;
  sub_degrees(parts, 0, MultiDegree{}, out);
  return out;
}

std::vector<Word> gp_atoms(const MultiDegree &d, const Alphabet &alphabet) {
  std::vector<Word> out;
  if (d[0] > 0 || d.total() == 0)
    return out;
  if (d.total() == 1)
    return {Word::leaf(alphabet[d.counts().begin()->first])};
  for (const auto &d1 : nonzero_sub_degrees(d)) {
    if (d1 == d)
      continue;
    MultiDegree d2 = d - d1;
    auto left = gp_atoms(d1, alphabet);
    auto right = gp_atoms(d2, alphabet);
    for (Word u : left)
      for (Word v : right) {
        auto c = compare_M(u, v);
        if (c > 0 || (c == 0 && is_odd(u.parity())))
          out.push_back(Word::node(u, v));
      }
  }
  std::sort(out.begin(), out.end(), MLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void choose_factors(const std::vector<std::pair<Word, MultiDegree>> &cands, std::size_t from,
                    const MultiDegree &remaining, std::vector<Factor> &cur,
                    std::vector<Monomial> &out) {
  if (remaining.total() == 0) {
    out.push_back(Monomial::from_factors(cur));
    return;
  }
  for (std::size_t i = from; i < cands.size(); ++i) {
    const auto &[w, md] = cands[i];
    if (!md.divides(remaining))
      continue;
    MultiDegree rest = remaining;
    std::uint32_t max_exp = is_odd(w.parity()) ? 1 : 64;
    for (std::uint32_t e = 1; e <= max_exp && md.divides(rest); ++e) {
      rest = rest - md;
      cur.push_back(Factor{w, e});
      choose_factors(cands, i + 1, rest, cur, out);
      cur.pop_back();
    }
  }
}

} // namespace

std::vector<Word> enumerate_atoms(const MultiDegree &d, const Alphabet &alphabet, Theory th) {
  if (th == Theory::GP)
    return gp_atoms(d, alphabet);
  return enumerate_M(d, alphabet);
}

std::vector<Monomial> enumerate_basis(const MultiDegree &d, const Alphabet &alphabet, Theory th) {
  if (d.total() == 0)
    return {Monomial{}};
  std::vector<std::pair<Word, MultiDegree>> cands;
  for (const auto &sub : nonzero_sub_degrees(d))
    for (Word w : enumerate_atoms(sub, alphabet, th))
      if (!(w.is_leaf() && w.gen() == 0))
        cands.emplace_back(w, sub);
  std::sort(cands.begin(), cands.end(),
            [](const auto &x, const auto &y) { return compare_M(x.first, y.first) < 0; });
  std::vector<Monomial> out;
  std::vector<Factor> cur;
  choose_factors(cands, 0, d, cur, out);
  std::sort(out.begin(), out.end(), MonomialLess{});
  return out;
}

std::size_t dim_multilinear(int n, Theory th) {
  if (n < 1)
    throw Error(ErrorKind::Precondition, "dim_multilinear needs n >= 1");
  Alphabet alphabet;
  MultiDegree d = MultiDegree::of(0);
  for (int i = 1; i <= n; ++i)
    d.add(alphabet.add("x" + std::to_string(i), Parity::Even));
  return enumerate_basis(d, alphabet, th).size();
}

} // namespace jbgp
