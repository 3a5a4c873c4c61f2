#include "jbgp/farkas.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

namespace jbgp {

// ------------------------------------------------------- customary polynomial

namespace {

using TermKey = std::pair<std::vector<std::pair<int, int>>, std::vector<int>>;

bool key_less(const CustomaryTerm &a, const CustomaryTerm &b) {
  return std::tie(a.pairs, a.singles) < std::tie(b.pairs, b.singles);
}

} // namespace

void CustomaryPolynomial::add(Scalar coeff, std::vector<std::pair<int, int>> pairs,
                              std::vector<int> singles) {
  if (coeff == 0)
    return;
  std::vector<int> seen;
  for (auto &[p, q] : pairs) {
    if (p > q) {
      std::swap(p, q);
      coeff = -coeff;
    }
    seen.push_back(p);
    seen.push_back(q);
  }
  seen.insert(seen.end(), singles.begin(), singles.end());
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i] != static_cast<int>(i) + 1 || seen.size() != static_cast<std::size_t>(m_))
      throw Error(ErrorKind::Malformed, "customary term does not partition 1.." + std::to_string(m_));
  std::sort(pairs.begin(), pairs.end());
  std::sort(singles.begin(), singles.end());
  CustomaryTerm t{coeff, std::move(pairs), std::move(singles)};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), t, key_less);
  if (it != terms_.end() && !key_less(t, *it)) {
    it->coeff += t.coeff;
    if (it->coeff == 0)
      terms_.erase(it);
  } else {
    terms_.insert(it, std::move(t));
  }
}

GenId CustomaryPolynomial::letter(int i) const {
  if (i < 1 || i > m_)
    throw Error(ErrorKind::Precondition, "letter index out of range");
  return letters_.empty() ? static_cast<GenId>(i) : letters_[static_cast<std::size_t>(i - 1)];
}

void CustomaryPolynomial::set_letters(std::vector<GenId> letters) {
  if (!letters.empty() && letters.size() != static_cast<std::size_t>(m_))
    throw Error(ErrorKind::Malformed, "need one letter per index");
  letters_ = std::move(letters);
}

std::string CustomaryPolynomial::to_string(const Alphabet &alphabet) const {
  if (terms_.empty())
    return "0";
  auto name = [&](int i) {
    GenId g = letter(i);
    return g < alphabet.size() ? alphabet[g].name : "x" + std::to_string(i);
  };
  std::ostringstream out;
  bool first = true;
  for (const auto &t : terms_) {
    if (!first)
      out << " + ";
    first = false;
    std::vector<std::string> parts;
    for (const auto &[p, q] : t.pairs)
      parts.push_back("<" + name(p) + "," + name(q) + ">");
    for (int s : t.singles)
      parts.push_back("D(" + name(s) + ")");
    if (t.coeff != 1 || parts.empty())
      parts.insert(parts.begin(), scalar_to_string(t.coeff));
    for (std::size_t i = 0; i < parts.size(); ++i)
      out << (i ? " " : "") << parts[i];
  }
  return out.str();
}

bool operator==(const CustomaryPolynomial &a, const CustomaryPolynomial &b) {
  if (a.m_ != b.m_ || a.terms_.size() != b.terms_.size())
    return false;
  for (int i = 1; i <= a.m_; ++i)
    if (a.letter(i) != b.letter(i))
      return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].coeff != b.terms_[i].coeff || a.terms_[i].pairs != b.terms_[i].pairs ||
        a.terms_[i].singles != b.terms_[i].singles)
      return false;
  return true;
}

// ------------------------------------------------------------ basic brackets

namespace {

void require_even(const Element &e) {
  for (const auto &[m, c] : e.terms())
    for (const auto &f : m.factors())
      if (is_odd(f.word.parity()))
        throw Error(ErrorKind::Precondition, "customary reduction is for even letters only");
}

Element letter(GenId g) { return Element::word(Theory::GenP, Word::leaf(g, Parity::Even)); }

} // namespace

Element angle_bracket(const Element &a, const Element &b) {
  if (a.theory() == Theory::GP || b.theory() == Theory::GP)
    throw Error(ErrorKind::TheoryMismatch, "<,> needs the derivation D of GenP or JB");
  Element r = bracket(a, b);
  r.add(mul(d_op(a), b), -1);
  r.add(mul(a, d_op(b)));
  return r;
}

Element leftnormed(const std::vector<Element> &xs) {
  if (xs.empty())
    throw Error(ErrorKind::Precondition, "left-normed bracket of nothing");
  Element r = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i)
    r = bracket(r, xs[i]);
  return r;
}

Element lemma41_expand(const Element &y, const Element &z, const std::vector<Element> &ws) {
  for (const Element *e : {&y, &z})
    require_even(*e);
  for (const auto &w : ws)
    require_even(w);
  const Theory th = y.theory();
  // blocks[0] is the y-block, blocks[1] the z-block, the rest start with 1.
  std::vector<std::vector<std::size_t>> blocks(2);
  Element total(th);
  std::function<void(std::size_t, Scalar)> go = [&](std::size_t i, Scalar coeff) {
    if (i == ws.size()) {
      Element prod = Element::unit(th);
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::vector<Element> seq{b == 0 ? y : b == 1 ? z : Element::unit(th)};
        for (std::size_t k : blocks[b])
          seq.push_back(ws[k]);
        prod = mul(prod, leftnormed(seq));
      }
      total.add(prod, coeff);
      return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(i);
      go(i + 1, coeff);
      blocks[b].pop_back();
    }
    // A new 1-block costs -(k-1) with k blocks present.
    Scalar c = coeff * -static_cast<long>(blocks.size() - 1);
    blocks.push_back({i});
    go(i + 1, c);
    blocks.pop_back();
  };
  go(0, Scalar(1));
  return total;
}

// -------------------------------------------------------------- delta, height

PoissonPolynomial delta(const PoissonPolynomial &f, GenId x, GenId y, GenId z) {
  require_even(f.f);
  if (std::find(f.vars.begin(), f.vars.end(), x) == f.vars.end())
    throw Error(ErrorKind::Precondition, "delta: letter is not an identity variable");
  Element ly = letter(y), lz = letter(z);
  PoissonPolynomial r;
  r.f = substitute_generators(f.f, {{x, mul(ly, lz)}});
  r.f.add(mul(ly, substitute_generators(f.f, {{x, lz}})), -1);
  r.f.add(mul(lz, substitute_generators(f.f, {{x, ly}})), -1);
  for (GenId v : f.vars)
    if (v != x)
      r.vars.push_back(v);
  r.vars.push_back(y);
  r.vars.push_back(z);
  std::sort(r.vars.begin(), r.vars.end());
  return r;
}

PoissonPolynomial delta(const PoissonPolynomial &f, GenId x, Alphabet &alphabet) {
  const std::string &base = alphabet[x].name;
  GenId y = alphabet.add(alphabet.fresh_name(base), Parity::Even);
  GenId z = alphabet.add(alphabet.fresh_name(alphabet[y].name), Parity::Even);
  return delta(f, x, y, z);
}

bool is_derivation_in(const PoissonPolynomial &f, GenId x) {
  // The fresh ids only need to be unused in f.
  GenId top = x;
  for (const auto &[m, c] : f.f.terms()) {
    MultiDegree md = m.multidegree();
    for (const auto &[g, n] : md.counts())
      top = std::max(top, g);
  }
  return delta(f, x, top + 1, top + 2).f.is_zero();
}

int x_height(const Element &f, GenId x) {
  int h = 0;
  for (const auto &[m, c] : f.terms())
    for (const auto &fac : m.factors())
      if (fac.word.contains(x))
        h = std::max(h, static_cast<int>(fac.word.length()));
  return h;
}

Decomposition decompose(const Element &f, GenId x) {
  require_even(f);
  Decomposition d;
  for (const auto &[m, c] : f.terms()) {
    std::optional<std::size_t> at;
    for (std::size_t i = 0; i < m.factors().size(); ++i)
      if (m.factors()[i].word.contains(x)) {
        if (at || m.factors()[i].exp != 1 || m.factors()[i].word.multidegree()[x] != 1)
          throw Error(ErrorKind::Precondition, "decompose: not linear in the letter");
        at = i;
      }
    if (!at)
      throw Error(ErrorKind::Precondition, "decompose: a monomial misses the letter");
    Word w = m.factors()[*at].word;
    Element rest = Element::monomial(Theory::GenP, m.without_one(*at), c);
    if (w.is_leaf()) {
      d.t.add(rest);
      continue;
    }
    if (w.length() > 2)
      throw Error(ErrorKind::Precondition, "decompose: x-height is at least 3");
    if (w.left().is_leaf() && w.left().gen() == x) {
      GenId other = w.right().gen();
      if (other == 0)
        d.t0.add(rest);
      else
        d.ti.try_emplace(other, Theory::GenP).first->second.add(rest);
    } else {
      // {x_i, x} = -{x, x_i}
      d.ti.try_emplace(w.left().gen(), Theory::GenP).first->second.add(rest, -1);
    }
  }
  return d;
}

// ---------------------------------------------------------------- reduction

namespace {

int measure(const PoissonPolynomial &g) {
  int s = 0;
  for (GenId v : g.vars)
    s += std::max(0, x_height(g.f, v) - 2);
  return s;
}

std::string letter_list(const std::vector<GenId> &vars, const Alphabet &alphabet) {
  std::string s;
  for (GenId v : vars)
    s += (s.empty() ? "" : ",") + alphabet[v].name;
  return s;
}

void check_multilinear(const PoissonPolynomial &g) {
  for (const auto &[m, c] : g.f.terms()) {
    MultiDegree md = m.multidegree();
    for (GenId v : g.vars)
      if (md[v] != 1)
        throw Error(ErrorKind::Precondition, "polynomial is not multilinear in its letters");
    for (const auto &[gen, n] : md.counts())
      if (gen != 0 && std::find(g.vars.begin(), g.vars.end(), gen) == g.vars.end())
        throw Error(ErrorKind::Precondition, "polynomial uses a generator that is not a letter");
  }
}

// Symbolic monomial in bare letters, D(letters) and <,>-pairs.
struct Symbolic {
  std::vector<std::pair<GenId, GenId>> pairs;
  std::vector<GenId> singles;
  std::vector<GenId> bare;
  auto operator<=>(const Symbolic &) const = default;
};

} // namespace

FarkasResult farkas_reduce(const PoissonPolynomial &g0, Alphabet &alphabet) {
  require_even(g0.f);
  if (g0.f.is_zero())
    throw Error(ErrorKind::Degenerate, "the input polynomial is zero");
  PoissonPolynomial g = g0;
  std::sort(g.vars.begin(), g.vars.end());
  check_multilinear(g);
  FarkasResult out;
  out.trace.push_back({"input", g, ""});

  // Step 1: split letters sitting in brackets of length 3 or more.
  for (;;) {
    std::optional<GenId> tall;
    for (GenId v : g.vars)
      if (x_height(g.f, v) >= 3) {
        tall = v;
        break;
      }
    if (!tall)
      break;
    const int before = measure(g);
    PoissonPolynomial next = delta(g, *tall, alphabet);
    if (next.f.is_zero())
      throw Error(ErrorKind::Degenerate, "step 1: delta in " + alphabet[*tall].name + " vanishes");
    if (measure(next) >= before)
      throw Error(ErrorKind::Limit, "step 1: splitting " + alphabet[*tall].name +
                                        " does not lower the height measure");
    out.trace.push_back({"step1", next, "delta in " + alphabet[*tall].name});
    g = std::move(next);
  }

  // Step 2: strip letters in which g is not a derivation.
  for (;;) {
    std::optional<GenId> bad;
    for (GenId v : g.vars)
      if (!is_derivation_in(g, v)) {
        bad = v;
        break;
      }
    if (!bad)
      break;
    Decomposition d = decompose(g.f, *bad);
    PoissonPolynomial next;
    next.f = -d.t;
    for (const auto &[xi, ti] : d.ti)
      next.f.add(mul(d_op(letter(xi)), ti));
    for (GenId v : g.vars)
      if (v != *bad)
        next.vars.push_back(v);
    if (next.f.is_zero())
      throw Error(ErrorKind::Degenerate, "step 2: -T + sum D(x_i) T_i vanishes for " +
                                             alphabet[*bad].name);
    out.trace.push_back({"step2", next, "removed " + alphabet[*bad].name});
    g = std::move(next);
  }

  // Step 3: {x,y} = <x,y> + D(x) y - x D(y), then split off bare letters.
  std::map<Symbolic, Scalar> sym;
  for (const auto &[m, c] : g.f.terms()) {
    std::vector<std::pair<Scalar, Symbolic>> partial{{c, Symbolic{}}};
    for (const auto &fac : m.factors()) {
      Word w = fac.word;
      std::vector<std::pair<Scalar, Symbolic>> next;
      for (auto &[k, s] : partial) {
        if (w.is_leaf()) {
          s.bare.push_back(w.gen());
          next.emplace_back(k, s);
        } else if (w.right().gen() == 0) {
          s.singles.push_back(w.left().gen());
          next.emplace_back(k, s);
        } else {
          GenId a = w.left().gen(), b = w.right().gen();
          Symbolic s1 = s, s2 = s, s3 = s;
          s1.pairs.emplace_back(a, b);
          s2.singles.push_back(a);
          s2.bare.push_back(b);
          s3.bare.push_back(a);
          s3.singles.push_back(b);
          next.emplace_back(k, s1);
          next.emplace_back(k, s2);
          next.emplace_back(-k, s3);
        }
      }
      partial = std::move(next);
    }
    for (auto &[k, s] : partial) {
      for (auto &[a, b] : s.pairs)
        if (a > b) {
          std::swap(a, b);
          k = -k;
        }
      std::sort(s.pairs.begin(), s.pairs.end());
      std::sort(s.singles.begin(), s.singles.end());
      std::sort(s.bare.begin(), s.bare.end());
      sym[s] += k;
    }
  }
  auto symbolic_element = [](const Symbolic &s) {
    Element e = Element::unit(Theory::GenP);
    for (const auto &[a, b] : s.pairs)
      e = mul(e, angle_bracket(letter(a), letter(b)));
    for (GenId v : s.singles)
      e = mul(e, d_op(letter(v)));
    for (GenId v : s.bare)
      e = mul(e, letter(v));
    return e;
  };
  for (GenId v : g.vars) {
    Element r(Theory::GenP);
    for (auto it = sym.begin(); it != sym.end();) {
      auto pos = std::find(it->first.bare.begin(), it->first.bare.end(), v);
      if (it->second != 0 && pos != it->first.bare.end()) {
        Symbolic s = it->first;
        s.bare.erase(s.bare.begin() + (pos - it->first.bare.begin()));
        r.add(symbolic_element(s), it->second);
        it = sym.erase(it);
      } else {
        ++it;
      }
    }
    if (!r.is_zero())
      out.discharged.push_back(r);
  }

  std::map<GenId, int> index;
  for (GenId v : g.vars)
    index.emplace(v, static_cast<int>(index.size()) + 1);
  CustomaryPolynomial result(static_cast<int>(g.vars.size()));
  result.set_letters(g.vars);
  for (const auto &[s, k] : sym) {
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> singles;
    for (const auto &[a, b] : s.pairs)
      pairs.emplace_back(index.at(a), index.at(b));
    for (GenId v : s.singles)
      singles.push_back(index.at(v));
    result.add(k, pairs, singles);
  }
  if (result.is_zero())
    throw Error(ErrorKind::Degenerate, "step 3: nothing customary is left");
  PoissonPolynomial last{customary_to_element(result), g.vars};
  out.trace.push_back({"step3", last, "letters " + letter_list(g.vars, alphabet)});
  out.result = std::move(result);
  return out;
}

Element customary_to_element(const CustomaryPolynomial &c) {
  Element total(Theory::GenP);
  for (const auto &t : c.terms()) {
    Element e = Element::unit(Theory::GenP);
    for (const auto &[p, q] : t.pairs)
      e = mul(e, angle_bracket(letter(c.letter(p)), letter(c.letter(q))));
    for (int s : t.singles)
      e = mul(e, d_op(letter(c.letter(s))));
    total.add(e, t.coeff);
  }
  return total;
}

// ---------------------------------------------------------------- macros

Element pair_macro(const Element &u1, const Element &u2, const Element &w1, const Element &w2) {
  Element w12 = mul(w1, w2);
  Element r = mul(bracket(u1, u2), w12);
  r.add(mul(bracket(u1, w12), u2));
  r.add(mul(u1, bracket(w12, u2)));
  const Element *u[2] = {&u1, &u2};
  const Element *w[2] = {&w1, &w2};
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) {
      // sgn(sigma_1) is -1 for the swap
      Scalar c = s1 == 0 ? -1 : 1;
      r.add(mul(mul(bracket(*u[s1], *w[s2]), *u[1 - s1]), *w[1 - s2]), c);
    }
  return r;
}

Element single_macro(const Element &t1, const Element &t2, const Element &t3) {
  Element r = bracket(mul(t2, t3), t1);
  r.add(mul(bracket(t2, t1), t3), -1);
  r.add(mul(bracket(t3, t1), t2), -1);
  return r;
}

Element corollary_expand(const CustomaryPolynomial &c, const std::vector<GenId> &zs) {
  const int m = c.m();
  if (zs.size() < static_cast<std::size_t>(2 * m))
    throw Error(ErrorKind::Precondition, "the expansion needs " + std::to_string(2 * m) +
                                             " extra letters, got " + std::to_string(zs.size()));
  auto z = [&](int k) { return letter(zs.at(static_cast<std::size_t>(k - 1))); };
  auto x = [&](int i) { return letter(c.letter(i)); };
  Element total(Theory::GenP);
  for (const auto &t : c.terms()) {
    const int i = static_cast<int>(t.pairs.size());
    Element e = Element::unit(Theory::GenP);
    for (int k = 1; k <= i; ++k) {
      const auto &[p, q] = t.pairs[static_cast<std::size_t>(k - 1)];
      e = mul(e, pair_macro(x(p), x(q), z(2 * k - 1), z(2 * k)));
    }
    for (int k = 1; k <= m - 2 * i; ++k)
      e = mul(e, single_macro(x(t.singles[static_cast<std::size_t>(k - 1)]), z(2 * i + 2 * k - 1),
                              z(2 * i + 2 * k)));
    for (int k = 1; k <= 2 * i; ++k)
      e = mul(e, z(2 * m - 2 * i + k));
    total.add(e, t.coeff);
  }
  return total;
}

// ------------------------------------------------------------ identity terms

namespace {

Term varify(const Term &t, const std::set<GenId> &vars, const Alphabet &alphabet) {
  if (auto g = t.as<TermGen>())
    return vars.count(g->id) ? Term::var(alphabet[g->id].name) : t;
  if (auto p = t.as<TermProd>())
    return Term::prod(varify(p->left, vars, alphabet), varify(p->right, vars, alphabet));
  if (auto b = t.as<TermBracket>())
    return Term::bracket(varify(b->left, vars, alphabet), varify(b->right, vars, alphabet));
  if (auto s = t.as<TermSum>()) {
    std::vector<std::pair<Scalar, Term>> terms;
    for (const auto &[c, u] : s->terms)
      terms.emplace_back(c, varify(u, vars, alphabet));
    return Term::sum(std::move(terms));
  }
  return t;
}

} // namespace

Term to_identity_term(const PoissonPolynomial &p, const Alphabet &alphabet) {
  return varify(to_term(p.f), std::set<GenId>(p.vars.begin(), p.vars.end()), alphabet);
}

} // namespace jbgp
