#pragma once

// Shared fixtures and independent oracles for the test binaries.

#include <functional>
#include <map>
#include <random>
#include <vector>

#include "jbgp/concrete.hpp"
#include "jbgp/engine.hpp"

namespace testing {

using namespace jbgp;

/// 1 < x < y < z < t with t odd.
inline Alphabet mixed_alphabet() {
  return Alphabet::from_list(
      {{"x", Parity::Even}, {"y", Parity::Even}, {"z", Parity::Even}, {"t", Parity::Odd}});
}

inline Alphabet even_alphabet(int n, const std::string &prefix = "x") {
  std::vector<std::pair<std::string, Parity>> g;
  for (int i = 1; i <= n; ++i)
    g.emplace_back(prefix + std::to_string(i), Parity::Even);
  return Alphabet::from_list(g);
}

inline Element gen(Theory th, const Alphabet &a, GenId id) {
  return id == 0 ? Element::unit(th) : Element::generator(th, a[id]);
}

/// Random raw term of the given x-degree; leaves may be the unit when
/// `with_unit` is set.
inline Term random_term(std::mt19937 &rng, const Alphabet &a, int degree, bool with_unit = true) {
  std::uniform_int_distribution<int> coin(0, 1);
  if (degree <= 1) {
    GenId lo = with_unit && degree == 0 ? 0 : 1;
    GenId id = std::uniform_int_distribution<GenId>(lo, static_cast<GenId>(a.size() - 1))(rng);
    return Term::gen(a[id]);
  }
  int left = std::uniform_int_distribution<int>(1, degree - 1)(rng);
  Term l = random_term(rng, a, left, with_unit), r = random_term(rng, a, degree - left, with_unit);
  if (with_unit && coin(rng) && std::uniform_int_distribution<int>(0, 3)(rng) == 0)
    r = Term::bracket(r, Term::gen(a.unit()));
  return coin(rng) ? Term::prod(l, r) : Term::bracket(l, r);
}

/// Random nonzero homogeneous element: a small combination of normal forms
/// of random terms of equal parity.
inline Element random_element(std::mt19937 &rng, const Alphabet &a, Theory th, int max_degree) {
  for (;;) {
    int deg = std::uniform_int_distribution<int>(1, max_degree)(rng);
    Element e = normal_form(random_term(rng, a, deg), th);
    if (e.is_zero() || !e.is_homogeneous())
      continue;
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
      Element f = normal_form(random_term(rng, a, deg), th);
      if (!f.is_zero() && f.is_homogeneous() && f.parity() == e.parity())
        e.add(f, make_scalar(std::uniform_int_distribution<int>(-3, 3)(rng), 2));
    }
    if (!e.is_zero())
      return e;
  }
}

// ---------------------------------------------------------------------
// Free associative superalgebra on the alphabet. Lie words embed through
// the supercommutator [u,v] = uv - (-1)^{|u||v|} vu.

using NCWord = std::vector<GenId>;
using NCPoly = std::map<NCWord, Scalar>;

inline void nc_add(NCPoly &p, const NCPoly &q, const Scalar &c) {
  for (const auto &[w, k] : q) {
    Scalar &s = p[w];
    s += c * k;
    if (s == 0)
      p.erase(w);
  }
}

inline NCPoly nc_mul(const NCPoly &p, const NCPoly &q) {
  NCPoly r;
  for (const auto &[u, a] : p)
    for (const auto &[v, b] : q) {
      NCWord w = u;
      w.insert(w.end(), v.begin(), v.end());
      nc_add(r, {{w, a * b}}, 1);
    }
  return r;
}

inline NCPoly nc_commutator(const NCPoly &p, Parity pp, const NCPoly &q, Parity pq) {
  NCPoly r = nc_mul(p, q);
  nc_add(r, nc_mul(q, p), -sign(pp, pq));
  return r;
}

inline NCPoly embed(Word w) {
  if (w.is_leaf())
    return {{NCWord{w.gen()}, Scalar(1)}};
  return nc_commutator(embed(w.left()), w.left().parity(), embed(w.right()), w.right().parity());
}

inline NCPoly embed(const LieCombination &c) {
  NCPoly r;
  for (const auto &[w, k] : c.terms())
    nc_add(r, embed(w), k);
  return r;
}

// ---------------------------------------------------------------------
// Exact rank of a family of sparse vectors.

template <class Key> std::size_t rank_of(const std::vector<std::map<Key, Scalar>> &rows) {
  std::vector<std::map<Key, Scalar>> basis; // each with a distinct pivot (its first key)
  for (auto r : rows) {
    for (const auto &b : basis) {
      auto pivot = b.begin()->first;
      auto it = r.find(pivot);
      if (it == r.end())
        continue;
      Scalar f = it->second / b.begin()->second;
      for (const auto &[k, c] : b) {
        Scalar &s = r[k];
        s -= f * c;
        if (s == 0)
          r.erase(k);
      }
    }
    if (r.empty())
      continue;
    // keep pivots reduced: eliminate the new pivot from older rows
    auto pivot = r.begin()->first;
    for (auto &b : basis) {
      auto it = b.find(pivot);
      if (it == b.end())
        continue;
      Scalar f = it->second / r.begin()->second;
      for (const auto &[k, c] : r) {
        Scalar &s = b[k];
        s -= f * c;
        if (s == 0)
          b.erase(k);
      }
    }
    basis.push_back(std::move(r));
    std::sort(basis.begin(), basis.end(),
              [](const auto &a, const auto &b) { return a.begin()->first < b.begin()->first; });
  }
  return basis.size();
}

/// Elements as sparse vectors keyed by monomial text.
inline std::map<std::string, Scalar> coords(const Element &e, const Alphabet &a) {
  std::map<std::string, Scalar> m;
  for (const auto &[mono, c] : e.terms())
    m[mono.to_string(a)] = c;
  return m;
}

// ---------------------------------------------------------------------
// Koszul sign by literally bubble-sorting the concatenated sequence into
// the merged order and counting odd-odd swaps.

inline int bubble_sign(const std::vector<Parity> &seq, const std::vector<std::size_t> &order) {
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    rank[order[i]] = i;
  std::vector<std::size_t> cur(seq.size());
  for (std::size_t i = 0; i < cur.size(); ++i)
    cur[i] = i;
  int s = 1;
  for (bool swapped = true; swapped;) {
    swapped = false;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i)
      if (rank[cur[i]] > rank[cur[i + 1]]) {
        if (is_odd(seq[cur[i]]) && is_odd(seq[cur[i + 1]]))
          s = -s;
        std::swap(cur[i], cur[i + 1]);
        swapped = true;
      }
  }
  return s;
}

// ---------------------------------------------------------------------
// Concrete algebras used as evaluation oracles, with the theory whose
// normal forms they model.

struct Model {
  StructureAlgebra A;
  Theory th;
};

inline std::vector<Model> evaluation_models() {
  return {{builtin_wronskian(4), Theory::GenP},
          {builtin_super_wronskian(2), Theory::GenP},
          {builtin_contact(), Theory::GenP},
          {builtin_grassmann_poisson(2), Theory::GenP},
          {untwist_algebra(builtin_wronskian(4)), Theory::JB},
          {builtin_super_wronskian(2), Theory::JB},
          {builtin_grassmann_poisson(2), Theory::JB},
          {builtin_bivector_gp(), Theory::GP},
          {builtin_zero_mul_example(), Theory::GP}};
}

/// Random homogeneous vectors for the generators of `a`, matching parities.
inline std::map<GenId, Vector> random_bindings(std::mt19937 &rng, const StructureAlgebra &A,
                                               const Alphabet &a) {
  std::map<GenId, Vector> out;
  for (GenId g = 1; g < a.size(); ++g) {
    Vector v = A.zero();
    for (std::size_t i = 0; i < A.dim(); ++i)
      if (A.parity(i) == a[g].parity && std::uniform_int_distribution<int>(0, 1)(rng))
        v[i] = std::uniform_int_distribution<int>(-2, 2)(rng);
    out[g] = v;
  }
  return out;
}

} // namespace testing

namespace testing {

// Residuals of the defining identities for a bracket `br` with derivation `d`.

inline Element jo1_residual(const Element &a, const Element &b, const Element &c,
                            const BracketFn &br, const UnaryFn &d) {
  Element r = br(a, mul(b, c));
  r.add(mul(br(a, b), c), -1);
  r.add(mul(b, br(a, c)), -sign(a.parity(), b.parity()));
  r.add(mul(mul(d(a), b), c), 1);
  return r;
}

inline Element jacobi_residual(const Element &a, const Element &b, const Element &c,
                               const BracketFn &br) {
  Element r = br(a, br(b, c));
  r.add(br(br(a, b), c), -1);
  r.add(br(b, br(a, c)), -sign(a.parity(), b.parity()));
  return r;
}

inline Element kmtojd2_residual(const Element &a, const Element &b, const Element &c,
                                const BracketFn &br, const UnaryFn &d) {
  Parity pa = a.parity(), pb = b.parity(), pc = c.parity();
  Element r = jacobi_residual(a, b, c, br);
  r.add(mul(d(a), br(b, c)), -1);
  r.add(mul(d(b), br(c, a)), -sign(pa, pb + pc));
  r.add(mul(d(c), br(a, b)), -sign(pc, pa + pb));
  return r;
}

inline Element leibniz_residual(const Element &a, const Element &b, const Element &c,
                                const BracketFn &br) {
  Element r = br(a, mul(b, c));
  r.add(mul(br(a, b), c), -1);
  r.add(mul(b, br(a, c)), -sign(a.parity(), b.parity()));
  return r;
}

inline Element anticommutativity_residual(const Element &a, const Element &b, const BracketFn &br) {
  Element r = br(a, b);
  r.add(br(b, a), sign(a.parity(), b.parity()));
  return r;
}

inline BracketFn engine_bracket() {
  return [](const Element &a, const Element &b) { return bracket(a, b); };
}
inline UnaryFn engine_d() {
  return [](const Element &a) { return d_op(a); };
}
inline UnaryFn scaled(const UnaryFn &d, Scalar c) {
  return [d, c](const Element &a) { return c * d(a); };
}

inline std::vector<Element> factors_of(const Monomial &m, Theory th) {
  std::vector<Element> out;
  for (const auto &f : m.factors())
    for (std::uint32_t k = 0; k < f.exp; ++k)
      out.push_back(Element::word(th, f.word));
  return out;
}

inline Element product(const std::vector<Element> &fs, std::size_t lo, std::size_t hi, Theory th) {
  Element r = Element::unit(th);
  for (std::size_t i = lo; i < hi; ++i)
    r = mul(r, fs[i]);
  return r;
}

// Confluence oracle: {a, b} computed from the bracket of single basis words only, by splitting
// products with (jo1) one factor at a time: at the last factor when
// `split_last`, at the first otherwise. D(a) for a product a is -{1, a},
// expanded the same way.
inline Element jo1_oracle(const std::vector<Element> &a, const std::vector<Element> &b, Theory th,
                   bool split_last) {
  auto par = [](const std::vector<Element> &v) {
    Parity p = Parity::Even;
    for (const auto &e : v)
      p += e.parity();
    return p;
  };
  if (b.size() >= 2) {
    std::size_t cut = split_last ? b.size() - 1 : 1;
    std::vector<Element> p(b.begin(), b.begin() + static_cast<long>(cut));
    std::vector<Element> q(b.begin() + static_cast<long>(cut), b.end());
    Element P = product(p, 0, p.size(), th), Q = product(q, 0, q.size(), th);
    Element r = mul(jo1_oracle(a, p, th, split_last), Q);
    r.add(mul(P, jo1_oracle(a, q, th, split_last)), sign(par(a), par(p)));
    if (th != Theory::GP) {
      Element da = -jo1_oracle({Element::unit(th)}, a, th, split_last);
      r.add(mul(mul(da, P), Q), -1);
    }
    return r;
  }
  if (a.size() >= 2)
    return Scalar(-sign(par(a), par(b))) * jo1_oracle(b, a, th, split_last);
  return bracket(a.front(), b.front());
}

inline std::vector<Monomial> monomials_up_to(const Alphabet &al, Theory th, std::uint32_t max_len) {
  std::vector<Monomial> out;
  std::function<void(GenId, MultiDegree, std::uint32_t)> go = [&](GenId g, MultiDegree d,
                                                                  std::uint32_t left) {
    if (g == al.size()) {
      if (d.x_total() > 0)
        for (const auto &m : enumerate_basis(d, al, th))
          out.push_back(m);
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      MultiDegree e = d;
      if (k)
        e.add(g, k);
      go(g + 1, e, left - k);
    }
  };
  go(0, MultiDegree{}, max_len);
  return out;
}

} // namespace testing
