#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "jbgp/farkas.hpp"
#include "jbgp/liebasis.hpp"
#include "jbgp/text.hpp"
#include "support.hpp"

using namespace jbgp;
using namespace testing;

namespace {

Alphabet xyz() {
  return Alphabet::from_list({{"x", Parity::Even}, {"y", Parity::Even}, {"z", Parity::Even}});
}

Element genp(const std::string &src, const Alphabet &a) { return normal_form(parse_term(src, a), Theory::GenP); }

Element letter(const Alphabet &a, GenId g) { return Element::generator(Theory::GenP, a[g]); }

PoissonPolynomial poly(const std::string &src, const Alphabet &a) {
  PoissonPolynomial p{genp(src, a), {}};
  for (GenId g = 1; g < a.size(); ++g)
    p.vars.push_back(g);
  return p;
}

// Random customary polynomial on m letters: a few terms with random
// pairings and small coefficients.
CustomaryPolynomial random_customary(std::mt19937 &rng, int m) {
  CustomaryPolynomial c(m);
  for (int n = 0; n < 3; ++n) {
    std::vector<int> idx(static_cast<std::size_t>(m));
    std::iota(idx.begin(), idx.end(), 1);
    std::shuffle(idx.begin(), idx.end(), rng);
    int pairs = std::uniform_int_distribution<int>(0, m / 2)(rng);
    std::vector<std::pair<int, int>> ps;
    std::vector<int> ss;
    for (int k = 0; k < pairs; ++k)
      ps.emplace_back(idx[static_cast<std::size_t>(2 * k)], idx[static_cast<std::size_t>(2 * k + 1)]);
    for (std::size_t k = static_cast<std::size_t>(2 * pairs); k < idx.size(); ++k)
      ss.push_back(idx[k]);
    c.add(Scalar(std::uniform_int_distribution<int>(1, 4)(rng)), ps, ss);
  }
  return c;
}

// Null space of the linear map i -> images[i], as coefficient vectors.
std::vector<std::vector<Scalar>> kernel(const std::vector<Element> &images, const Alphabet &a) {
  const std::size_t n = images.size();
  std::vector<std::pair<std::map<std::string, Scalar>, std::vector<Scalar>>> rows;
  std::vector<std::vector<Scalar>> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto v = coords(images[i], a);
    std::vector<Scalar> comb(n, Scalar(0));
    comb[i] = 1;
    for (const auto &[piv, row] : rows) {
      auto it = v.find(piv.begin()->first);
      if (it == v.end())
        continue;
      Scalar f = it->second / piv.begin()->second;
      for (const auto &[k, c] : piv) {
        Scalar &x = v[k];
        x -= f * c;
        if (x == 0)
          v.erase(k);
      }
      for (std::size_t j = 0; j < n; ++j)
        comb[j] -= f * row[j];
    }
    if (v.empty())
      out.push_back(comb);
    else
      rows.emplace_back(std::move(v), std::move(comb));
  }
  return out;
}

bool holds(const PoissonPolynomial &p, const Alphabet &a, const StructureAlgebra &A) {
  return is_identity(to_identity_term(p, a), A).holds;
}

} // namespace

TEST_CASE("CustomaryPolynomial canonicalization") {
  CustomaryPolynomial c(3);
  c.add(Scalar(2), {{2, 1}}, {3});
  REQUIRE(c.terms().size() == 1);
  CHECK(c.terms()[0].coeff == -2);
  CHECK(c.terms()[0].pairs == std::vector<std::pair<int, int>>{{1, 2}});
  c.add(Scalar(2), {{1, 2}}, {3});
  CHECK(c.is_zero());
  CHECK_THROWS_AS(c.add(Scalar(1), {{1, 2}}, {}), Error);
  CHECK_THROWS_AS(c.add(Scalar(1), {{1, 2}}, {2}), Error);
  c.add(Scalar(0), {{1, 5}}, {});
  CHECK(c.is_zero());
  Alphabet a = xyz();
  c.add(Scalar(1), {{1, 3}}, {2});
  CHECK(c.to_string(a) == "<x,z> D(y)");
  c.set_letters({3, 2, 1});
  CHECK(c.to_string(a) == "<z,x> D(y)");
  CHECK(c.to_string(Alphabet{}) == "<x1,x3> D(x2)");
  CHECK_THROWS_AS(c.set_letters({1}), Error);
}

TEST_CASE("angle bracket and left-normed brackets") {
  Alphabet a = xyz();
  Element x = letter(a, 1), y = letter(a, 2), z = letter(a, 3);
  CHECK(angle_bracket(x, y) == genp("{x,y} - D(x) y + x D(y)", a));
  CHECK(angle_bracket(x, y) == -angle_bracket(y, x));
  CHECK(leftnormed({x}) == x);
  CHECK(leftnormed({x, y, z}) == bracket(bracket(x, y), z));
  CHECK_THROWS_AS(leftnormed({}), Error);
  Element g = Element::generator(Theory::GP, a[1]);
  CHECK_THROWS_AS(angle_bracket(g, g), Error);

  // <,> vanishes on the Wronskian and is a biderivation of the product
  StructureAlgebra W = builtin_wronskian(4);
  CHECK(is_identity(parse_term("<?a,?b>", Alphabet{}, true), W).holds);
  Alphabet b = Alphabet::from_list({{"x", Parity::Even}, {"y", Parity::Even}, {"z", Parity::Even},
                                    {"w", Parity::Even}});
  CHECK(genp("<x y,z>", b) == genp("x <y,z> + y <x,z>", b));
}

TEST_CASE("lemma41_expand agrees with the engine") {
  Alphabet a = Alphabet::from_list({{"y", Parity::Even}, {"z", Parity::Even}, {"w1", Parity::Even},
                                    {"w2", Parity::Even}, {"w3", Parity::Even}});
  Element y = letter(a, 1), z = letter(a, 2);
  for (std::size_t n = 0; n <= 3; ++n) {
    std::vector<Element> ws, seq{mul(y, z)};
    for (std::size_t i = 0; i < n; ++i) {
      ws.push_back(letter(a, static_cast<GenId>(3 + i)));
      seq.push_back(ws.back());
    }
    CAPTURE(n);
    CHECK(lemma41_expand(y, z, ws) == leftnormed(seq));
  }
  // composite arguments
  Element yy = bracket(y, letter(a, 3));
  CHECK(lemma41_expand(yy, z, {letter(a, 4)}) == leftnormed({mul(yy, z), letter(a, 4)}));
  Alphabet s = Alphabet::from_list({{"t", Parity::Odd}});
  Element t = letter(s, 1);
  CHECK_THROWS_AS(lemma41_expand(t, t, {}), Error);
}

TEST_CASE("x_height") {
  Alphabet a = xyz();
  CHECK(x_height(genp("x y", a), 1) == 1);
  CHECK(x_height(genp("{x,y} z", a), 1) == 2);
  CHECK(x_height(genp("D(x) y", a), 1) == 2);
  CHECK(x_height(genp("{{x,y},z}", a), 1) == 3);
  CHECK(x_height(genp("{{x,y},z} + x y z", a), 3) == 3);
  CHECK(x_height(genp("y z", a), 1) == 0);
}

TEST_CASE("delta and derivations") {
  Alphabet a = xyz();
  CHECK(is_derivation_in(poly("D(x) y", a), 1));
  CHECK(is_derivation_in(poly("<x,y> z", a), 1));
  CHECK_FALSE(is_derivation_in(poly("x y", a), 1));
  CHECK_FALSE(is_derivation_in(poly("{x,y}", a), 1));
  CHECK_FALSE(is_derivation_in(poly("x D(y)", a), 1));

  Alphabet b = a;
  PoissonPolynomial d = delta(poly("{x,y}", b), 1, b);
  REQUIRE(b.size() == 6);
  CHECK(b[4].name == "x'");
  CHECK(b[5].name == "x''");
  CHECK(d.vars == std::vector<GenId>{2, 3, 4, 5});
  CHECK(d.f == genp("D(y) x' x''", b));

  Alphabet c = Alphabet::from_list({{"x", Parity::Even}, {"w", Parity::Even}, {"v", Parity::Even},
                                    {"y", Parity::Even}, {"z", Parity::Even}});
  PoissonPolynomial xw{genp("x w", c), {1, 2}};
  CHECK(delta(xw, 1, 4, 5).f == genp("-1 y z w", c));
  PoissonPolynomial angle{genp("<x,w> v", c), {1, 2, 3}};
  CHECK(delta(angle, 1, 4, 5).f.is_zero());

  PoissonPolynomial notvar{genp("x y", a), {2}};
  CHECK_THROWS_AS(delta(notvar, 1, 4, 5), Error);
}

TEST_CASE("decompose examples") {
  Alphabet a = Alphabet::from_list({{"x", Parity::Even}, {"x1", Parity::Even}, {"v", Parity::Even},
                                    {"u", Parity::Even}, {"w", Parity::Even}});
  Decomposition d = decompose(genp("x w", a), 1);
  CHECK(d.t == genp("w", a));
  CHECK(d.t0.is_zero());
  CHECK(d.ti.empty());
  d = decompose(genp("D(x) w", a), 1);
  CHECK(d.t.is_zero());
  CHECK(d.t0 == genp("w", a));
  d = decompose(genp("{x,x1} v + x u", a), 1);
  CHECK(d.t == genp("u", a));
  CHECK(d.t0.is_zero());
  REQUIRE(d.ti.size() == 1);
  CHECK(d.ti.at(2) == genp("v", a));
}

TEST_CASE("Lie polynomials that are derivations in x have x-height 2") {
  // bracket words in the letters and the unit, so D(x) = {x,1} is included
  int found = 0;
  for (int k = 0; k <= 2; ++k) {
    Alphabet a = even_alphabet(k + 1);
    GenId y = a.add("y", Parity::Even), z = a.add("z", Parity::Even);
    std::vector<GenId> vars;
    MultiDegree letters;
    for (GenId g = 1; g <= static_cast<GenId>(k + 1); ++g) {
      letters.add(g);
      vars.push_back(g);
    }
    std::vector<Element> words, images;
    for (std::uint32_t units = 0; units + k + 1 <= 4; ++units) {
      MultiDegree d = letters;
      if (units)
        d.add(0, units);
      for (Word w : enumerate_M(d, a)) {
        words.push_back(Element::word(Theory::GenP, w));
        images.push_back(delta({words.back(), vars}, 1, y, z).f);
      }
    }
    CAPTURE(k);
    for (const auto &comb : kernel(images, a)) {
      Element f(Theory::GenP);
      for (std::size_t i = 0; i < comb.size(); ++i)
        f.add(words[i], comb[i]);
      if (f.is_zero())
        continue;
      CHECK(x_height(f, 1) == 2);
      CHECK(is_derivation_in({f, vars}, 1));
      ++found;
    }
  }
  CHECK(found > 0);
}

TEST_CASE("derivation iff delta vanishes iff T = sum D(x_i) T_i, on random height-2 polynomials") {
  Alphabet a = Alphabet::from_list({{"x", Parity::Even}, {"y", Parity::Even}, {"z", Parity::Even},
                                    {"w", Parity::Even}});
  const char *atoms[] = {"x y z w", "D(x) y z w", "{x,y} z w", "{x,z} D(y) w", "{x,w} <y,z>",
                         "x D(y) z w", "x <y,z> w", "D(x) <y,w> z", "{x,y} {z,w}", "x y D(z) D(w)"};
  std::mt19937 rng(41);
  int derivations = 0;
  for (int n = 0; n < 60; ++n) {
    std::string src;
    for (const char *t : atoms)
      if (int c = std::uniform_int_distribution<int>(-2, 2)(rng); c != 0 && rng() % 3 == 0)
        src += (src.empty() ? "" : " + ") + std::to_string(c) + " " + t;
    if (n % 5 == 0)
      src = "<x,y> z w + D(x) y z w";
    if (src.empty())
      continue;
    PoissonPolynomial f = poly(src, a);
    if (f.f.is_zero())
      continue;
    CAPTURE(src);
    GenId x = 1;
    Decomposition d = decompose(f.f, x);
    Element back = mul(letter(a, x), d.t);
    back.add(mul(d_op(letter(a, x)), d.t0));
    Element r = d.t;
    r.add(d.t, -2); // -T
    for (const auto &[xi, ti] : d.ti) {
      back.add(mul(bracket(letter(a, x), letter(a, xi)), ti));
      r.add(mul(d_op(letter(a, xi)), ti));
    }
    CHECK(back == f.f);
    bool der = is_derivation_in(f, x);
    CHECK(der == r.is_zero());
    derivations += der;
    // adding x (sum D(x_i) T_i - T) always produces a derivation in x
    PoissonPolynomial g{f.f + mul(letter(a, x), r), f.vars};
    CHECK(is_derivation_in(g, x));
    CHECK(x_height(g.f, x) <= 2);
  }
  CHECK(derivations > 0);
  CHECK_THROWS_AS(decompose(genp("{{x,y},z} w", a), 1), Error);
  CHECK_THROWS_AS(decompose(genp("y z w", a), 1), Error);
}

TEST_CASE("farkas_reduce examples") {
  Alphabet a = xyz();
  FarkasResult r = farkas_reduce(poly("<<x,y>,z>", a), a);
  CHECK(r.result.to_string(a) == "<y,x'> <z,x''> + <y,x''> <z,x'>");
  CHECK(r.trace.front().step == "input");
  CHECK(r.trace.back().step == "step3");

  Alphabet b = xyz();
  r = farkas_reduce(poly("<x,y> z", b), b);
  CHECK(r.result.m() == 2);
  CHECK(r.result.to_string(b) == "-1/1 <x,y>");

  Alphabet c = xyz();
  r = farkas_reduce(poly("D(x) D(y) D(z)", c), c);
  CHECK(r.result.to_string(c) == "D(x) D(y) D(z)");
  CHECK(r.trace.size() == 2);

  // a customary input is a fixpoint
  Alphabet f = xyz();
  r = farkas_reduce(poly("<x,y> D(z) + 3 D(x) D(y) D(z)", f), f);
  CHECK(r.result.to_string(f) == "3/1 D(x) D(y) D(z) + <x,y> D(z)");
  CHECK(r.discharged.empty());

  Alphabet e = xyz();
  r = farkas_reduce(poly("x y z", e), e);
  CHECK(r.result.m() == 0);
  CHECK(r.result.to_string(e) == "-1/1");
}

TEST_CASE("farkas_reduce rejects bad input") {
  Alphabet a = xyz();
  CHECK_THROWS_AS(farkas_reduce(poly("{x,y} - {x,y}", a), a), Error);
  try {
    farkas_reduce(poly("0 x", a), a);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::Degenerate);
  }
  Alphabet s = Alphabet::from_list({{"x", Parity::Even}, {"t", Parity::Odd}});
  try {
    farkas_reduce(poly("x t", s), s);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
  Alphabet q = xyz();
  CHECK_THROWS_AS(farkas_reduce(poly("x x y z", q), q), Error);
  PoissonPolynomial stray{genp("x y", q), {1}};
  CHECK_THROWS_AS(farkas_reduce(stray, q), Error);
}

TEST_CASE("every reduction step maps identities of unital GenP algebras to identities") {
  const char *inputs[] = {"<<x,y>,z>",        "{{x,y},z}",          "{x y,z}",
                          "x {y,z}",          "D(x) D(y) z",        "<x,y> z + D(x) D(y) D(z)",
                          "{x,{y,z}} - x y z", "{D(x),y} z",         "<x,y> D(z)"};
  std::vector<StructureAlgebra> models{builtin_wronskian(3), builtin_wronskian(4),
                                        builtin_grassmann_poisson(2)};
  int held = 0;
  for (std::string src : inputs) {
    Alphabet a = xyz();
    PoissonPolynomial p = poly(src, a);
    FarkasResult r = farkas_reduce(p, a);
    CAPTURE(src);
    for (const auto &A : models) {
      CAPTURE(A.name());
      bool truth = holds(p, a, A);
      held += truth;
      for (const auto &s : r.trace) {
        CAPTURE(s.step);
        if (truth)
          CHECK(holds(s.g, a, A));
      }
      PoissonPolynomial result{customary_to_element(r.result), r.result.letters()};
      if (r.discharged.empty())
        CHECK(result.f == r.trace[r.trace.size() - 2].g.f);
      if (truth)
        CHECK(holds(result, a, A));
    }
  }
  CHECK(held >= 4);
}

TEST_CASE("macros") {
  Alphabet a = Alphabet::from_list({{"u1", Parity::Even}, {"u2", Parity::Even}, {"w1", Parity::Even},
                                    {"w2", Parity::Even}});
  Element u1 = letter(a, 1), u2 = letter(a, 2), w1 = letter(a, 3), w2 = letter(a, 4);
  CHECK(pair_macro(u1, u2, w1, w2) == mul(mul(w1, w2), angle_bracket(u1, u2)));
  CHECK(single_macro(u1, w1, w2) == mul(mul(d_op(u1), w1), w2));
}

TEST_CASE("corollary_expand is the customary polynomial times the extra letters") {
  std::mt19937 rng(43);
  for (int m = 1; m <= 4; ++m)
    for (int n = 0; n < (m == 4 ? 1 : 4); ++n) {
      CustomaryPolynomial c = random_customary(rng, m);
      Alphabet a = even_alphabet(m);
      std::vector<GenId> zs;
      for (int k = 0; k < 2 * m; ++k)
        zs.push_back(a.add("z" + std::to_string(k + 1), Parity::Even));
      Element lhs = corollary_expand(c, zs);
      Element rhs = customary_to_element(c);
      for (GenId z : zs)
        rhs = mul(rhs, letter(a, z));
      CAPTURE(c.to_string(a));
      CHECK(lhs == rhs);
    }
  CustomaryPolynomial c(2);
  c.add(Scalar(1), {{1, 2}}, {});
  CHECK_THROWS_AS(corollary_expand(c, {3, 4, 5}), Error);
}

TEST_CASE("to_identity_term turns letters into variables") {
  Alphabet a = xyz();
  PoissonPolynomial p{genp("{x,y} z", a), {1, 2}};
  Term t = to_identity_term(p, a);
  CHECK(var_degrees(t).size() == 2);
  CHECK_THROWS_AS(is_identity(t, builtin_wronskian(3)), Error);
}
