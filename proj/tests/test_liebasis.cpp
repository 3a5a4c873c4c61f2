#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "jbgp/liebasis.hpp"
#include "support.hpp"

using namespace jbgp;
using testing::embed;
using testing::NCPoly;

namespace {

// Every multidegree over the alphabet with total length in [1, max_len].
std::vector<MultiDegree> degrees_up_to(const Alphabet &a, std::uint32_t max_len) {
  std::vector<MultiDegree> out;
  std::function<void(GenId, MultiDegree, std::uint32_t)> go = [&](GenId g, MultiDegree d,
                                                                  std::uint32_t left) {
    if (g == a.size()) {
      if (d.total() > 0)
        out.push_back(d);
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

std::vector<Word> all_M(const Alphabet &a, std::uint32_t max_len) {
  std::vector<Word> out;
  for (const auto &d : degrees_up_to(a, max_len))
    for (Word w : enumerate_M(d, a))
      out.push_back(w);
  return out;
}

// All full bracketings of the given leaves in the given order.
std::vector<Word> bracketings(const std::vector<Word> &leaves, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1)
    return {leaves[lo]};
  std::vector<Word> out;
  for (std::size_t mid = lo + 1; mid < hi; ++mid)
    for (Word l : bracketings(leaves, lo, mid))
      for (Word r : bracketings(leaves, mid, hi))
        out.push_back(Word::node(l, r));
  return out;
}

// Dimension of the multilinear part of the free Lie algebra on n letters,
// as the rank of every bracketing of every permutation inside the free
// associative algebra.
std::size_t brute_force_lie_dim(const Alphabet &a, int n) {
  std::vector<GenId> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<NCPoly> rows;
  do {
    std::vector<Word> leaves;
    for (GenId g : perm)
      leaves.push_back(Word::leaf(a[g]));
    for (Word w : bracketings(leaves, 0, leaves.size()))
      if (NCPoly p = embed(w); !p.empty())
        rows.push_back(p);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return testing::rank_of(rows);
}

} // namespace

TEST_CASE("good words") {
  Alphabet a = testing::even_alphabet(3);
  Word one = Word::leaf(a[0]), x1 = Word::leaf(a[1]), x2 = Word::leaf(a[2]);
  CHECK(is_good(x1));
  CHECK(is_good(Word::node(x2, x1)));
  CHECK_FALSE(is_good(Word::node(x1, x2)));
  CHECK_FALSE(is_good(Word::node(Word::node(x2, x1), one)));
  CHECK(is_good(Word::node(Word::node(x2, x1), x1)));
  CHECK(is_good(Word::node(x1, one)));
}

TEST_CASE("M-order examples") {
  Alphabet a = testing::even_alphabet(3);
  Word one = Word::leaf(a[0]), x1 = Word::leaf(a[1]), x2 = Word::leaf(a[2]), x3 = Word::leaf(a[3]);
  CHECK(compare_M(one, x1) < 0);
  CHECK(compare_M(x1, Word::node(x2, x1)) < 0);
  CHECK(compare_M(Word::node(x2, x1), Word::node(x3, x1)) < 0);
  CHECK(compare_M(x3, x3) == 0);
}

TEST_CASE("M-order is a strict total order on M up to length 4") {
  Alphabet a = Alphabet::from_list({{"x", Parity::Even}, {"y", Parity::Even}, {"t", Parity::Odd}});
  auto ws = all_M(a, 4);
  REQUIRE(ws.size() > 50);
  for (Word u : ws) {
    CHECK(in_M(u));
    for (Word v : ws) {
      auto c = compare_M(u, v);
      CHECK((c == 0) == (u == v));
      CHECK((compare_M(v, u) < 0) == (c > 0));
    }
  }
  std::vector<Word> sorted = ws;
  std::sort(sorted.begin(), sorted.end(), MLess{});
  for (std::size_t i = 0; i + 2 < sorted.size(); ++i)
    CHECK(compare_M(sorted[i], sorted[i + 2]) < 0);
}

TEST_CASE("bracket_M examples") {
  Alphabet a = testing::even_alphabet(3);
  Word x1 = Word::leaf(a[1]), x2 = Word::leaf(a[2]), x3 = Word::leaf(a[3]);
  Word x21 = Word::node(x2, x1);

  LieCombination r = bracket_M(x1, x2);
  CHECK(r.size() == 1);
  CHECK(r.coeff(x21) == -1);

  r = bracket_M(x21, x1);
  CHECK(r.size() == 1);
  CHECK(r.coeff(Word::node(x21, x1)) == 1);

  r = bracket_M(Word::node(x3, x2), x1);
  CHECK(r.to_string(a) == "-1/1 {{x2,x1},x3} + {{x3,x1},x2}");
  CHECK(embed(r) == testing::nc_commutator(embed(Word::node(x3, x2)), Parity::Even, embed(x1),
                                           Parity::Even));

  Alphabet s = Alphabet::from_list({{"th", Parity::Odd}});
  Word th = Word::leaf(s[1]);
  r = bracket_M(th, th);
  CHECK(r.size() == 1);
  CHECK(r.coeff(Word::node(th, th)) == 1);
  CHECK(in_M(Word::node(th, th)));
  CHECK(is_odd_square(Word::node(th, th)));
}

TEST_CASE("bracket_M matches the supercommutator in the free associative superalgebra") {
  Alphabet a = Alphabet::from_list({{"x", Parity::Even}, {"y", Parity::Even}, {"t", Parity::Odd}});
  auto ws = all_M(a, 3);
  for (Word u : ws)
    for (Word v : ws) {
      LieCombination r = bracket_M(u, v);
      CHECK(embed(r) == testing::nc_commutator(embed(u), u.parity(), embed(v), v.parity()));
      MultiDegree d = u.multidegree() + v.multidegree();
      for (const auto &[w, c] : r.terms()) {
        CHECK(in_M(w));
        CHECK(w.multidegree() == d);
        CHECK(w.parity() == u.parity() + v.parity());
      }
      // super-anticommutativity
      LieCombination s = bracket_M(v, u);
      s.add(r, sign(u.parity(), v.parity()));
      CHECK(s.empty());
    }
}

TEST_CASE("super-Jacobi for generators and length-2 M elements") {
  Alphabet a = Alphabet::from_list({{"x", Parity::Even}, {"y", Parity::Even}, {"t", Parity::Odd}});
  std::vector<Word> ws;
  for (const auto &d : degrees_up_to(a, 2))
    for (Word w : enumerate_M(d, a))
      ws.push_back(w);
  for (Word x : ws)
    for (Word y : ws)
      for (Word z : ws) {
        auto X = LieCombination::single(x), Y = LieCombination::single(y),
             Z = LieCombination::single(z);
        LieCombination lhs = bracket_M(X, bracket_M(Y, Z));
        lhs.add(bracket_M(bracket_M(X, Y), Z), -1);
        lhs.add(bracket_M(Y, bracket_M(X, Z)), -sign(x.parity(), y.parity()));
        CHECK(lhs.empty());
      }
}

TEST_CASE("enumerate_M examples") {
  Alphabet a = testing::even_alphabet(3);
  MultiDegree d;
  d.add(1);
  d.add(2);
  auto m = enumerate_M(d, a);
  REQUIRE(m.size() == 1);
  CHECK(m[0].to_string(a) == "{x2,x1}");
  d.add(3);
  CHECK(enumerate_M(d, a).size() == 2);
  MultiDegree u;
  u.add(0);
  u.add(1);
  m = enumerate_M(u, a);
  REQUIRE(m.size() == 1);
  CHECK(m[0].to_string(a) == "{x1,1}");
}

TEST_CASE("multilinear M has (n-1)! elements, matching brute-force bracketings") {
  Alphabet a = testing::even_alphabet(5);
  std::size_t fact = 1;
  for (int n = 1; n <= 5; ++n) {
    if (n > 1)
      fact *= static_cast<std::size_t>(n - 1);
    MultiDegree d;
    for (GenId g = 1; g <= static_cast<GenId>(n); ++g)
      d.add(g);
    auto m = enumerate_M(d, a);
    CHECK(m.size() == fact);
    CHECK(std::is_sorted(m.begin(), m.end(), MLess{}));
    std::vector<NCPoly> rows;
    for (Word w : m)
      rows.push_back(embed(w));
    CHECK(testing::rank_of(rows) == m.size());
    if (n <= 4)
      CHECK(brute_force_lie_dim(a, n) == fact);
  }
}

TEST_CASE("M is a basis in mixed parity, including odd squares") {
  Alphabet a = Alphabet::from_list({{"x", Parity::Even}, {"t", Parity::Odd}, {"s", Parity::Odd}});
  for (const auto &d : degrees_up_to(a, 4)) {
    auto m = enumerate_M(d, a);
    std::vector<NCPoly> rows;
    for (Word w : m)
      rows.push_back(embed(w));
    CHECK(testing::rank_of(rows) == m.size());
    // every bracket of two M elements stays inside the span of this degree
    std::set<Word, MLess> inside(m.begin(), m.end());
    for (const auto &d1 : degrees_up_to(a, 3))
      if (d1.divides(d) && !(d1 == d))
        for (Word u : enumerate_M(d1, a))
          for (Word v : enumerate_M(d - d1, a)) {
            LieCombination r = bracket_M(u, v);
            for (const auto &[w, c] : r.terms())
              CHECK(inside.count(w) == 1);
          }
  }
}
