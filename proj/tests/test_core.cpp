#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "jbgp/core.hpp"
#include "support.hpp"

using namespace jbgp;
using testing::bubble_sign;

namespace {

// Every shuffle of two blocks of sizes l and r, as merged index orders.
std::vector<std::vector<std::size_t>> shuffles(std::size_t l, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> pick(l + r, false);
  std::fill(pick.begin() + static_cast<long>(l), pick.end(), true);
  do {
    std::vector<std::size_t> order;
    std::size_t i = 0, j = l;
    for (bool from_right : pick)
      order.push_back(from_right ? j++ : i++);
    out.push_back(order);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

std::vector<Parity> parities(unsigned mask, std::size_t n) {
  std::vector<Parity> p;
  for (std::size_t i = 0; i < n; ++i)
    p.push_back((mask >> i) & 1 ? Parity::Odd : Parity::Even);
  return p;
}

} // namespace

TEST_CASE("scalars are canonical rationals printed as p/q") {
  CHECK(scalar_to_string(make_scalar(6, -4)) == "-3/2");
  CHECK(scalar_to_string(Scalar(0)) == "0/1");
  CHECK(parse_scalar("4/6") == make_scalar(2, 3));
  CHECK(parse_scalar("-7") == Scalar(-7));
  CHECK_THROWS_AS(parse_scalar("1/0"), Error);
  CHECK_THROWS_AS(parse_scalar("abc"), Error);
}

TEST_CASE("alphabet keeps the unit first and names unique") {
  Alphabet a = testing::mixed_alphabet();
  CHECK(a.size() == 5);
  CHECK(a.unit().is_unit);
  CHECK(a.unit().parity == Parity::Even);
  CHECK(a[4].parity == Parity::Odd);
  CHECK(*a.find("y") == 2);
  CHECK_FALSE(a.find("w"));
  CHECK(a.fresh_name("x") == "x'");
  CHECK_THROWS_AS(a.add("x", Parity::Even), Error);
}

TEST_CASE("term parity") {
  Alphabet a = testing::mixed_alphabet();
  Term x = Term::gen(a[1]), th = Term::gen(a[4]);
  CHECK(term_parity(x) == Parity::Even);
  CHECK(term_parity(Term::bracket(th, th)) == Parity::Even);
  CHECK(term_parity(Term::prod(x, th)) == Parity::Odd);
  CHECK_THROWS_AS(term_parity(Term::var("a")), Error);
  try {
    term_parity(Term::prod(x, Term::var("a")));
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::UndefinedParity);
  }

  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Term l = testing::random_term(rng, a, 1 + static_cast<int>(rng() % 4));
    Term r = testing::random_term(rng, a, 1 + static_cast<int>(rng() % 4));
    Parity expect = term_parity(l) + term_parity(r);
    CHECK(term_parity(Term::prod(l, r)) == expect);
    CHECK(term_parity(Term::bracket(l, r)) == expect);
  }
}

TEST_CASE("multidegree counts every occurrence, the unit included") {
  Alphabet a = testing::even_alphabet(2);
  Term x1 = Term::gen(a[1]), x2 = Term::gen(a[2]), one = Term::gen(a[0]);
  MultiDegree d = multidegree(Term::bracket(x1, one));
  CHECK(d[0] == 1);
  CHECK(d[1] == 1);
  CHECK(multidegree(Term::prod(x1, x1))[1] == 2);
  MultiDegree e = multidegree(Term::bracket(Term::bracket(x2, x1), x1));
  CHECK(e[1] == 2);
  CHECK(e[2] == 1);
  CHECK(e.total() == 3);

  std::mt19937 rng(11);
  Alphabet m = testing::mixed_alphabet();
  for (int i = 0; i < 200; ++i) {
    Term l = testing::random_term(rng, m, 1 + static_cast<int>(rng() % 4));
    Term r = testing::random_term(rng, m, 1 + static_cast<int>(rng() % 4));
    CHECK(multidegree(Term::prod(l, r)) == multidegree(l) + multidegree(r));
    CHECK(multidegree(Term::bracket(l, r)) == multidegree(l) + multidegree(r));
  }
}

TEST_CASE("koszul_merge_sign examples") {
  std::vector<Parity> e{Parity::Even}, o{Parity::Odd};
  std::vector<std::size_t> swap{1, 0}, keep{0, 1};
  CHECK(koszul_merge_sign(e, e, swap) == 1);
  CHECK(koszul_merge_sign(o, o, swap) == -1);
  CHECK(koszul_merge_sign(o, o, keep) == 1);
  std::vector<Parity> right{Parity::Odd, Parity::Even};
  std::vector<std::size_t> pass{1, 0, 2};
  CHECK(koszul_merge_sign(o, right, pass) == -1);
  std::vector<std::size_t> bad{2, 1, 0};
  CHECK_THROWS_AS(koszul_merge_sign(o, right, bad), Error);
}

TEST_CASE("koszul_merge_sign agrees with bubble sort on every shuffle up to length 6") {
  for (std::size_t l = 0; l <= 6; ++l)
    for (std::size_t r = 0; l + r <= 6; ++r)
      for (unsigned mask = 0; mask < (1u << (l + r)); ++mask) {
        auto p = parities(mask, l + r);
        std::vector<Parity> left(p.begin(), p.begin() + static_cast<long>(l));
        std::vector<Parity> right(p.begin() + static_cast<long>(l), p.end());
        for (const auto &order : shuffles(l, r)) {
          CHECK(koszul_merge_sign(left, right, order) == bubble_sign(p, order));
          CHECK(koszul_sign(p, order) == bubble_sign(p, order));
        }
      }
}

TEST_CASE("koszul_merge_sign composes across three blocks") {
  // Merging (A,B) first and then C gives the same sign as A with (B,C).
  for (std::size_t na = 1; na <= 2; ++na)
    for (std::size_t nb = 1; nb <= 2; ++nb)
      for (std::size_t nc = 1; na + nb + nc <= 6; ++nc) {
        std::size_t n = na + nb + nc;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
          auto p = parities(mask, n);
          std::vector<std::size_t> target(n);
          std::iota(target.begin(), target.end(), 0);
          // all interleavings that keep each block in order
          std::vector<int> block(n);
          for (std::size_t i = 0; i < n; ++i)
            block[i] = i < na ? 0 : (i < na + nb ? 1 : 2);
          std::vector<int> labels = block;
          do {
            std::size_t next[3] = {0, na, na + nb};
            std::vector<std::size_t> s;
            for (int b : labels)
              s.push_back(next[b]++);
            auto restrict_to = [&](auto pred) {
              std::vector<std::size_t> r;
              for (std::size_t i : s)
                if (pred(i))
                  r.push_back(i);
              return r;
            };
            auto slice = [&](std::size_t lo, std::size_t hi) {
              return std::vector<Parity>(p.begin() + static_cast<long>(lo),
                                         p.begin() + static_cast<long>(hi));
            };
            // path 1: (A B) then C
            auto ab = restrict_to([&](std::size_t i) { return i < na + nb; });
            Scalar s1 = koszul_merge_sign(slice(0, na), slice(na, na + nb), ab);
            std::vector<Parity> pab;
            for (std::size_t i : ab)
              pab.push_back(p[i]);
            std::vector<std::size_t> ord1;
            for (std::size_t i : s)
              ord1.push_back(i < na + nb
                                 ? static_cast<std::size_t>(std::find(ab.begin(), ab.end(), i) - ab.begin())
                                 : i);
            s1 *= koszul_merge_sign(pab, slice(na + nb, n), ord1);
            // path 2: A then (B C)
            auto bc = restrict_to([&](std::size_t i) { return i >= na; });
            std::vector<std::size_t> bc_local;
            for (std::size_t i : bc)
              bc_local.push_back(i - na);
            Scalar s2 = koszul_merge_sign(slice(na, na + nb), slice(na + nb, n), bc_local);
            std::vector<Parity> pbc;
            for (std::size_t i : bc)
              pbc.push_back(p[i]);
            std::vector<std::size_t> ord2;
            for (std::size_t i : s)
              ord2.push_back(i < na ? i
                                    : na + static_cast<std::size_t>(
                                               std::find(bc.begin(), bc.end(), i) - bc.begin()));
            s2 *= koszul_merge_sign(slice(0, na), pbc, ord2);
            CHECK(s1 == s2);
            CHECK(s1 == bubble_sign(p, s));
          } while (std::next_permutation(labels.begin(), labels.end()));
        }
      }
}
