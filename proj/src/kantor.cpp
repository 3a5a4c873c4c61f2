#include "jbgp/kantor.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "jbgp/genericpoisson.hpp"

namespace jbgp {

namespace {

std::pair<Element, Element> split_parity(const Element &e) {
  Element even(e.theory()), odd(e.theory());
  for (const auto &[m, c] : e.terms())
    (is_odd(m.parity()) ? odd : even).add(m, c);
  return {even, odd};
}

std::pair<Vector, Vector> split_parity(const StructureAlgebra &A, const Vector &v) {
  Vector even = A.zero(), odd = A.zero();
  for (std::size_t i = 0; i < v.size(); ++i)
    (is_odd(A.parity(i)) ? odd : even)[i] = v[i];
  return {even, odd};
}

} // namespace

DoubleElement double_mul(const DoubleElement &p, const DoubleElement &q) {
  const Theory th = p.a.theory();
  for (const Element *e : {&p.b, &q.a, &q.b})
    if (e->theory() != th)
      throw Error(ErrorKind::TheoryMismatch, "double elements over different algebras");
  DoubleElement r{mul(p.a, q.a), mul(p.a, q.b)};
  auto [qa0, qa1] = split_parity(q.a);
  auto [qb0, qb1] = split_parity(q.b);
  // ax * b = (-1)^{|b|} (ab) x
  r.b.add(mul(p.b, qa0));
  r.b.add(mul(p.b, qa1), -1);
  // ax * bx = (-1)^{|b|} {a,b}
  r.a.add(bracket(p.b, qb0));
  r.a.add(bracket(p.b, qb1), -1);
  return r;
}

DoubleVector double_mul(const StructureAlgebra &A, const DoubleVector &p, const DoubleVector &q) {
  DoubleVector r{A.mul(p.a, q.a), A.mul(p.a, q.b)};
  auto [qa0, qa1] = split_parity(A, q.a);
  auto [qb0, qb1] = split_parity(A, q.b);
  r.b = add(r.b, A.mul(p.b, qa0));
  r.b = add(r.b, A.mul(p.b, qa1), -1);
  r.a = add(r.a, A.br(p.b, qb0));
  r.a = add(r.a, A.br(p.b, qb1), -1);
  return r;
}

StructureAlgebra double_of(const StructureAlgebra &A) {
  const std::size_t d = A.dim();
  std::vector<Parity> par(2 * d);
  std::vector<std::string> names(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    par[i] = A.parity(i);
    par[d + i] = A.parity(i) + Parity::Odd;
    names[i] = A.basis_name(i);
    names[d + i] = A.basis_name(i) + "x";
  }
  StructureAlgebra K(par, Claim::None);
  K.set_basis_names(names);
  K.set_name("K(" + A.name() + ")");
  auto to_row = [&](const DoubleVector &v) {
    Row row;
    for (std::size_t k = 0; k < d; ++k)
      if (v.a[k] != 0)
        row.emplace_back(k, v.a[k]);
    for (std::size_t k = 0; k < d; ++k)
      if (v.b[k] != 0)
        row.emplace_back(d + k, v.b[k]);
    return row;
  };
  auto elem = [&](std::size_t i) {
    return i < d ? DoubleVector{A.basis(i), A.zero()} : DoubleVector{A.zero(), A.basis(i - d)};
  };
  for (std::size_t i = 0; i < 2 * d; ++i)
    for (std::size_t j = 0; j < 2 * d; ++j)
      K.set_product(i, j, to_row(double_mul(A, elem(i), elem(j))));
  if (A.unit()) {
    Vector u(2 * d, Scalar(0));
    for (std::size_t k = 0; k < d; ++k)
      u[k] = (*A.unit())[k];
    K.set_unit(u);
  }
  return K;
}

namespace {

// Sparse arithmetic on rows; the basis tuples of the checks below stay
// very sparse, so this is much cheaper than dense vectors.
Row to_row(std::map<std::size_t, Scalar> acc) {
  Row r;
  for (auto &[k, x] : acc)
    if (x != 0)
      r.emplace_back(k, std::move(x));
  return r;
}

Row apply(const StructureAlgebra &A, bool bracket, const Row &a, const Row &b) {
  std::map<std::size_t, Scalar> acc;
  for (const auto &[i, x] : a)
    for (const auto &[j, y] : b) {
      const Row &t = bracket ? A.bracket(i, j) : A.product(i, j);
      if (t.empty())
        continue;
      Scalar c = x * y;
      for (const auto &[k, z] : t)
        acc[k] += c * z;
    }
  return to_row(std::move(acc));
}

Row combine(const std::vector<std::pair<int, Row>> &terms) {
  std::map<std::size_t, Scalar> acc;
  for (const auto &[c, r] : terms)
    for (const auto &[k, x] : r)
      acc[k] += c * x;
  return to_row(std::move(acc));
}

Vector to_vector(const StructureAlgebra &A, const Row &r) {
  Vector v = A.zero();
  for (const auto &[k, x] : r)
    v[k] = x;
  return v;
}

JorskobOps<Row> row_ops(const StructureAlgebra &A) {
  JorskobOps<Row> op;
  op.mul = [&A](const Row &a, const Row &b) { return apply(A, false, a, b); };
  op.br = [&A](const Row &a, const Row &b) { return apply(A, true, a, b); };
  op.lin = combine;
  return op;
}

// Runs `body(i)` for i in [0, n) on a few threads.
template <class F> void parallel_for(std::size_t n, F body) {
  unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;)
        body(i);
    });
  for (auto &t : pool)
    t.join();
}

// Keeps the failure with the smallest outer index, so reports do not depend
// on thread scheduling: within one outer index the scan order is fixed.
struct Witness {
  std::mutex mutex;
  std::atomic<std::size_t> best{SIZE_MAX};
  CheckResult result;

  bool skip(std::size_t outer) const { return outer > best.load(); }
  void offer(std::size_t outer, CheckResult r) {
    std::lock_guard lock(mutex);
    if (outer < best) {
      best = outer;
      result = std::move(r);
    }
  }
  bool found() const { return best.load() != SIZE_MAX; }
};

} // namespace

Report jorskob_check(const StructureAlgebra &A) {
  Report rep;
  rep.subject = A.name();
  const std::size_t d = A.dim();
  auto op = row_ops(A);
  std::vector<Row> e;
  for (std::size_t i = 0; i < d; ++i)
    e.push_back({{i, Scalar(1)}});
  for (int which : {2, 3, 1}) {
    Witness w;
    parallel_for(d, [&](std::size_t f) {
      for (std::size_t h = 0; h < d && !w.skip(f); ++h)
        for (std::size_t g = 0; g < d; ++g)
          for (std::size_t k = 0; k < d; ++k) {
            Row r = jorskob_residual<Row>(which, e[f], e[h], e[g], e[k], A.parity(f),
                                                A.parity(h), A.parity(g), A.parity(k), op);
            if (!r.empty()) {
              CheckResult c{"jorskob" + std::to_string(which), false, {f, h, g, k},
                            {bit(A.parity(f)), bit(A.parity(h)), bit(A.parity(g)), bit(A.parity(k))},
                            to_vector(A, r), ""};
              w.offer(f, c);
              return;
            }
          }
    });
    rep.checks.push_back(w.found() ? w.result : CheckResult{"jorskob" + std::to_string(which)});
  }
  return rep;
}

Report jorskob_check_free(Theory th) {
  Report rep;
  rep.subject = std::string("free ") + theory_name(th);
  auto op = engine_ops();
  for (int which : {2, 3, 1}) {
    CheckResult c{"jorskob" + std::to_string(which)};
    for (int mask = 0; mask < 16 && c.pass; ++mask) {
      std::array<Parity, 4> p;
      std::array<Element, 4> x;
      for (int i = 0; i < 4; ++i) {
        p[static_cast<std::size_t>(i)] = (mask >> i & 1) ? Parity::Odd : Parity::Even;
        x[static_cast<std::size_t>(i)] =
            Element::word(th, Word::leaf(static_cast<GenId>(i + 1), p[static_cast<std::size_t>(i)]));
      }
      Element r = jorskob_residual<Element>(which, x[0], x[1], x[2], x[3], p[0], p[1], p[2], p[3], op);
      if (!r.is_zero()) {
        c.pass = false;
        c.indices = {1, 2, 3, 4};
        c.parities = {bit(p[0]), bit(p[1]), bit(p[2]), bit(p[3])};
        c.note = r.to_string(Alphabet::from_list({{"f", p[0]}, {"h", p[1]}, {"g", p[2]}, {"k", p[3]}}));
      }
    }
    rep.checks.push_back(c);
  }
  return rep;
}

Report super_jordan_check(const StructureAlgebra &J, bool exhaustive) {
  if (auto c = check_supercommutative(J); !c.pass)
    throw Error(ErrorKind::Precondition,
                "super-Jordan check needs a supercommutative algebra; fails at (" +
                    J.basis_name(c.indices[0]) + ", " + J.basis_name(c.indices[1]) + ")");
  Report rep;
  rep.subject = J.name();
  const std::size_t d = J.dim();
  auto mul = [&J](const Row &a, const Row &b) { return apply(J, false, a, b); };
  std::vector<Row> e;
  for (std::size_t i = 0; i < d; ++i)
    e.push_back({{i, Scalar(1)}});
  // reference order (x, y, z, t) = positions 0..3
  static const std::array<std::array<std::size_t, 4>, 3> seq = {{{0, 2, 1, 3}, {0, 3, 1, 2}, {2, 3, 1, 0}}};
  Witness w;
  parallel_for(d, [&](std::size_t x) {
    for (std::size_t z = exhaustive ? 0 : x; z < d && !w.skip(x); ++z)
      for (std::size_t t = exhaustive ? 0 : z; t < d; ++t)
        for (std::size_t y = 0; y < d; ++y) {
          std::array<std::size_t, 4> idx{x, y, z, t};
          std::array<Parity, 4> par{J.parity(x), J.parity(y), J.parity(z), J.parity(t)};
          auto v = [&](std::size_t pos) -> const Row & { return e[idx[pos]]; };
          std::vector<std::pair<int, Row>> terms;
          for (const auto &s : seq) {
            int sg = koszul_sign(par, s);
            // ((ab)y)c and (ab)(yc) for the letter sequence a b y c
            Row ab = mul(v(s[0]), v(s[1]));
            terms.emplace_back(sg, mul(mul(ab, v(s[2])), v(s[3])));
            terms.emplace_back(-sg, mul(ab, mul(v(s[2]), v(s[3]))));
          }
          Row res = combine(terms);
          if (!res.empty()) {
            CheckResult c{"super-jordan", false, {x, y, z, t},
                          {bit(par[0]), bit(par[1]), bit(par[2]), bit(par[3])}, to_vector(J, res), ""};
            w.offer(x, c);
            return;
          }
        }
  });
  rep.checks.push_back(w.found() ? w.result : CheckResult{"super-jordan"});
  return rep;
}

} // namespace jbgp
