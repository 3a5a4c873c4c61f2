#include "jbgp/genericpoisson.hpp"

#include <algorithm>
#include <array>

namespace jbgp {

GPElement gp_normal_form(const Term &t) { return normal_form(t, Theory::GP); }

GPElement jacobi_defect(const GPElement &a, const GPElement &b, const GPElement &c) {
  Element r = bracket(bracket(a, b), c);
  r.add(bracket(bracket(a, c), b), Scalar(-sign(b.parity(), c.parity())));
  r.add(bracket(a, bracket(b, c)), -1);
  return r;
}

GPElement jacobi_defect(const Term &a, const Term &b, const Term &c) {
  return jacobi_defect(gp_normal_form(a), gp_normal_form(b), gp_normal_form(c));
}

JorskobOps<Element> engine_ops() {
  JorskobOps<Element> op;
  op.mul = [](const Element &a, const Element &b) { return mul(a, b); };
  op.br = [](const Element &a, const Element &b) { return bracket(a, b); };
  op.lin = [](const std::vector<std::pair<int, Element>> &terms) {
    Element r(terms.empty() ? Theory::GP : terms.front().second.theory());
    for (const auto &[c, e] : terms)
      r.add(e, Scalar(c));
    return r;
  };
  return op;
}

GPElement jorskob_residual(int which, const Term &f, const Term &h, const Term &g, const Term &k) {
  return jorskob_residual<Element>(which, gp_normal_form(f), gp_normal_form(h), gp_normal_form(g),
                                   gp_normal_form(k), term_parity(f), term_parity(h),
                                   term_parity(g), term_parity(k), engine_ops());
}

std::optional<std::vector<Scalar>> solve_in_span(const Element &target,
                                                 const std::vector<Element> &candidates) {
  std::map<Monomial, std::size_t, MonomialLess> rows;
  auto index = [&](const Monomial &m) {
    auto [it, inserted] = rows.try_emplace(m, rows.size());
    return it->second;
  };
  for (const auto &c : candidates)
    for (const auto &[m, x] : c.terms())
      index(m);
  for (const auto &[m, x] : target.terms())
    index(m);

  const std::size_t n = candidates.size();
  std::vector<std::vector<Scalar>> a(rows.size(), std::vector<Scalar>(n + 1, Scalar(0)));
  for (std::size_t j = 0; j < n; ++j)
    for (const auto &[m, x] : candidates[j].terms())
      a[rows.at(m)][j] = x;
  for (const auto &[m, x] : target.terms())
    a[rows.at(m)][n] = x;

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < a.size(); ++col) {
    std::size_t p = r;
    while (p < a.size() && a[p][col] == 0)
      ++p;
    if (p == a.size())
      continue;
    std::swap(a[p], a[r]);
    Scalar inv = 1 / a[r][col];
    for (auto &x : a[r])
      x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][col] == 0)
        continue;
      Scalar f = a[i][col];
      for (std::size_t j = col; j <= n; ++j)
        a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < a.size(); ++i)
    if (a[i][n] != 0)
      return std::nullopt;
  std::vector<Scalar> x(n, Scalar(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i)
    x[pivot_col[i]] = a[i][n];
  return x;
}

std::vector<GPElement> jacobi_defect_patterns(const GPElement &f, const GPElement &h,
                                              const GPElement &g, const GPElement &k) {
  std::array<const GPElement *, 4> xs{&f, &h, &g, &k};
  std::array<int, 4> idx{0, 1, 2, 3};
  std::vector<GPElement> out;
  do {
    out.push_back(mul(jacobi_defect(*xs[idx[0]], *xs[idx[1]], *xs[idx[2]]), *xs[idx[3]]));
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

} // namespace jbgp
