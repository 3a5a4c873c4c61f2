#pragma once

// Free generic Poisson superalgebra (Leibniz + anticommutativity, no Jacobi),
// the Jacobian defect and the three identities that characterize Jordan
// Kantor doubles.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "jbgp/core.hpp"
#include "jbgp/engine.hpp"

namespace jbgp {

using GPElement = Element;

/// Normal form in free GP: Leibniz without a D-term, oriented brackets.
GPElement gp_normal_form(const Term &t);

/// {{a,b},c} - (-1)^{|b||c|}{{a,c},b} - {a,{b,c}} in GP normal form.
GPElement jacobi_defect(const Term &a, const Term &b, const Term &c);
GPElement jacobi_defect(const GPElement &a, const GPElement &b, const GPElement &c);

/// Operations needed to state the identities: product, bracket and integer
/// linear combinations.
template <class V> struct JorskobOps {
  std::function<V(const V &, const V &)> mul;
  std::function<V(const V &, const V &)> br;
  std::function<V(const std::vector<std::pair<int, V>> &)> lin;
};

/// LHS - RHS of identity `which` (1, 2 or 3) for f, h, g, k of parities
/// pi, pk, pj, pl respectively.
template <class V>
V jorskob_residual(int which, const V &f, const V &h, const V &g, const V &k, Parity pi,
                   Parity pk, Parity pj, Parity pl, const JorskobOps<V> &op) {
  const int s1 = sign(pi + pj, pl); // (-1)^{(i+j)l}
  const int s2 = sign(pk + pj, pi); // (-1)^{(k+j)i}
  const int s3 = sign(pl + pj, pk); // (-1)^{(l+j)k}
  const auto &M = op.mul;
  const auto &B = op.br;
  switch (which) {
  case 2: {
    V hk = M(h, k), kf = M(k, f);
    return op.lin({{s2, M(B(hk, g), f)}, {-s2, M(hk, B(g, f))},
                   {-s3, M(B(kf, g), h)}, {s3, M(kf, B(g, h))}});
  }
  case 3: {
    V fh = M(f, h), hk = M(h, k), kf = M(k, f);
    return op.lin({{s1, B(M(fh, g), k)}, {-s1, M(fh, B(g, k))},
                   {-s2, M(B(hk, g), f)}, {s2, B(hk, M(g, f))},
                   {-s3, M(B(kf, g), h)}, {s3, B(kf, M(g, h))}});
  }
  case 1: {
    V fh = B(f, h), hk = B(h, k), kf = B(k, f);
    return op.lin({{s1, B(M(fh, g), k)}, {s2, B(M(hk, g), f)}, {s3, B(M(kf, g), h)},
                   {-s1, M(fh, B(g, k))}, {-s2, M(hk, B(g, f))}, {-s3, M(kf, B(g, h))}});
  }
  default:
    throw Error(ErrorKind::Precondition, "jorskob identity index must be 1, 2 or 3");
  }
}

JorskobOps<Element> engine_ops();

/// Residual of identity `which` in free GP for generator-like inputs.
GPElement jorskob_residual(int which, const Term &f, const Term &h, const Term &g, const Term &k);

/// Coefficients c with sum c_i * candidates[i] == target, if any (exact
/// Gaussian elimination over Q on the monomial coordinates).
std::optional<std::vector<Scalar>> solve_in_span(const Element &target,
                                                 const std::vector<Element> &candidates);

/// Candidates jacobi_defect(a,b,c) * d over all orderings of the four inputs.
std::vector<GPElement> jacobi_defect_patterns(const GPElement &f, const GPElement &h,
                                              const GPElement &g, const GPElement &k);

} // namespace jbgp
