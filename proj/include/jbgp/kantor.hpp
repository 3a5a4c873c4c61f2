#pragma once

// Kantor double K(A) = A + Ax and two independent Jordan-ness checks.

#include "jbgp/concrete.hpp"
#include "jbgp/engine.hpp"

namespace jbgp {

/// a + b x over the free engine.
struct DoubleElement {
  Element a;
  Element b;
};

/// a + b x over a structure algebra.
struct DoubleVector {
  Vector a;
  Vector b;
};

DoubleElement double_mul(const DoubleElement &p, const DoubleElement &q);
DoubleVector double_mul(const StructureAlgebra &A, const DoubleVector &p, const DoubleVector &q);

/// The double as a supercommutative algebra of dimension 2 dim(A); basis
/// e_0..e_{d-1} followed by e_0 x..e_{d-1} x.
StructureAlgebra double_of(const StructureAlgebra &A);

/// The three identities over all basis 4-tuples.
Report jorskob_check(const StructureAlgebra &A);
/// The three identities in the free engine on four distinct generators, for
/// all 16 parity patterns.
Report jorskob_check_free(Theory th);

/// Linearized super-Jordan identity over basis tuples of a supercommutative
/// algebra; throws Precondition (with the witness pair) otherwise.
Report super_jordan_check(const StructureAlgebra &J, bool exhaustive = false);

} // namespace jbgp
