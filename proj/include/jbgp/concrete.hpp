#pragma once

// Finite-dimensional superalgebras given by structure constants, term
// evaluation, exhaustive identity checking and the built-in examples.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jbgp/core.hpp"

namespace jbgp {

using Vector = std::vector<Scalar>;
/// Sparse row: (basis index, coefficient), indices ascending, no zeros.
using Row = std::vector<std::pair<std::size_t, Scalar>>;

enum class Claim { None, Poisson, GenP, JB, GP };

const char *claim_name(Claim c);
Claim parse_claim(const std::string &text);

class StructureAlgebra {
public:
  StructureAlgebra() = default;
  StructureAlgebra(std::vector<Parity> parity, Claim claim);

  std::size_t dim() const { return parity_.size(); }
  const std::vector<Parity> &parity() const { return parity_; }
  Parity parity(std::size_t i) const { return parity_.at(i); }
  Claim claim() const { return claim_; }
  void set_claim(Claim c) { claim_ = c; }
  const std::string &name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const std::vector<std::string> &basis_names() const { return names_; }
  void set_basis_names(std::vector<std::string> names);
  std::string basis_name(std::size_t i) const;

  const std::optional<Vector> &unit() const { return unit_; }
  void set_unit(Vector u);

  void set_product(std::size_t i, std::size_t j, Row row);
  void set_bracket(std::size_t i, std::size_t j, Row row);
  const Row &product(std::size_t i, std::size_t j) const { return product_.at(i * dim() + j); }
  const Row &bracket(std::size_t i, std::size_t j) const { return bracket_.at(i * dim() + j); }
  bool has_bracket() const { return has_bracket_; }

  Vector zero() const { return Vector(dim(), Scalar(0)); }
  Vector basis(std::size_t i) const;
  Vector mul(const Vector &a, const Vector &b) const;
  Vector br(const Vector &a, const Vector &b) const;
  /// D(a) = {a, 1}; throws Precondition without a unit.
  Vector d(const Vector &a) const;

  /// Parity of a nonzero homogeneous vector; nullopt if mixed or zero.
  std::optional<Parity> parity_of(const Vector &v) const;

private:
  Vector apply(const std::vector<Row> &table, const Vector &a, const Vector &b) const;
  void check_row(const Row &row) const;

  std::vector<Parity> parity_;
  Claim claim_ = Claim::None;
  std::string name_;
  std::vector<std::string> names_;
  std::optional<Vector> unit_;
  std::vector<Row> product_;
  std::vector<Row> bracket_;
  bool has_bracket_ = false;
};

bool is_zero(const Vector &v);
Vector add(const Vector &a, const Vector &b, const Scalar &c = 1); // a + c b
Vector scale(const Vector &a, const Scalar &c);
std::string vector_to_string(const Vector &v, const StructureAlgebra &A);

struct CheckResult {
  std::string identity;
  bool pass = true;
  std::vector<std::size_t> indices;
  std::vector<int> parities;
  Vector residual;
  std::string note;
};

struct Report {
  std::string subject;
  std::vector<CheckResult> checks;
  bool pass() const;
  const CheckResult *find(const std::string &identity) const;
};

/// Checks the identities named by the claim on all basis tuples.
Report validate(const StructureAlgebra &A);

/// Individual checks (first failing basis tuple is the witness).
CheckResult check_grading(const StructureAlgebra &A);
CheckResult check_supercommutative(const StructureAlgebra &A);
CheckResult check_associative(const StructureAlgebra &A);
CheckResult check_unit(const StructureAlgebra &A);
CheckResult check_anticommutative(const StructureAlgebra &A);
CheckResult check_jo1(const StructureAlgebra &A);
CheckResult check_jacobi(const StructureAlgebra &A);
CheckResult check_kmtojd2(const StructureAlgebra &A);
CheckResult check_gpident(const StructureAlgebra &A);
/// ({{a,b},c} - (-1)^{|b||c|}{{a,c},b} - {a,{b,c}}) d = 0 on basis tuples.
CheckResult check_jordan_gp(const StructureAlgebra &A);

struct EvalBindings {
  std::map<GenId, Vector> generators;
  std::map<std::string, Vector> vars;
};

/// Algebra homomorphism from raw terms; the unit generator maps to the unit.
Vector evaluate(const Term &t, const EvalBindings &bindings, const StructureAlgebra &A);

/// Degree of each Var; throws NonHomogeneous if a sum mixes degrees.
std::map<std::string, std::uint32_t> var_degrees(const Term &t);

struct IdentityResult {
  bool holds = true;
  std::size_t evaluations = 0;
  /// Basis index per linearized slot (name#k for repeated variables).
  std::map<std::string, std::size_t> witness;
  Vector residual;
};

/// Exhaustive check over basis vectors after full linearization of every
/// repeated variable. Generator leaves may be fixed through `fixed`.
IdentityResult is_identity(const Term &t, const StructureAlgebra &A,
                           const std::map<GenId, Vector> &fixed = {});

/// Q[t]/(t^m), D = t d/dt, {a,b} = D(a)b - aD(b).
StructureAlgebra builtin_wronskian(int m);
/// Same construction on Q[t]/(t^m) tensor the Grassmann algebra in one odd
/// letter, D the total-degree Euler derivation.
StructureAlgebra builtin_super_wronskian(int m);
/// Zero product, given anticommutative bracket; claim GP.
StructureAlgebra builtin_zero_mul_anticommutative(const std::vector<Parity> &parity,
                                                  const std::map<std::pair<std::size_t, std::size_t>, Row> &bracket);
/// 3-dimensional anticommutative non-Lie table with zero product.
StructureAlgebra builtin_zero_mul_example();
/// Q[t]/(t^m) with zero bracket; claim Poisson.
StructureAlgebra builtin_zero_bracket_poisson(int m);
/// Grassmann algebra in n odd letters with {f,g} = (-1)^{|f|} sum df/dxi dg/dxi.
StructureAlgebra builtin_grassmann_poisson(int n);
/// Q[x,y,z]/m^4 with a quadratic bivector plus twice the Euler Wronskian:
/// generalized Poisson, not a Jordan bracket.
StructureAlgebra builtin_contact();
/// The same bivector alone: unital generic Poisson without Jacobi.
StructureAlgebra builtin_bivector_gp();
/// {a,b}' = {a,b} - (a E(b) - E(a) b) with E = D; claim JB.
StructureAlgebra untwist_algebra(const StructureAlgebra &A);

std::vector<std::string> builtin_names();
StructureAlgebra builtin_by_name(const std::string &name);

} // namespace jbgp
