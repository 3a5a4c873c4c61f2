#pragma once

// Customary polynomials and the reduction of an identity of a unital
// generalized Poisson algebra to customary form. Everything here is
// non-super: odd generators are rejected.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jbgp/engine.hpp"

namespace jbgp {

/// coeff * prod <x_p, x_q> * prod D(x_s); pairs have p < q, indices 1-based.
struct CustomaryTerm {
  Scalar coeff;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> singles;
};

class CustomaryPolynomial {
public:
  CustomaryPolynomial() = default;
  explicit CustomaryPolynomial(int m) : m_(m) {}

  int m() const { return m_; }
  /// Canonicalizes (orients pairs, sorts, merges) and checks that the pairs
  /// and singles partition {1..m}.
  void add(Scalar coeff, std::vector<std::pair<int, int>> pairs, std::vector<int> singles);
  const std::vector<CustomaryTerm> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Generator for index i (1-based). Defaults to generator id i.
  GenId letter(int i) const;
  const std::vector<GenId> &letters() const { return letters_; }
  void set_letters(std::vector<GenId> letters);

  std::string to_string(const Alphabet &alphabet) const;

  friend bool operator==(const CustomaryPolynomial &a, const CustomaryPolynomial &b);

private:
  int m_ = 0;
  std::vector<CustomaryTerm> terms_;
  std::vector<GenId> letters_;
};

/// A GenP element together with the generators treated as identity letters.
struct PoissonPolynomial {
  Element f{Theory::GenP};
  std::vector<GenId> vars;
};

/// {a,b} - (D(a) b - a D(b)).
Element angle_bracket(const Element &a, const Element &b);
/// {...{x_1, x_2}, ..., x_n}; a single element is returned unchanged.
Element leftnormed(const std::vector<Element> &xs);
/// {yz, w_1, ..., w_n} as a sum over distributions of the w's into a y-block,
/// a z-block and blocks opened by 1.
Element lemma41_expand(const Element &y, const Element &z, const std::vector<Element> &ws);

/// f(yz) - y f(z) - z f(y) in the letter x; y and z replace x in `vars`.
PoissonPolynomial delta(const PoissonPolynomial &f, GenId x, GenId y, GenId z);
/// Adds the two fresh letters x', x'' to the alphabet and applies delta.
PoissonPolynomial delta(const PoissonPolynomial &f, GenId x, Alphabet &alphabet);
bool is_derivation_in(const PoissonPolynomial &f, GenId x);

/// Largest generator-length of the factor holding x (D(x) counts 2), 1 for
/// a bare x, 0 if x does not occur.
int x_height(const Element &f, GenId x);

/// f = x T + D(x) T0 + sum {x, x_i} T_i.
struct Decomposition {
  Element t{Theory::GenP};
  Element t0{Theory::GenP};
  std::map<GenId, Element> ti;
};
Decomposition decompose(const Element &f, GenId x);

struct TraceStep {
  std::string step;
  PoissonPolynomial g;
  std::string note;
};

struct FarkasResult {
  CustomaryPolynomial result;
  std::vector<TraceStep> trace;
  /// Identities split off in the last step (coefficients of bare letters).
  std::vector<Element> discharged;
};

/// Runs the three steps; throws Degenerate if the polynomial collapses to 0
/// and Limit if a height-reducing step fails to reduce.
FarkasResult farkas_reduce(const PoissonPolynomial &g0, Alphabet &alphabet);

Element customary_to_element(const CustomaryPolynomial &c);

/// [u1;u2;w1;w2], equal to w1 w2 <u1,u2>.
Element pair_macro(const Element &u1, const Element &u2, const Element &w1, const Element &w2);
/// {t1;t2;t3} = {t2t3,t1} - {t2,t1}t3 - {t3,t1}t2, equal to D(t1) t2 t3.
Element single_macro(const Element &t1, const Element &t2, const Element &t3);
/// The identity built from c with the macros and 2m extra letters zs.
Element corollary_expand(const CustomaryPolynomial &c, const std::vector<GenId> &zs);

/// Identity-mode term: every letter of `vars` becomes a Var named after it.
Term to_identity_term(const PoissonPolynomial &p, const Alphabet &alphabet);

} // namespace jbgp
