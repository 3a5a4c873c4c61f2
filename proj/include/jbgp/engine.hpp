#pragma once

// Free unital GenP / JB superalgebras (and free GP, which shares the
// representation) in the basis U of sorted products of basis words.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "jbgp/core.hpp"
#include "jbgp/liebasis.hpp"

namespace jbgp {

enum class Theory { GenP, JB, GP };

const char *theory_name(Theory th);
Theory parse_theory(const std::string &text);

struct Factor {
  Word word;
  std::uint32_t exp = 1;
  friend bool operator==(const Factor &, const Factor &) = default;
};

/// e_1^{k_1} ... e_n^{k_n}, factors strictly ascending in the M-order.
/// The empty product is the unit.
class Monomial {
public:
  Monomial() = default;
  static Monomial of(Word w, std::uint32_t exp = 1);
  /// Takes factors already in canonical order; throws if they are not.
  static Monomial from_factors(std::vector<Factor> factors);

  bool is_unit() const { return factors_.empty(); }
  const std::vector<Factor> &factors() const { return factors_; }
  std::uint32_t deg_e() const;
  Parity parity() const;
  MultiDegree multidegree() const;
  /// Generator-length of all factors, with multiplicity.
  std::uint32_t length() const;
  /// Removes one copy of factor i.
  Monomial without_one(std::size_t i) const;

  std::string to_string(const Alphabet &alphabet) const;

  friend bool operator==(const Monomial &, const Monomial &) = default;

private:
  std::vector<Factor> factors_;
};

/// Canonical monomial order: by length, then by factor lists.
struct MonomialLess {
  bool operator()(const Monomial &a, const Monomial &b) const;
};

class Element {
public:
  using Terms = std::map<Monomial, Scalar, MonomialLess>;

  explicit Element(Theory th = Theory::GenP) : theory_(th) {}
  static Element zero(Theory th) { return Element(th); }
  static Element unit(Theory th);
  static Element word(Theory th, Word w, const Scalar &c = 1);
  static Element monomial(Theory th, const Monomial &m, const Scalar &c = 1);
  static Element generator(Theory th, const Generator &g);

  Theory theory() const { return theory_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Scalar coeff(const Monomial &m) const;

  void add(const Monomial &m, const Scalar &c);
  void add(const Element &other, const Scalar &c = 1);

  /// Parity shared by all monomials; throws UndefinedParity if mixed.
  /// The zero element is even.
  Parity parity() const;
  bool is_homogeneous() const;

  Element operator+(const Element &o) const;
  Element operator-(const Element &o) const;
  Element operator-() const;
  friend Element operator*(const Scalar &c, const Element &e);

  friend bool operator==(const Element &a, const Element &b) {
    return a.theory_ == b.theory_ && a.terms_ == b.terms_;
  }

  std::string to_string(const Alphabet &alphabet) const;

private:
  Theory theory_;
  Terms terms_;
};

Element mul(const Element &a, const Element &b);
Element bracket(const Element &a, const Element &b);
/// D(a) = {a,1}.
Element d_op(const Element &a);

Element mul(const Monomial &a, const Monomial &b, Theory th);
Element bracket(const Monomial &a, const Monomial &b, Theory th);
/// Bracket of two single words in the given theory.
Element bracket_words(Word u, Word v, Theory th);

Element normal_form(const Term &t, Theory th);

using BracketFn = std::function<Element(const Element &, const Element &)>;
using UnaryFn = std::function<Element(const Element &)>;

/// {a,b} + 1/2 (a D(b) - D(a) b) for the free JB bracket.
Element d_twist_bracket(const Element &a, const Element &b);
/// {a,b}' = br(a,b) + 1/2 (a D(b) - D(a) b) for any bracket/derivation pair.
Element twist_bracket(const Element &a, const Element &b, const BracketFn &br, const UnaryFn &d);
/// br(a,b) - (a E(b) - E(a) b). E is spot-checked as a derivation on the
/// factors of a and b and on 1; a failure throws NotADerivation.
Element untwist_bracket(const Element &a, const Element &b, const BracketFn &br,
                        const UnaryFn &e);
/// Throws NotADerivation unless E(1) = 0 and E(fg) = E(f)g + fE(g) on all
/// pairs drawn from `probes`.
void check_derivation(const UnaryFn &e, const std::vector<Element> &probes, Theory th);

/// Basis words of exactly multidegree d: the set M for GenP/JB, oriented
/// bracket words without the unit letter for GP.
std::vector<Word> enumerate_atoms(const MultiDegree &d, const Alphabet &alphabet, Theory th);
/// Every basis monomial of exactly multidegree d (unit letters counted).
std::vector<Monomial> enumerate_basis(const MultiDegree &d, const Alphabet &alphabet, Theory th);
/// Size of the multilinear component in 1, x_1, ..., x_n (all even).
std::size_t dim_multilinear(int n, Theory th);

using Bindings = std::map<std::string, Element>;
/// Evaluates a term whose Var leaves are replaced by homogeneous elements.
Element substitute(const Term &t, const Bindings &bindings, Theory th);
/// Ring map sending generator id -> image; unit goes to unit.
Element substitute_generators(const Element &e, const std::map<GenId, Element> &images);

/// Rebuilds a raw term from an element (used to feed elements back into
/// evaluation and printing round-trips).
Term to_term(const Element &e);
Term to_term(Word w);

/// Largest total multidegree among monomials; guards against runaway inputs.
std::uint32_t max_length(const Element &e);

} // namespace jbgp
