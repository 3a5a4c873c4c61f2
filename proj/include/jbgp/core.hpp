#pragma once

// Graded alphabet, exact scalars, raw term trees and Koszul sign bookkeeping.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace jbgp {

/// Exact rational. mpq_class keeps itself canonical as long as every value
/// is built through make_scalar / arithmetic (never a raw non-canonical set).
using Scalar = mpq_class;

Scalar make_scalar(long num, long den = 1);
/// Accepts "p/q", "p", "-p/q". Throws Error on malformed input or q == 0.
Scalar parse_scalar(const std::string &text);
/// Always "p/q", e.g. "1/1", "-3/2".
std::string scalar_to_string(const Scalar &s);

enum class ErrorKind {
  UndefinedParity,
  NotAShuffle,
  TheoryMismatch,
  Parse,
  UnknownIdentifier,
  UnboundVariable,
  NonHomogeneous,
  Malformed,
  NotADerivation,
  Precondition,
  Degenerate,
  Limit,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

const char *error_kind_name(ErrorKind kind);

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<int>(a) ^ static_cast<int>(b));
}
inline Parity &operator+=(Parity &a, Parity b) { return a = a + b; }
inline bool is_odd(Parity p) { return p == Parity::Odd; }
inline int bit(Parity p) { return static_cast<int>(p); }

/// (-1)^{|a||b|}
inline int sign(Parity a, Parity b) {
  return (is_odd(a) && is_odd(b)) ? -1 : 1;
}

/// Parity of a product of `count` copies of something of parity p.
inline Parity power_parity(Parity p, std::uint32_t count) {
  return (is_odd(p) && (count % 2 == 1)) ? Parity::Odd : Parity::Even;
}

const char *parity_name(Parity p);
Parity parse_parity(const std::string &text);

using GenId = std::uint32_t;

struct Generator {
  GenId id = 0;
  std::string name;
  Parity parity = Parity::Even;
  bool is_unit = false;
};

/// Ordered generator list. Index 0 is always the unit "1"; declaration order
/// of the remaining generators is the order 1 < x_1 < ... < x_n.
class Alphabet {
public:
  Alphabet();

  /// Builds {1} followed by the listed generators, in order.
  static Alphabet from_list(const std::vector<std::pair<std::string, Parity>> &gens);

  GenId add(const std::string &name, Parity parity);
  /// Appends primes to `base` until the name is unused.
  std::string fresh_name(const std::string &base) const;

  std::size_t size() const { return gens_.size(); }
  const Generator &operator[](GenId id) const { return gens_.at(id); }
  const Generator &unit() const { return gens_.front(); }
  std::optional<GenId> find(const std::string &name) const;
  const std::vector<Generator> &generators() const { return gens_; }

private:
  std::vector<Generator> gens_;
};

/// Occurrence count per generator, unit included.
class MultiDegree {
public:
  MultiDegree() = default;
  static MultiDegree of(GenId g, std::uint32_t count = 1);

  std::uint32_t operator[](GenId g) const;
  void add(GenId g, std::uint32_t count = 1);
  std::uint32_t total() const;
  /// Total without the unit generator (id 0).
  std::uint32_t x_total() const;
  MultiDegree without_unit() const;
  bool empty() const { return counts_.empty(); }
  bool divides(const MultiDegree &other) const;

  MultiDegree operator+(const MultiDegree &o) const;
  MultiDegree operator-(const MultiDegree &o) const;
  auto operator<=>(const MultiDegree &) const = default;

  const std::map<GenId, std::uint32_t> &counts() const { return counts_; }
  std::string to_string(const Alphabet &alphabet) const;

private:
  std::map<GenId, std::uint32_t> counts_;
};

struct TermNode;

/// Raw expression over the two multiplications, before any reduction.
class Term {
public:
  static Term gen(const Generator &g);
  static Term prod(Term a, Term b);
  static Term bracket(Term a, Term b);
  static Term sum(std::vector<std::pair<Scalar, Term>> terms);
  static Term var(std::string name);

  const TermNode &node() const { return *node_; }
  template <class T> const T *as() const;

private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermGen {
  GenId id;
  Parity parity;
};
struct TermProd {
  Term left, right;
};
struct TermBracket {
  Term left, right;
};
struct TermSum {
  std::vector<std::pair<Scalar, Term>> terms;
};
struct TermVar {
  std::string name;
};

struct TermNode : std::variant<TermGen, TermProd, TermBracket, TermSum, TermVar> {
  using variant::variant;
};

template <class T> const T *Term::as() const {
  return std::get_if<T>(static_cast<const TermNode::variant *>(node_.get()));
}

Parity term_parity(const Term &t);
MultiDegree multidegree(const Term &t);
bool has_vars(const Term &t);

/// (-1)^k where k counts the odd-odd pairs whose relative order is inverted
/// when `seq` is rearranged into `order` (order[i] = index in seq placed at i).
int koszul_sign(std::span<const Parity> seq, std::span<const std::size_t> order);

/// Sign of merging two blocks into the concatenated index order `merged`.
/// Indices 0..L-1 name `left`, L..L+R-1 name `right`; merged must keep the
/// relative order inside each block.
Scalar koszul_merge_sign(std::span<const Parity> left, std::span<const Parity> right,
                         std::span<const std::size_t> merged);

} // namespace jbgp
