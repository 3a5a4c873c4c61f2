#pragma once

// Bracket words, good words, the ordered basis M of the free Lie superalgebra
// and Jacobi-only straightening.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "jbgp/core.hpp"

namespace jbgp {

namespace detail {
struct WordNode;
}

/// Interned binary bracket tree over generators. Two words are equal iff
/// their handles are equal. Handles stay valid for the life of the process.
class Word {
public:
  Word() = default;

  static Word leaf(GenId id, Parity parity);
  static Word leaf(const Generator &g) { return leaf(g.id, g.parity); }
  /// The raw bracket {l, r}; no orientation or basis check.
  static Word node(Word l, Word r);

  bool valid() const { return node_ != nullptr; }
  bool is_leaf() const;
  GenId gen() const;
  Word left() const;
  Word right() const;
  Parity parity() const;
  /// Number of generator occurrences, unit letters included (deg_L).
  std::uint32_t length() const;
  /// Number of unit-letter occurrences.
  std::uint32_t unit_count() const;
  bool contains(GenId g) const;
  MultiDegree multidegree() const;

  std::string to_string(const Alphabet &alphabet) const;

  friend bool operator==(Word a, Word b) { return a.node_ == b.node_; }
  std::size_t hash() const { return std::hash<const void *>{}(node_); }
  const detail::WordNode *raw() const { return node_; }

private:
  explicit Word(const detail::WordNode *n) : node_(n) {}
  const detail::WordNode *node_ = nullptr;
};

struct WordHash {
  std::size_t operator()(Word w) const { return w.hash(); }
};

/// The M-order: by length; equal-length brackets compare (left, right)
/// lexicographically; letters compare by declaration order with 1 smallest.
std::strong_ordering compare_M(Word u, Word v);

struct MLess {
  bool operator()(Word u, Word v) const { return compare_M(u, v) < 0; }
};

bool is_good(Word w);
bool is_odd_square(Word w);
/// Good word, or {v,v} with v good and odd.
bool in_M(Word w);

/// Sparse combination of M elements, ordered by the M-order, no zero entries.
class LieCombination {
public:
  LieCombination() = default;
  static LieCombination single(Word w, Scalar c = 1);

  void add(Word w, const Scalar &c);
  void add(const LieCombination &other, const Scalar &c = 1);
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Scalar coeff(Word w) const;
  const std::map<Word, Scalar, MLess> &terms() const { return terms_; }

  friend bool operator==(const LieCombination &a, const LieCombination &b) {
    return a.terms_ == b.terms_;
  }

  std::string to_string(const Alphabet &alphabet) const;

private:
  std::map<Word, Scalar, MLess> terms_;
};

/// Lie superbracket of two M elements expressed in M (super-Jacobi only).
/// Memoized; safe to call concurrently.
LieCombination bracket_M(Word u, Word v);
/// Bilinear extension of bracket_M.
LieCombination bracket_M(const LieCombination &a, const LieCombination &b);

/// All M elements of exactly multidegree d, ascending in the M-order.
std::vector<Word> enumerate_M(const MultiDegree &d, const Alphabet &alphabet);

} // namespace jbgp
