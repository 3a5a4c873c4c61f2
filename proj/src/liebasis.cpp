#include "jbgp/liebasis.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace jbgp {

namespace detail {

struct WordNode {
  bool leaf;
  GenId gen;
  Parity parity;
  const WordNode *left;
  const WordNode *right;
  std::uint32_t length;
  std::uint32_t units;
  bool good;
  bool odd_square;
};

} // namespace detail

using detail::WordNode;

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<const void *, const void *> &p) const {
    auto a = std::hash<const void *>{}(p.first);
    auto b = std::hash<const void *>{}(p.second);
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  }
};

class WordTable {
public:
  static WordTable &instance() {
    static WordTable table;
    return table;
  }

  const WordNode *leaf(GenId id, Parity parity) {
    std::uint64_t key = (static_cast<std::uint64_t>(id) << 1) | static_cast<std::uint64_t>(bit(parity));
    {
      std::shared_lock lock(mutex_);
      if (auto it = leaves_.find(key); it != leaves_.end())
        return it->second;
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = leaves_.try_emplace(key, nullptr);
    if (inserted) {
      store_.push_back(WordNode{true, id, parity, nullptr, nullptr, 1, id == 0 ? 1u : 0u, true, false});
      it->second = &store_.back();
    }
    return it->second;
  }

  const WordNode *node(const WordNode *l, const WordNode *r, bool good) {
    auto key = std::make_pair(static_cast<const void *>(l), static_cast<const void *>(r));
    {
      std::shared_lock lock(mutex_);
      if (auto it = nodes_.find(key); it != nodes_.end())
        return it->second;
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = nodes_.try_emplace(key, nullptr);
    if (inserted) {
      bool odd_sq = l == r && l->good && is_odd(l->parity);
      store_.push_back(WordNode{false, 0, l->parity + r->parity, l, r, l->length + r->length,
                                l->units + r->units, good, odd_sq});
      it->second = &store_.back();
    }
    return it->second;
  }

private:
  std::shared_mutex mutex_;
  std::deque<WordNode> store_;
  std::unordered_map<std::uint64_t, const WordNode *> leaves_;
  std::unordered_map<std::pair<const void *, const void *>, const WordNode *, PairHash> nodes_;
};

std::strong_ordering compare_nodes(const WordNode *u, const WordNode *v) {
  if (u == v)
    return std::strong_ordering::equal;
  if (u->length != v->length)
    return u->length <=> v->length;
  if (u->leaf) {
    if (u->gen != v->gen)
      return u->gen <=> v->gen;
    return bit(u->parity) <=> bit(v->parity);
  }
  if (auto c = compare_nodes(u->left, v->left); c != 0)
    return c;
  return compare_nodes(u->right, v->right);
}

bool compute_good(const WordNode *l, const WordNode *r) {
  if (!l->good || !r->good || compare_nodes(l, r) <= 0)
    return false;
  return l->leaf || compare_nodes(l->right, r) <= 0;
}

} // namespace

Word Word::leaf(GenId id, Parity parity) { return Word(WordTable::instance().leaf(id, parity)); }

Word Word::node(Word l, Word r) {
  if (!l.valid() || !r.valid())
    throw Error(ErrorKind::Precondition, "bracket of an empty word");
  return Word(WordTable::instance().node(l.node_, r.node_, compute_good(l.node_, r.node_)));
}

bool Word::is_leaf() const { return node_->leaf; }
GenId Word::gen() const {
  if (!node_->leaf)
    throw Error(ErrorKind::Precondition, "gen() on a bracket word");
  return node_->gen;
}
Word Word::left() const { return Word(node_->left); }
Word Word::right() const { return Word(node_->right); }
Parity Word::parity() const { return node_->parity; }
std::uint32_t Word::length() const { return node_->length; }
std::uint32_t Word::unit_count() const { return node_->units; }

bool Word::contains(GenId g) const {
  if (node_->leaf)
    return node_->gen == g;
  return left().contains(g) || right().contains(g);
}

MultiDegree Word::multidegree() const {
  if (node_->leaf)
    return MultiDegree::of(node_->gen);
  return left().multidegree() + right().multidegree();
}

std::string Word::to_string(const Alphabet &alphabet) const {
  if (node_->leaf)
    return alphabet[node_->gen].name;
  return "{" + left().to_string(alphabet) + "," + right().to_string(alphabet) + "}";
}

std::strong_ordering compare_M(Word u, Word v) {
  return compare_nodes(u.raw(),
                       v.raw());
}

bool is_good(Word w) { return w.valid() && w.raw()->good; }
bool is_odd_square(Word w) {
  return w.valid() && w.raw()->odd_square;
}
bool in_M(Word w) { return is_good(w) || is_odd_square(w); }

LieCombination LieCombination::single(Word w, Scalar c) {
  LieCombination r;
  r.add(w, c);
  return r;
}

void LieCombination::add(Word w, const Scalar &c) {
  if (c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

void LieCombination::add(const LieCombination &other, const Scalar &c) {
  if (c == 0)
    return;
  for (const auto &[w, x] : other.terms_)
    add(w, x * c);
}

Scalar LieCombination::coeff(Word w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0) : it->second;
}

std::string LieCombination::to_string(const Alphabet &alphabet) const {
  if (terms_.empty())
    return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto &[w, c] : terms_) {
    if (!first)
      out << " + ";
    first = false;
    if (c != 1)
      out << scalar_to_string(c) << " ";
    out << w.to_string(alphabet);
  }
  return out.str();
}

namespace {

constexpr int kMaxDepth = 4096;

struct LieMemo {
  std::shared_mutex mutex;
  std::unordered_map<std::pair<const void *, const void *>, LieCombination, PairHash> table;
};

LieMemo &lie_memo() {
  static LieMemo memo;
  return memo;
}

LieCombination straighten(Word u, Word v, int depth);

LieCombination bracket_comb(const LieCombination &a, const LieCombination &b, int depth) {
  LieCombination out;
  for (const auto &[u, cu] : a.terms())
    for (const auto &[v, cv] : b.terms())
      out.add(straighten(u, v, depth + 1), cu * cv);
  return out;
}

LieCombination bracket_word_comb(Word u, const LieCombination &b, int depth) {
  return bracket_comb(LieCombination::single(u), b, depth);
}

LieCombination bracket_comb_word(const LieCombination &a, Word v, int depth) {
  return bracket_comb(a, LieCombination::single(v), depth);
}

LieCombination straighten_uncached(Word u, Word v, int depth) {
  if (u == v) {
    if (is_odd(u.parity()) && is_good(u))
      return LieCombination::single(Word::node(u, u));
    return {};
  }
  if (compare_M(u, v) < 0) {
    LieCombination r;
    r.add(straighten(v, u, depth + 1), Scalar(-sign(u.parity(), v.parity())));
    return r;
  }
  Word w = Word::node(u, v);
  if (is_good(w))
    return LieCombination::single(w);

  // u > v from here on.
  if (is_odd_square(v) && !is_odd_square(u)) {
    // {u,{w,w}} = {{u,w},w} + (-1)^{|u||w|} {w,{u,w}}
    Word x = v.left();
    LieCombination uw = straighten(u, x, depth + 1);
    LieCombination r = bracket_comb_word(uw, x, depth);
    r.add(bracket_word_comb(x, uw, depth), Scalar(sign(u.parity(), x.parity())));
    return r;
  }
  // {{x,x},x} = 0 for odd x; the general rewrite would return to itself.
  if (is_odd_square(u) && u.left() == v)
    return {};
  // {{a,b},c} = {a,{b,c}} - (-1)^{|a||b|} {b,{a,c}}
  Word a = u.left(), b = u.right();
  LieCombination r = bracket_word_comb(a, straighten(b, v, depth + 1), depth);
  r.add(bracket_word_comb(b, straighten(a, v, depth + 1), depth),
        Scalar(-sign(a.parity(), b.parity())));
  return r;
}

LieCombination straighten(Word u, Word v, int depth) {
  if (depth > kMaxDepth)
    throw Error(ErrorKind::Limit, "Lie straightening exceeded the recursion limit");
  auto key = std::make_pair(static_cast<const void *>(u.raw()),
                            static_cast<const void *>(v.raw()));
  auto &memo = lie_memo();
  {
    std::shared_lock lock(memo.mutex);
    if (auto it = memo.table.find(key); it != memo.table.end())
      return it->second;
  }
  LieCombination r = straighten_uncached(u, v, depth);
  std::unique_lock lock(memo.mutex);
  memo.table.try_emplace(key, r);
  return r;
}

} // namespace

LieCombination bracket_M(Word u, Word v) { return straighten(u, v, 0); }

LieCombination bracket_M(const LieCombination &a, const LieCombination &b) {
  return bracket_comb(a, b, 0);
}

namespace {

using DegreeKey = std::vector<std::tuple<GenId, std::uint32_t, int>>;

struct EnumMemo {
  std::mutex mutex;
  std::map<DegreeKey, std::vector<Word>> table;
};

EnumMemo &enum_memo() {
  static EnumMemo memo;
  return memo;
}

void sub_degrees(const std::vector<std::pair<GenId, std::uint32_t>> &parts, std::size_t i,
                 MultiDegree &cur, std::vector<MultiDegree> &out) {
  if (i == parts.size()) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t c = 0; c <= parts[i].second; ++c) {
    MultiDegree next = cur;
    next.add(parts[i].first, c);
    sub_degrees(parts, i + 1, next, out);
  }
}

std::vector<Word> enumerate_uncached(const MultiDegree &d, const Alphabet &alphabet) {
  std::vector<Word> out;
  if (d.total() == 0)
    return out;
  if (d.total() == 1) {
    const auto &g = alphabet[d.counts().begin()->first];
    out.push_back(Word::leaf(g));
    return out;
  }
  std::vector<std::pair<GenId, std::uint32_t>> parts(d.counts().begin(), d.counts().end());
  std::vector<MultiDegree> subs;
  MultiDegree empty;
  sub_degrees(parts, 0, empty, subs);
  for (const auto &d1 : subs) {
    if (d1.total() == 0 || d1 == d)
      continue;
    MultiDegree d2 = d - d1;
    auto left = enumerate_M(d1, alphabet);
    auto right = enumerate_M(d2, alphabet);
    for (Word u : left)
      for (Word v : right)
        if (is_good(u) && is_good(v) && compare_M(u, v) > 0) {
          Word w = Word::node(u, v);
          if (is_good(w))
            out.push_back(w);
        }
    if (d1 == d2)
      for (Word v : left)
        if (is_good(v) && is_odd(v.parity()))
          out.push_back(Word::node(v, v));
  }
  std::sort(out.begin(), out.end(), MLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace

std::vector<Word> enumerate_M(const MultiDegree &d, const Alphabet &alphabet) {
  DegreeKey key;
  for (const auto &[g, c] : d.counts())
    key.emplace_back(g, c, bit(alphabet[g].parity));
  auto &memo = enum_memo();
  {
    std::lock_guard lock(memo.mutex);
    if (auto it = memo.table.find(key); it != memo.table.end())
      return it->second;
  }
  auto out = enumerate_uncached(d, alphabet);
  std::lock_guard lock(memo.mutex);
  memo.table.try_emplace(key, out);
  return out;
}

} // namespace jbgp
