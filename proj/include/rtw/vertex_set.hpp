#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <ostream>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace rtw {

using Vertex = int;

// Fixed-universe bitset over vertex ids 0..universe-1.  Sets with up to 128
// vertices live inline.
class VertexSet {
  using Word = std::uint64_t;
  static constexpr int kBits = 64;
  using Storage = boost::container::small_vector<Word, 2>;

 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Vertex;
    using difference_type = std::ptrdiff_t;
    using pointer = const Vertex*;
    using reference = Vertex;

    iterator() = default;
    iterator(const VertexSet* set, Vertex v) : set_(set), v_(v) {}
    Vertex operator*() const { return v_; }
    iterator& operator++() {
      v_ = set_->next(v_);
      return *this;
    }
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(const iterator& o) const { return v_ == o.v_; }

   private:
    const VertexSet* set_ = nullptr;
    Vertex v_ = -1;
  };

  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : universe_(universe), words_((universe + kBits - 1) / kBits, 0) {}

  VertexSet(std::size_t universe, std::initializer_list<Vertex> vs) : VertexSet(universe) {
    for (Vertex v : vs) insert(v);
  }

  template <class Range>
  static VertexSet from_range(std::size_t universe, const Range& vs) {
    VertexSet s(universe);
    for (Vertex v : vs) s.insert(v);
    return s;
  }

  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    for (std::size_t i = 0; i < s.words_.size(); ++i) s.words_[i] = ~Word{0};
    s.trim();
    return s;
  }

  std::size_t universe() const { return universe_; }

  void insert(Vertex v) {
    assert(v >= 0 && static_cast<std::size_t>(v) < universe_);
    words_[v / kBits] |= Word{1} << (v % kBits);
  }
  void erase(Vertex v) {
    assert(v >= 0 && static_cast<std::size_t>(v) < universe_);
    words_[v / kBits] &= ~(Word{1} << (v % kBits));
  }
  bool contains(Vertex v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= universe_) return false;
    return (words_[v / kBits] >> (v % kBits)) & 1U;
  }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  std::size_t size() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (Word w : words_)
      if (w) return false;
    return true;
  }

  // Smallest member, or -1.
  Vertex first() const { return scan_from(0); }
  // Smallest member strictly greater than v, or -1.
  Vertex next(Vertex v) const { return scan_from(v + 1); }

  iterator begin() const { return iterator(this, first()); }
  iterator end() const { return iterator(this, -1); }

  std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    out.reserve(size());
    for (Vertex v : *this) out.push_back(v);
    return out;
  }

  VertexSet& operator|=(const VertexSet& o) {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  // Set difference.
  VertexSet& operator-=(const VertexSet& o) {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  VertexSet& operator^=(const VertexSet& o) {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend VertexSet operator^(VertexSet a, const VertexSet& b) { return a ^= b; }

  VertexSet complement() const {
    VertexSet s(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
    s.trim();
    return s;
  }

  bool intersects(const VertexSet& o) const {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool is_subset_of(const VertexSet& o) const {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  std::size_t intersection_size(const VertexSet& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }
  std::size_t union_size(const VertexSet& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] | o.words_[i]));
    return c;
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    if (a.universe_ != b.universe_) return false;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      if (a.words_[i] != b.words_[i]) return false;
    return true;
  }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ universe_;
    for (Word w : words_) {
      h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  // Lexicographic order on the ascending element sequences of two sets of
  // equal size; true iff *this precedes o.
  bool lex_less(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      Word d = words_[i] ^ o.words_[i];
      if (d) {
        Word low = d & (~d + 1);
        // The smallest differing element belongs to the lexicographically smaller set.
        return (words_[i] & low) != 0;
      }
    }
    return false;
  }

 private:
  Vertex scan_from(Vertex from) const {
    if (from < 0) from = 0;
    std::size_t wi = static_cast<std::size_t>(from) / kBits;
    if (wi >= words_.size()) return -1;
    Word w = words_[wi] & (~Word{0} << (from % kBits));
    while (true) {
      if (w) return static_cast<Vertex>(wi * kBits + std::countr_zero(w));
      if (++wi >= words_.size()) return -1;
      w = words_[wi];
    }
  }

  void trim() {
    if (universe_ % kBits != 0 && !words_.empty())
      words_.back() &= (Word{1} << (universe_ % kBits)) - 1;
  }

  std::size_t universe_ = 0;
  Storage words_;
};

// The total order on vertex sets used for block comparison: larger
// cardinality wins, ties broken lexicographically under ascending vertex ids.
inline bool set_less(const VertexSet& a, const VertexSet& b) {
  std::size_t sa = a.size(), sb = b.size();
  if (sa != sb) return sa < sb;
  return a.lex_less(b);
}

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

inline std::ostream& operator<<(std::ostream& os, const VertexSet& s) {
  os << '{';
  bool first = true;
  for (Vertex v : s) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  return os << '}';
}

}  // namespace rtw
