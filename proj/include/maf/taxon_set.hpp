#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace maf {

// Fixed-capacity bitset over original taxon indices. A live taxon during the
// search is itself a TaxonSet: collapsed cherries are the union of the
// original taxa they stand for, so expansion back to input labels is free.
class TaxonSet {
 public:
  static constexpr std::size_t kWords = 4;
  static constexpr std::size_t kCapacity = 64 * kWords;
  static constexpr std::size_t npos = kCapacity;

  constexpr TaxonSet() = default;

  static TaxonSet single(std::size_t i) {
    TaxonSet s;
    s.insert(i);
    return s;
  }

  static TaxonSet range(std::size_t n) {
    TaxonSet s;
    for (std::size_t i = 0; i < n; ++i) s.insert(i);
    return s;
  }

  void insert(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void erase(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool contains(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  // Smallest contained index, npos when empty.
  std::size_t first() const {
    for (std::size_t k = 0; k < kWords; ++k)
      if (words_[k]) return 64 * k + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return npos;
  }

  bool intersects(const TaxonSet& o) const {
    for (std::size_t k = 0; k < kWords; ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }

  bool subset_of(const TaxonSet& o) const {
    for (std::size_t k = 0; k < kWords; ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }

  TaxonSet& operator|=(const TaxonSet& o) {
    for (std::size_t k = 0; k < kWords; ++k) words_[k] |= o.words_[k];
    return *this;
  }
  TaxonSet& operator&=(const TaxonSet& o) {
    for (std::size_t k = 0; k < kWords; ++k) words_[k] &= o.words_[k];
    return *this;
  }
  // Set difference.
  TaxonSet& operator-=(const TaxonSet& o) {
    for (std::size_t k = 0; k < kWords; ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  friend TaxonSet operator|(TaxonSet a, const TaxonSet& b) { return a |= b; }
  friend TaxonSet operator&(TaxonSet a, const TaxonSet& b) { return a &= b; }
  friend TaxonSet operator-(TaxonSet a, const TaxonSet& b) { return a -= b; }

  friend bool operator==(const TaxonSet&, const TaxonSet&) = default;

  // Canonical order: by smallest element first, then by remaining content.
  friend bool operator<(const TaxonSet& a, const TaxonSet& b) {
    const auto fa = a.first(), fb = b.first();
    if (fa != fb) return fa < fb;
    for (std::size_t k = 0; k < kWords; ++k)
      if (a.words_[k] != b.words_[k]) return a.words_[k] < b.words_[k];
    return false;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < kWords; ++k) {
      auto w = words_[k];
      while (w) {
        f(64 * k + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  std::array<std::uint64_t, kWords> words_{};
};

struct TaxonSetHash {
  std::size_t operator()(const TaxonSet& s) const { return s.hash(); }
};

// Maps original labels to bit indices. Indices follow lexicographic label
// order so that every scan driven by TaxonSet ordering is reproducible.
class TaxonTable {
 public:
  TaxonTable() = default;

  // Sorts and deduplicates; throws on empty labels.
  static TaxonTable from_labels(std::vector<std::string> labels);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  bool contains(std::string_view label) const;
  // Throws std::invalid_argument for unknown labels.
  std::size_t index(std::string_view label) const;

  TaxonSet all() const { return TaxonSet::range(names_.size()); }
  TaxonSet set_of(const std::vector<std::string>& labels) const;

  // Sorted label list of a set.
  std::vector<std::string> labels(const TaxonSet& s) const;
  // "{a,b,c}" formatting used by reports and error messages.
  std::string format(const TaxonSet& s) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace maf
