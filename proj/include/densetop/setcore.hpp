#pragma once

// Finite ground sets indexed 0..n-1 and word-mask subsets over them.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <vector>

namespace densetop {

using Mask = std::uint64_t;

inline constexpr std::size_t kMaxUniverseSize = 64;
/// Largest universe whose full power set may be streamed.
inline constexpr std::size_t kMaxEnumerableSize = 20;

constexpr Mask full_mask(std::size_t n) noexcept {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

class Universe {
 public:
  /// Throws InvalidArgument unless 1 <= size <= 64 and labels are either
  /// absent or unique and exactly `size` long.
  explicit Universe(std::size_t size, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return size_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Display name of element `i`; the decimal index when unlabeled.
  std::string label(std::size_t i) const;
  Mask full() const noexcept { return full_mask(size_); }

  // Labels are presentation only.
  friend bool operator==(const Universe& a, const Universe& b) noexcept {
    return a.size_ == b.size_;
  }

 private:
  std::size_t size_;
  std::vector<std::string> labels_;
};

class Subset {
 public:
  /// Throws InvalidArgument if `mask` has bits at or above `universe.size()`.
  Subset(const Universe& universe, Mask mask);
  Subset(const Universe& universe, std::initializer_list<std::size_t> members);
  Subset(const Universe& universe, std::span<const std::size_t> members);

  static Subset empty(const Universe& universe) { return {universe, Mask{0}}; }
  static Subset full(const Universe& universe) { return {universe, universe.full()}; }

  std::size_t universe_size() const noexcept { return n_; }
  Mask mask() const noexcept { return mask_; }
  bool contains(std::size_t i) const noexcept { return i < n_ && ((mask_ >> i) & 1U) != 0; }
  std::size_t count() const noexcept;
  bool is_empty() const noexcept { return mask_ == 0; }
  bool is_full() const noexcept { return mask_ == full_mask(n_); }
  bool is_subset_of(const Subset& other) const;
  /// Members in ascending index order.
  std::vector<std::size_t> indices() const;

  friend bool operator==(const Subset& a, const Subset& b) noexcept {
    return a.n_ == b.n_ && a.mask_ == b.mask_;
  }

 private:
  friend Subset complement(const Subset& s);
  friend class SubsetRange;
  struct Unchecked {};
  Subset(std::size_t n, Mask mask, Unchecked) noexcept : n_(n), mask_(mask) {}

  std::size_t n_;
  Mask mask_;
};

enum class SetOp { Union, Intersect, Difference };

Subset complement(const Subset& s);
/// Throws UniverseMismatch if the operands come from universes of different size.
Subset set_algebra(SetOp op, const Subset& a, const Subset& b);

inline Subset operator|(const Subset& a, const Subset& b) { return set_algebra(SetOp::Union, a, b); }
inline Subset operator&(const Subset& a, const Subset& b) { return set_algebra(SetOp::Intersect, a, b); }
inline Subset operator-(const Subset& a, const Subset& b) { return set_algebra(SetOp::Difference, a, b); }

void require_same_universe(std::size_t a, std::size_t b);

/// Power set of a universe in increasing mask order, from the empty set to X.
class SubsetRange {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Subset;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = Subset;

    iterator() = default;
    iterator(std::size_t n, std::uint64_t pos) : n_(n), pos_(pos) {}

    Subset operator*() const { return Subset(n_, pos_, Subset::Unchecked{}); }
    iterator& operator++() {
      ++pos_;
      return *this;
    }
    iterator operator++(int) {
      auto tmp = *this;
      ++pos_;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) noexcept { return a.pos_ == b.pos_; }

   private:
    std::size_t n_ = 0;
    std::uint64_t pos_ = 0;
  };

  explicit SubsetRange(std::size_t n) : n_(n) {}

  iterator begin() const { return {n_, 0}; }
  iterator end() const { return {n_, std::uint64_t{1} << n_}; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << n_; }

 private:
  std::size_t n_;
};

/// Throws BoundExceeded above kMaxEnumerableSize.
SubsetRange enumerate_subsets(const Universe& universe);

}  // namespace densetop
