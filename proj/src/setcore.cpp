#include "densetop/setcore.hpp"

#include <bit>
#include <set>

#include "densetop/error.hpp"

namespace densetop {

Universe::Universe(std::size_t size, std::vector<std::string> labels)
    : size_(size), labels_(std::move(labels)) {
  if (size_ == 0 || size_ > kMaxUniverseSize) {
    throw Error(ErrorCode::InvalidArgument,
                "universe size must be in [1, 64], got " + std::to_string(size_));
  }
  if (!labels_.empty()) {
    if (labels_.size() != size_) {
      throw Error(ErrorCode::InvalidArgument, "label count does not match universe size");
    }
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) {
      throw Error(ErrorCode::InvalidArgument, "universe labels must be unique");
    }
  }
}

std::string Universe::label(std::size_t i) const {
  return labels_.empty() ? std::to_string(i) : labels_.at(i);
}

Subset::Subset(const Universe& universe, Mask mask) : n_(universe.size()), mask_(mask) {
  if ((mask & ~universe.full()) != 0) {
    throw Error(ErrorCode::InvalidArgument, "subset mask references elements outside the universe");
  }
}

Subset::Subset(const Universe& universe, std::initializer_list<std::size_t> members)
    : Subset(universe, std::span<const std::size_t>(members.begin(), members.size())) {}

Subset::Subset(const Universe& universe, std::span<const std::size_t> members)
    : n_(universe.size()), mask_(0) {
  for (std::size_t i : members) {
    if (i >= n_) {
      throw Error(ErrorCode::InvalidArgument,
                  "element " + std::to_string(i) + " outside universe of size " + std::to_string(n_));
    }
    mask_ |= Mask{1} << i;
  }
}

std::size_t Subset::count() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }

bool Subset::is_subset_of(const Subset& other) const {
  require_same_universe(n_, other.n_);
  return (mask_ & ~other.mask_) == 0;
}

std::vector<std::size_t> Subset::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (Mask m = mask_; m != 0; m &= m - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  }
  return out;
}

void require_same_universe(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::UniverseMismatch,
                "universe size mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

Subset complement(const Subset& s) {
  return Subset(s.n_, ~s.mask_ & full_mask(s.n_), Subset::Unchecked{});
}

Subset set_algebra(SetOp op, const Subset& a, const Subset& b) {
  require_same_universe(a.universe_size(), b.universe_size());
  const Universe u(a.universe_size());
  switch (op) {
    case SetOp::Union: return {u, a.mask() | b.mask()};
    case SetOp::Intersect: return {u, a.mask() & b.mask()};
    case SetOp::Difference: return {u, a.mask() & ~b.mask()};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown set operation");
}

SubsetRange enumerate_subsets(const Universe& universe) {
  if (universe.size() > kMaxEnumerableSize) {
    throw Error(ErrorCode::BoundExceeded,
                "subset enumeration limited to n <= 20, got " + std::to_string(universe.size()));
  }
  return SubsetRange(universe.size());
}

}  // namespace densetop
