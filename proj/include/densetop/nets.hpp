#pragma once

// Finite directed sets, nets into finite spaces, and convergence.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "densetop/setcore.hpp"
#include "densetop/topology.hpp"

namespace densetop {

/// A finite relation given as an explicit set of (a, b) pairs meaning a ≤ b.
/// The relation is stored as given; verify_directed decides whether it is a
/// directed partial order.
class DirectedSet {
 public:
  /// Throws InvalidArgument for size 0 or a pair index out of range.
  DirectedSet(std::size_t size, std::span<const std::pair<std::size_t, std::size_t>> leq);

  /// 0 ≤ 1 ≤ ... ≤ k-1.
  static DirectedSet chain(std::size_t k);
  /// Product order on a rows x cols grid; element (r, c) has index r*cols + c.
  static DirectedSet grid(std::size_t rows, std::size_t cols);

  std::size_t size() const noexcept { return size_; }
  bool leq(std::size_t a, std::size_t b) const noexcept { return bit(a, b); }
  /// All related pairs in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  /// Upper set {α : β ≤ α} as packed 64-bit words.
  std::span<const std::uint64_t> upper_set(std::size_t beta) const noexcept {
    return {rows_.data() + beta * words_, words_};
  }
  std::size_t words_per_row() const noexcept { return words_; }

 private:
  bool bit(std::size_t a, std::size_t b) const noexcept {
    return ((rows_[a * words_ + b / 64] >> (b % 64)) & 1U) != 0;
  }

  std::size_t size_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;  // row a holds every b with a ≤ b
};

struct OrderCheck {
  std::string name;  // reflexive, antisymmetric, transitive, upper_bounds
  bool pass = true;
  std::vector<std::size_t> witness;
};

struct DirectedReport {
  std::vector<OrderCheck> checks;
  bool valid() const noexcept;
  const OrderCheck& operator[](std::string_view name) const;
};

DirectedReport verify_directed(const DirectedSet& d);

class Net {
 public:
  /// Throws InvalidArgument unless there is one point per index element and
  /// every point lies in a universe of `universe_size` elements.
  Net(DirectedSet index, std::vector<std::size_t> points, std::size_t universe_size);

  const DirectedSet& index() const noexcept { return index_; }
  const std::vector<std::size_t>& points() const noexcept { return points_; }
  std::size_t universe_size() const noexcept { return universe_size_; }

 private:
  DirectedSet index_;
  std::vector<std::size_t> points_;
  std::size_t universe_size_;
};

/// How the tail beyond an index β is formed: {α ≥ β} or {α > β}.
enum class TailOrder { Reflexive, Strict };

bool eventually_in(const Net& net, const Subset& a, TailOrder order = TailOrder::Reflexive);
bool converges_to(const Net& net, std::size_t x, const FiniteTopology& t,
                  TailOrder order = TailOrder::Reflexive);

/// Open neighbourhoods of x, directed by reverse inclusion (U ≤ V iff V ⊆ U).
struct NeighbourhoodFilter {
  DirectedSet order;
  std::vector<Mask> neighbourhoods;
};

NeighbourhoodFilter neighbourhood_filter(const FiniteTopology& t, std::size_t x);

/// A net in A converging to x, indexed by the neighbourhood filter of x and
/// picking the smallest element of U ∩ A at each U. Empty when x ∉ cl(A).
std::optional<Net> witness_net(const FiniteTopology& t, const Subset& a, std::size_t x);

inline constexpr std::size_t kMaxNetTheoremSize = 8;

/// For every subset A and point x: x ∈ cl(A) iff witness_net succeeds, and
/// each witness has its points in A, a directed index and converges to x.
/// Throws BoundExceeded for n > 8.
bool check_closure_net_theorem(const FiniteTopology& t);

/// Random chain or grid index (at most 8 elements) with uniform points.
Net random_net(std::size_t universe_size, std::mt19937_64& rng);

struct FinalLemmaCounterexample {
  Net net;
  std::size_t limit;
  Subset theta;  // open of G_F, embedded in X
};

struct FinalLemmaReport {
  bool holds = true;
  std::size_t trials = 0;
  std::size_t convergent = 0;  // (net, limit) pairs examined
  std::size_t checks = 0;      // (net, limit, θ) triples examined
  std::optional<FinalLemmaCounterexample> counterexample;
};

/// Draws `trials` random nets, and for every limit x of each net in the mu
/// topology of F checks that the net is eventually in every G_F-open θ ∋ x.
/// Throws FNotClosed if F is not closed in G, EmptyF / FullF as for make_mu.
FinalLemmaReport check_final_lemma(const FiniteTopology& g, const Subset& dense_set,
                                   std::size_t trials, std::uint64_t seed);

}  // namespace densetop
