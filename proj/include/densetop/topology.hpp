#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "densetop/setcore.hpp"

namespace densetop {

enum class TopologyAxiom { HasEmpty, HasFull, UnionClosed, IntersectionClosed };

std::string_view to_string(TopologyAxiom axiom) noexcept;

struct TopologyCheck {
  TopologyAxiom axiom;
  bool pass = true;
  // Offending pair for the closure axioms; unset otherwise.
  std::optional<std::pair<Subset, Subset>> witness;
};

struct ValidityReport {
  std::vector<TopologyCheck> checks;

  bool valid() const noexcept;
  const TopologyCheck& operator[](TopologyAxiom axiom) const;
};

/// Checks the open-set axioms for an arbitrary family. Never throws on an
/// invalid family; the report carries the failures.
ValidityReport verify_topology(std::span<const Subset> family, const Universe& universe);

/// A topology on a finite universe stored as its sorted, deduplicated open
/// masks. Instances are always valid, so equality is structural.
class FiniteTopology {
 public:
  /// Throws InvalidTopology if `family` fails verify_topology.
  static FiniteTopology from_opens(const Universe& universe, std::span<const Subset> family);

  const Universe& universe() const noexcept { return universe_; }
  const std::vector<Mask>& open_masks() const noexcept { return opens_; }
  std::vector<Subset> opens() const;
  std::size_t open_count() const noexcept { return opens_.size(); }
  bool is_open(const Subset& s) const;
  bool is_closed(const Subset& s) const;

  friend bool operator==(const FiniteTopology& a, const FiniteTopology& b) noexcept {
    return a.universe_ == b.universe_ && a.opens_ == b.opens_;
  }

 private:
  friend FiniteTopology make_topology_unchecked(const Universe& universe, std::vector<Mask> opens);
  FiniteTopology(Universe universe, std::vector<Mask> opens)
      : universe_(std::move(universe)), opens_(std::move(opens)) {}

  Universe universe_;
  std::vector<Mask> opens_;
};

/// Sorts and deduplicates `opens` without validating the axioms. Callers must
/// guarantee a topology.
FiniteTopology make_topology_unchecked(const Universe& universe, std::vector<Mask> opens);

FiniteTopology discrete_topology(const Universe& universe);
FiniteTopology indiscrete_topology(const Universe& universe);
/// Smallest topology containing every member of `subbase`.
FiniteTopology generate_topology(const Universe& universe, std::span<const Subset> subbase);

/// Throws EmptyF or FullF unless `dense_set` is a nonempty proper subset.
void require_proper_nonempty(const Universe& universe, const Subset& dense_set);

/// Closed form of the topology in which `dense_set` is dense: every subset of
/// it, plus X.
FiniteTopology mu_topology(const Universe& universe, const Subset& dense_set);

Subset closure_of(const FiniteTopology& t, const Subset& a);
Subset interior_of(const FiniteTopology& t, const Subset& a);
bool is_dense(const FiniteTopology& t, const Subset& a);

/// Induced topology on Y, re-indexed to 0..|Y|-1. `embedding[k]` is the index
/// in the parent universe of sub-universe element k.
struct Subspace {
  FiniteTopology topology;
  std::vector<std::size_t> embedding;
  std::size_t parent_size;

  /// Sub-universe subset mapped back into the parent universe.
  Subset lift(const Subset& s) const;
};

/// Throws EmptySubspace for Y = ∅. Labels of Y's elements carry over.
Subspace subspace(const FiniteTopology& t, const Subset& y);

/// True iff every open of `coarse` is open in `fine`.
bool is_coarser(const FiniteTopology& coarse, const FiniteTopology& fine);

struct SeparationProfile {
  bool t0 = true;
  bool t1 = true;
  bool hausdorff = true;
  std::optional<std::pair<std::size_t, std::size_t>> t0_witness;  // indistinguishable pair
  std::optional<std::size_t> t1_witness;                           // point whose singleton is not closed
  std::optional<std::pair<std::size_t, std::size_t>> hausdorff_witness;
};

SeparationProfile separation_profile(const FiniteTopology& t);

inline constexpr std::size_t kMaxEnumeratedTopologySize = 4;

/// Every labeled topology on n points, found by filtering all 2^(2^n)
/// families through verify_topology. Throws BoundExceeded for n > 4.
std::vector<FiniteTopology> enumerate_topologies(std::size_t n);

}  // namespace densetop
