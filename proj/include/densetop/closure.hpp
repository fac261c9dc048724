#pragma once

// Closure operators on P(X), Kuratowski axiom checks, and the topology
// generated by a valid operator.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "densetop/error.hpp"
#include "densetop/setcore.hpp"
#include "densetop/topology.hpp"

namespace densetop {

/// mu(A) = ∅ for A = ∅, A ∪ F^c otherwise.
struct MuRule {
  Subset dense_set;
};

struct IdentityRule {};

/// images[mask] is the image of the subset with that mask.
struct TableRule {
  std::vector<Mask> images;
};

using ClosureRule = std::variant<MuRule, IdentityRule, TableRule>;

inline constexpr std::size_t kMaxTableSize = 16;
inline constexpr std::size_t kMaxExhaustiveAxiomSize = 12;
inline constexpr std::size_t kDefaultSampledTrials = 10'000;

class ClosureOperator {
 public:
  const Universe& universe() const noexcept { return universe_; }
  const ClosureRule& rule() const noexcept { return rule_; }

  Subset apply(const Subset& a) const;
  Mask apply_mask(Mask a) const noexcept;

  static ClosureOperator identity(const Universe& universe);
  /// `images` must list the image of every subset in mask order (2^n
  /// entries, n <= 16). Images are taken as given; nothing is checked about
  /// the closure axioms.
  static ClosureOperator table(const Universe& universe, std::span<const Subset> images);

 private:
  friend ClosureOperator make_mu(const Universe& universe, const Subset& dense_set);
  ClosureOperator(Universe universe, ClosureRule rule)
      : universe_(std::move(universe)), rule_(std::move(rule)) {}

  Universe universe_;
  ClosureRule rule_;
};

/// Throws EmptyF / FullF unless ∅ ≠ F ⊊ X.
ClosureOperator make_mu(const Universe& universe, const Subset& dense_set);

inline Subset apply(const ClosureOperator& gamma, const Subset& a) { return gamma.apply(a); }

enum class Axiom : std::size_t { Empty = 0, Extensive = 1, Idempotent = 2, Additive = 3 };

std::string_view to_string(Axiom axiom) noexcept;

struct AxiomResult {
  Axiom axiom;
  bool pass = true;
  std::optional<Subset> witness_a;
  std::optional<Subset> witness_b;  // only for the additivity axiom
};

struct AxiomReport {
  std::array<AxiomResult, 4> results{{{Axiom::Empty, true, std::nullopt, std::nullopt},
                                      {Axiom::Extensive, true, std::nullopt, std::nullopt},
                                      {Axiom::Idempotent, true, std::nullopt, std::nullopt},
                                      {Axiom::Additive, true, std::nullopt, std::nullopt}}};

  bool all_pass() const noexcept;
  const AxiomResult& operator[](Axiom axiom) const noexcept {
    return results[static_cast<std::size_t>(axiom)];
  }
  AxiomResult& operator[](Axiom axiom) noexcept { return results[static_cast<std::size_t>(axiom)]; }
};

struct Exhaustive {};
struct Sampled {
  std::uint64_t seed = 0;
  std::size_t trials = kDefaultSampledTrials;
};
using VerifyMode = std::variant<Exhaustive, Sampled>;

/// Exhaustive mode visits every subset and every pair (4^n work) and throws
/// BoundExceeded for n > 12. Sampled mode draws uniform subset pairs from a
/// seeded generator. Witnesses are the first failures encountered.
AxiomReport verify_kuratowski(const ClosureOperator& gamma, VerifyMode mode = Exhaustive{});

class NotAClosureOperator : public Error {
 public:
  explicit NotAClosureOperator(AxiomReport report);
  const AxiomReport& report() const noexcept { return report_; }

 private:
  AxiomReport report_;
};

/// {γ(A)^c : A ∈ P(X)}. The operator is checked exhaustively first and
/// rejected with NotAClosureOperator on any failing axiom.
FiniteTopology topology_from_closure(const ClosureOperator& gamma);

/// {μ(θ)^c : θ ∈ G} for the mu operator of F. Provided for inspection only.
std::vector<Subset> mu_image_family(const FiniteTopology& g, const Subset& dense_set);

}  // namespace densetop
