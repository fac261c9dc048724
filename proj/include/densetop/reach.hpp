#pragma once

// Controlled systems at desk scale: the trivial planar system and a 1-D
// bilinear Schrödinger equation on [0, 1] with Dirichlet ends. Attainable
// sets are approximated by clouds of terminal states under sampled
// piecewise-constant controls, then quantized into a finite universe.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "densetop/setcore.hpp"

namespace densetop {

/// x1(t) = c, dx2/dt = u.
struct TrivialDynamics {
  double c = 1.0;
};

/// i φ_t = -φ_xx - p(t) x φ on N interior nodes of a uniform grid.
struct SchrodingerDynamics {
  std::size_t grid_points = 63;
  double dt = 1e-3;
};

/// Piecewise-constant controls with `segments` equal pieces over [0, T],
/// each value in [-amplitude, amplitude].
struct ControlSpec {
  std::size_t segments = 4;
  double amplitude = 5.0;
};

class ControlledSystem {
 public:
  using Dynamics = std::variant<TrivialDynamics, SchrodingerDynamics>;

  /// Throws InvalidArgument unless N >= 3, dt > 0, segments >= 1 and
  /// amplitude > 0.
  ControlledSystem(Dynamics dynamics, ControlSpec controls);

  const Dynamics& dynamics() const noexcept { return dynamics_; }
  const ControlSpec& controls() const noexcept { return controls_; }
  bool is_trivial() const noexcept { return std::holds_alternative<TrivialDynamics>(dynamics_); }

 private:
  Dynamics dynamics_;
  ControlSpec controls_;
};

struct PlanarState {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// Amplitudes at the interior nodes x_j = j h, h = 1/(N+1).
using WaveFunction = std::vector<std::complex<double>>;

using StateVector = std::variant<PlanarState, WaveFunction>;

struct PiecewiseControl {
  std::vector<double> values;
};

/// States at every step boundary, starting with x0. The trivial system
/// steps once per segment with the exact update; the Schrödinger system
/// takes Crank-Nicolson steps of size dt, which must tile each segment
/// (MisalignedSegments otherwise).
std::vector<StateVector> simulate(const ControlledSystem& sys, const PiecewiseControl& control,
                                  const StateVector& x0, double horizon);

StateVector terminal_state(const ControlledSystem& sys, const PiecewiseControl& control,
                           const StateVector& x0, double horizon);

double grid_spacing(std::size_t grid_points) noexcept;
/// Discrete L² norm sqrt(h Σ |φ_j|²).
double l2_norm(const WaveFunction& phi);
double l2_distance(const WaveFunction& a, const WaveFunction& b);
/// sin(π x) sampled on the grid and normalized in the discrete L² norm.
WaveFunction sine_state(std::size_t grid_points);

/// ∫_a^b |φ|² dx by the trapezoidal rule on the grid (ends included as
/// zeros), with linear interpolation at interval ends that fall between
/// nodes. Throws BadInterval unless 0 <= a < b <= 1.
double probability(const WaveFunction& phi, double a, double b);

struct CloudSample {
  PiecewiseControl control;
  StateVector terminal;
};

struct AttainableCloud {
  ControlledSystem system;
  double horizon = 0.0;
  std::uint64_t seed = 0;
  std::vector<CloudSample> samples;
};

AttainableCloud cloud_from_controls(const ControlledSystem& sys, const StateVector& x0, double horizon,
                                    const std::vector<PiecewiseControl>& controls);

/// K controls with segment values uniform in [-P, P]. Sample k draws from
/// its own generator seeded from (seed, k), so the cloud is reproducible
/// and independent of evaluation order.
AttainableCloud attainable_cloud(const ControlledSystem& sys, const StateVector& x0, double horizon,
                                 std::size_t samples, std::uint64_t seed);

/// Cells centred at lo, lo + step, ..., hi on the x2 axis (x1 is pinned to
/// c). Samples outside the window land in the nearest edge cell.
struct TrivialGrid {
  double lo = -2.0;
  double hi = 2.0;
  double step = 1.0;
};

/// One feature P(a, b; T) per interval, each binned into ceil(1 / width)
/// bins over [0, 1]; cells are the product of the per-feature bins.
struct ProbabilityBins {
  std::vector<std::pair<double, double>> intervals;
  double width = 0.1;
};

using FeatureSpec = std::variant<TrivialGrid, ProbabilityBins>;

struct Quantization {
  Universe universe;
  Subset hit;  // cells reached by at least one sample
};

/// Throws EmptyCloud, TooManyCells (> 64 cells), DegenerateGrid (< 2 cells)
/// or InconsistentDimensions when the features do not match the system.
Quantization quantize(const AttainableCloud& cloud, const FeatureSpec& features);

struct TargetDistance {
  std::size_t nearest = 0;
  double distance = 0.0;
};

struct DensityReport {
  double eps = 0.0;
  std::vector<TargetDistance> targets;
  bool dense = false;
};

/// Nearest-sample distance per target: Euclidean for the planar system,
/// discrete L² for wave functions.
DensityReport check_eps_density(const AttainableCloud& cloud, const std::vector<StateVector>& targets,
                                double eps);

struct MuReport {
  std::size_t universe_size = 0;
  std::size_t hit_cells = 0;
  std::size_t open_count = 0;
  bool dense = false;
  bool hausdorff = false;
  /// "mu" normally; "indiscrete" when the samples cover every cell, so the
  /// hit set is not a strict subset.
  std::string topology;
};

MuReport check_mu_controllability(const AttainableCloud& cloud, const FeatureSpec& features);

/// Base step for dt-halving probes at N = 63: keeps dt times the largest
/// grid eigenvalue (about 4/h²) below 1. Coarser steps sit in the stiff
/// regime, where the observed rate drops to roughly 1.5.
inline constexpr double kRefinementBaseDt = 1e-5;

/// ‖φ_dt - φ_dt/2‖ / ‖φ_dt/2 - φ_dt/4‖ at the horizon for one control; about
/// 4 for a second-order scheme.
double refinement_ratio(const ControlledSystem& sys, const PiecewiseControl& control,
                        const WaveFunction& x0, double horizon);

}  // namespace densetop
