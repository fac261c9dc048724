#include "densetop/reach.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "densetop/error.hpp"
#include "densetop/topology.hpp"

namespace densetop {

namespace {

using cplx = std::complex<double>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits; identical on every platform.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string format_number(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::size_t steps_per_segment(const SchrodingerDynamics& s, std::size_t segments, double horizon) {
  const double exact = horizon / (static_cast<double>(segments) * s.dt);
  const double rounded = std::round(exact);
  if (rounded < 1.0 || std::abs(exact - rounded) > 1e-9 * std::max(1.0, exact)) {
    throw Error(ErrorCode::MisalignedSegments,
                "T / (segments * dt) must be a positive integer, got " + format_number(exact));
  }
  return static_cast<std::size_t>(rounded);
}

// Solves the tridiagonal system with constant off-diagonal `off` and
// diagonal `diag` in place of `rhs`, without pivoting.
void solve_tridiagonal(const std::vector<cplx>& diag, cplx off, std::vector<cplx>& rhs,
                       std::vector<cplx>& scratch) {
  const std::size_t n = diag.size();
  scratch.resize(n);
  cplx pivot = diag[0];
  rhs[0] /= pivot;
  for (std::size_t j = 1; j < n; ++j) {
    scratch[j] = off / pivot;
    pivot = diag[j] - off * scratch[j];
    rhs[j] = (rhs[j] - off * rhs[j - 1]) / pivot;
  }
  for (std::size_t j = n - 1; j-- > 0;) rhs[j] -= scratch[j + 1] * rhs[j + 1];
}

class CrankNicolson {
 public:
  CrankNicolson(std::size_t n, double dt) : n_(n), dt_(dt), h_(grid_spacing(n)) {
    diag_.resize(n);
    rhs_.resize(n);
  }

  // One step of (I + i dt/2 H) φ' = (I - i dt/2 H) φ with
  // H = -D2 - p x, D2 the three-point Laplacian with zero ends.
  void step(WaveFunction& phi, double p) {
    const double inv_h2 = 1.0 / (h_ * h_);
    const cplx half(0.0, 0.5 * dt_);
    const cplx off = -half * inv_h2;  // (i dt/2) * H_{j,j±1}
    for (std::size_t j = 0; j < n_; ++j) {
      const double x = static_cast<double>(j + 1) * h_;
      const cplx hjj = 2.0 * inv_h2 - p * x;
      diag_[j] = 1.0 + half * hjj;
      cplx neighbours = 0.0;
      if (j > 0) neighbours += phi[j - 1];
      if (j + 1 < n_) neighbours += phi[j + 1];
      rhs_[j] = (1.0 - half * hjj) * phi[j] - off * neighbours;
    }
    solve_tridiagonal(diag_, off, rhs_, scratch_);
    for (std::size_t j = 0; j < n_; ++j) {
      if (!std::isfinite(rhs_[j].real()) || !std::isfinite(rhs_[j].imag())) {
        throw Error(ErrorCode::NonfiniteState, "Schrodinger state became non-finite; reduce dt");
      }
    }
    phi.swap(rhs_);
  }

 private:
  std::size_t n_;
  double dt_;
  double h_;
  std::vector<cplx> diag_;
  std::vector<cplx> rhs_;
  std::vector<cplx> scratch_;
};

void require_control_shape(const ControlledSystem& sys, const PiecewiseControl& control, double horizon) {
  if (!(horizon > 0.0)) throw Error(ErrorCode::InvalidArgument, "horizon T must be positive");
  if (control.values.size() != sys.controls().segments) {
    throw Error(ErrorCode::InconsistentDimensions,
                "control has " + std::to_string(control.values.size()) + " segments, system expects " +
                    std::to_string(sys.controls().segments));
  }
}

double distance(const StateVector& a, const StateVector& b) {
  if (a.index() != b.index()) {
    throw Error(ErrorCode::InconsistentDimensions, "target and sample have different state types");
  }
  if (const auto* pa = std::get_if<PlanarState>(&a)) {
    const auto& pb = std::get<PlanarState>(b);
    return std::hypot(pa->x1 - pb.x1, pa->x2 - pb.x2);
  }
  return l2_distance(std::get<WaveFunction>(a), std::get<WaveFunction>(b));
}

}  // namespace

ControlledSystem::ControlledSystem(Dynamics dynamics, ControlSpec controls)
    : dynamics_(std::move(dynamics)), controls_(controls) {
  if (controls_.segments == 0) throw Error(ErrorCode::InvalidArgument, "need at least one control segment");
  if (!(controls_.amplitude > 0.0)) throw Error(ErrorCode::InvalidArgument, "control amplitude must be positive");
  if (const auto* s = std::get_if<SchrodingerDynamics>(&dynamics_)) {
    if (s->grid_points < 3) throw Error(ErrorCode::InvalidArgument, "Schrodinger grid needs N >= 3");
    if (!(s->dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time step must be positive");
  }
}

std::vector<StateVector> simulate(const ControlledSystem& sys, const PiecewiseControl& control,
                                  const StateVector& x0, double horizon) {
  require_control_shape(sys, control, horizon);
  std::vector<StateVector> trajectory{x0};

  if (const auto* triv = std::get_if<TrivialDynamics>(&sys.dynamics())) {
    const auto* start = std::get_if<PlanarState>(&x0);
    if (start == nullptr) throw Error(ErrorCode::InconsistentDimensions, "trivial system needs a planar state");
    const double seg = horizon / static_cast<double>(control.values.size());
    PlanarState x{triv->c, start->x2};
    for (double u : control.values) {
      x.x2 += u * seg;
      trajectory.emplace_back(x);
    }
    return trajectory;
  }

  const auto& schr = std::get<SchrodingerDynamics>(sys.dynamics());
  const auto* start = std::get_if<WaveFunction>(&x0);
  if (start == nullptr || start->size() != schr.grid_points) {
    throw Error(ErrorCode::InconsistentDimensions,
                "Schrodinger system needs a wave function with " + std::to_string(schr.grid_points) + " nodes");
  }
  const std::size_t per_segment = steps_per_segment(schr, control.values.size(), horizon);
  CrankNicolson stepper(schr.grid_points, schr.dt);
  WaveFunction phi = *start;
  trajectory.reserve(1 + per_segment * control.values.size());
  for (double p : control.values) {
    for (std::size_t k = 0; k < per_segment; ++k) {
      stepper.step(phi, p);
      trajectory.emplace_back(phi);
    }
  }
  return trajectory;
}

StateVector terminal_state(const ControlledSystem& sys, const PiecewiseControl& control,
                           const StateVector& x0, double horizon) {
  return simulate(sys, control, x0, horizon).back();
}

double grid_spacing(std::size_t grid_points) noexcept { return 1.0 / static_cast<double>(grid_points + 1); }

double l2_norm(const WaveFunction& phi) {
  double sum = 0.0;
  for (const auto& z : phi) sum += std::norm(z);
  return std::sqrt(grid_spacing(phi.size()) * sum);
}

double l2_distance(const WaveFunction& a, const WaveFunction& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InconsistentDimensions, "wave functions differ in length");
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += std::norm(a[j] - b[j]);
  return std::sqrt(grid_spacing(a.size()) * sum);
}

WaveFunction sine_state(std::size_t grid_points) {
  const double h = grid_spacing(grid_points);
  WaveFunction phi(grid_points);
  for (std::size_t j = 0; j < grid_points; ++j) {
    phi[j] = std::sin(std::numbers::pi * static_cast<double>(j + 1) * h);
  }
  const double norm = l2_norm(phi);
  for (auto& z : phi) z /= norm;
  return phi;
}

double probability(const WaveFunction& phi, double a, double b) {
  if (!(a >= 0.0 && a < b && b <= 1.0)) {
    throw Error(ErrorCode::BadInterval, "probability interval must satisfy 0 <= a < b <= 1");
  }
  const std::size_t nodes = phi.size() + 2;
  const double h = grid_spacing(phi.size());
  auto density = [&](std::size_t k) { return (k == 0 || k + 1 == nodes) ? 0.0 : std::norm(phi[k - 1]); };
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < nodes; ++k) {
    const double x0 = static_cast<double>(k) * h;
    const double x1 = static_cast<double>(k + 1) * h;
    const double lo = std::max(a, x0);
    const double hi = std::min(b, x1);
    if (!(lo < hi)) continue;
    const double r0 = density(k);
    const double r1 = density(k + 1);
    auto interp = [&](double x) { return r0 + (r1 - r0) * (x - x0) / h; };
    total += 0.5 * (hi - lo) * (interp(lo) + interp(hi));
  }
  return total;
}

AttainableCloud cloud_from_controls(const ControlledSystem& sys, const StateVector& x0, double horizon,
                                    const std::vector<PiecewiseControl>& controls) {
  AttainableCloud cloud{sys, horizon, 0, {}};
  cloud.samples.reserve(controls.size());
  for (const auto& u : controls) cloud.samples.push_back({u, terminal_state(sys, u, x0, horizon)});
  return cloud;
}

AttainableCloud attainable_cloud(const ControlledSystem& sys, const StateVector& x0, double horizon,
                                 std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "attainable cloud needs K >= 1 samples");
  const double amp = sys.controls().amplitude;
  std::vector<PiecewiseControl> controls(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    std::mt19937_64 rng(splitmix64(seed + k));
    controls[k].values.resize(sys.controls().segments);
    for (auto& v : controls[k].values) v = -amp + 2.0 * amp * unit_uniform(rng);
  }
  auto cloud = cloud_from_controls(sys, x0, horizon, controls);
  cloud.seed = seed;
  return cloud;
}

Quantization quantize(const AttainableCloud& cloud, const FeatureSpec& features) {
  if (cloud.samples.empty()) throw Error(ErrorCode::EmptyCloud, "attainable cloud is empty");

  if (const auto* grid = std::get_if<TrivialGrid>(&features)) {
    if (!cloud.system.is_trivial()) {
      throw Error(ErrorCode::InconsistentDimensions, "trivial grid features need the trivial system");
    }
    if (!(grid->step > 0.0) || !(grid->hi >= grid->lo)) {
      throw Error(ErrorCode::InvalidArgument, "trivial grid needs step > 0 and hi >= lo");
    }
    const double span = (grid->hi - grid->lo) / grid->step;
    if (span + 1.0 > static_cast<double>(kMaxUniverseSize)) {
      throw Error(ErrorCode::TooManyCells, "trivial grid exceeds 64 cells");
    }
    const auto cells = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    if (cells < 2) throw Error(ErrorCode::DegenerateGrid, "feature grid needs at least two cells");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < cells; ++i) {
      labels.push_back("x2=" + format_number(grid->lo + static_cast<double>(i) * grid->step));
    }
    Universe u(cells, std::move(labels));
    Mask hit = 0;
    for (const auto& s : cloud.samples) {
      const double v = std::get<PlanarState>(s.terminal).x2;
      const double pos = std::round((v - grid->lo) / grid->step);
      const auto cell = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(cells - 1)));
      hit |= Mask{1} << cell;
    }
    return {u, Subset(u, hit)};
  }

  const auto& bins = std::get<ProbabilityBins>(features);
  if (cloud.system.is_trivial()) {
    throw Error(ErrorCode::InconsistentDimensions, "probability features need the Schrodinger system");
  }
  if (bins.intervals.empty() || !(bins.width > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "probability bins need intervals and width > 0");
  }
  const auto per_feature = static_cast<std::size_t>(std::ceil(1.0 / bins.width - 1e-9));
  double cells_d = 1.0;
  for (std::size_t i = 0; i < bins.intervals.size(); ++i) cells_d *= static_cast<double>(per_feature);
  if (cells_d > static_cast<double>(kMaxUniverseSize)) {
    throw Error(ErrorCode::TooManyCells, "probability bins exceed 64 cells");
  }
  const auto cells = static_cast<std::size_t>(cells_d);
  if (cells < 2) throw Error(ErrorCode::DegenerateGrid, "feature grid needs at least two cells");

  std::vector<std::string> labels(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    std::string label = "bins=";
    std::size_t rest = c;
    for (std::size_t i = 0; i < bins.intervals.size(); ++i) {
      if (i > 0) label += ',';
      label += std::to_string(rest % per_feature);
      rest /= per_feature;
    }
    labels[c] = std::move(label);
  }
  Universe u(cells, std::move(labels));
  Mask hit = 0;
  for (const auto& s : cloud.samples) {
    const auto& phi = std::get<WaveFunction>(s.terminal);
    std::size_t cell = 0;
    std::size_t radix = 1;
    for (const auto& [a, b] : bins.intervals) {
      const double p = probability(phi, a, b);
      const double idx = std::clamp(std::floor(p / bins.width), 0.0, static_cast<double>(per_feature - 1));
      cell += static_cast<std::size_t>(idx) * radix;
      radix *= per_feature;
    }
    hit |= Mask{1} << cell;
  }
  return {u, Subset(u, hit)};
}

DensityReport check_eps_density(const AttainableCloud& cloud, const std::vector<StateVector>& targets,
                                double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  if (cloud.samples.empty()) throw Error(ErrorCode::EmptyCloud, "attainable cloud is empty");
  DensityReport report{eps, {}, true};
  for (const auto& target : targets) {
    TargetDistance best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < cloud.samples.size(); ++k) {
      const double d = distance(target, cloud.samples[k].terminal);
      if (d < best.distance) best = {k, d};
    }
    report.dense = report.dense && best.distance <= eps;
    report.targets.push_back(best);
  }
  return report;
}

MuReport check_mu_controllability(const AttainableCloud& cloud, const FeatureSpec& features) {
  const auto q = quantize(cloud, features);
  const FiniteTopology t = q.hit.is_full() ? indiscrete_topology(q.universe) : mu_topology(q.universe, q.hit);
  MuReport report;
  report.universe_size = q.universe.size();
  report.hit_cells = q.hit.count();
  report.open_count = t.open_count();
  report.dense = is_dense(t, q.hit);
  report.hausdorff = separation_profile(t).hausdorff;
  report.topology = q.hit.is_full() ? "indiscrete" : "mu";
  return report;
}

double refinement_ratio(const ControlledSystem& sys, const PiecewiseControl& control, const WaveFunction& x0,
                        double horizon) {
  const auto* base = std::get_if<SchrodingerDynamics>(&sys.dynamics());
  if (base == nullptr) throw Error(ErrorCode::InconsistentDimensions, "refinement ratio needs the Schrodinger system");
  auto run = [&](double divisor) {
    SchrodingerDynamics d = *base;
    d.dt /= divisor;
    const ControlledSystem refined(d, sys.controls());
    return std::get<WaveFunction>(terminal_state(refined, control, x0, horizon));
  };
  const auto coarse = run(1.0);
  const auto mid = run(2.0);
  const auto fine = run(4.0);
  return l2_distance(coarse, mid) / l2_distance(mid, fine);
}

}  // namespace densetop
