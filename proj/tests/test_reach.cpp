#include "densetop/reach.hpp"

#include <cmath>
#include <numbers>

#include "test_helpers.hpp"

using namespace densetop;
using test::code_of;

namespace {

ControlledSystem trivial_system(std::size_t segments = 4, double c = 1.0) {
  return ControlledSystem(TrivialDynamics{c}, ControlSpec{segments, 5.0});
}

ControlledSystem schrodinger_system(double dt = 1e-3, std::size_t segments = 4) {
  return ControlledSystem(SchrodingerDynamics{63, dt}, ControlSpec{segments, 5.0});
}

double max_amplitude(const WaveFunction& phi) {
  double m = 0.0;
  for (const auto& z : phi) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

TEST_CASE("system validation") {
  CHECK(code_of([] { ControlledSystem(SchrodingerDynamics{2, 1e-3}, ControlSpec{}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { ControlledSystem(SchrodingerDynamics{63, 0.0}, ControlSpec{}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { ControlledSystem(TrivialDynamics{}, ControlSpec{0, 1.0}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { ControlledSystem(TrivialDynamics{}, ControlSpec{1, 0.0}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("trivial system is solved exactly") {
  const auto sys = trivial_system();
  const auto traj = simulate(sys, {{2, 2, 2, 2}}, PlanarState{1.0, 0.0}, 1.0);
  REQUIRE(traj.size() == 5);
  const auto end = std::get<PlanarState>(traj.back());
  CHECK(end.x1 == 1.0);
  CHECK(end.x2 == 2.0);

  CHECK(code_of([&] { simulate(sys, {{1, 2}}, PlanarState{1, 0}, 1.0); }) == ErrorCode::InconsistentDimensions);
  CHECK(code_of([&] { simulate(sys, {{1, 1, 1, 1}}, WaveFunction(3), 1.0); }) == ErrorCode::InconsistentDimensions);
}

TEST_CASE("Crank-Nicolson on the Schrodinger system") {
  const auto sys = schrodinger_system();

  SUBCASE("zero stays zero") {
    const auto end = std::get<WaveFunction>(terminal_state(sys, {{5, -5, 2, 1}}, WaveFunction(63), 0.1));
    CHECK(max_amplitude(end) <= 1e-14);
  }

  SUBCASE("free evolution of the ground state") {
    const auto phi0 = sine_state(63);
    const auto traj = simulate(sys, {{0, 0, 0, 0}}, phi0, 0.1);
    REQUIRE(traj.size() == 101);
    const auto& end = std::get<WaveFunction>(traj.back());
    CHECK(std::abs(l2_norm(end) - 1.0) <= 1e-10);

    // sin(πx_j) is an eigenvector of the three-point Laplacian with
    // eigenvalue λ = 4/h² sin²(πh/2); each step multiplies it by the Cayley
    // factor (1 - i dt λ/2) / (1 + i dt λ/2).
    const double h = grid_spacing(63);
    const double lambda = 4.0 / (h * h) * std::pow(std::sin(std::numbers::pi * h / 2.0), 2);
    const std::complex<double> half(0.0, 0.5 * 1e-3 * lambda);
    const auto factor = std::pow((1.0 - half) / (1.0 + half), 100);
    WaveFunction expected = phi0;
    for (auto& z : expected) z *= factor;
    CHECK(l2_distance(end, expected) <= 1e-12);
  }

  SUBCASE("segments must tile the time step") {
    CHECK(code_of([&] { simulate(schrodinger_system(3e-3), {{0, 0, 0, 0}}, sine_state(63), 0.1); }) ==
          ErrorCode::MisalignedSegments);
    CHECK(code_of([&] { simulate(sys, {{0, 0, 0, 0}}, sine_state(31), 0.1); }) == ErrorCode::InconsistentDimensions);
    CHECK(code_of([&] { simulate(sys, {{0, 0, 0, 0}}, PlanarState{}, 0.1); }) == ErrorCode::InconsistentDimensions);
  }

  SUBCASE("non-finite states are reported") {
    WaveFunction bad = sine_state(63);
    bad[10] = std::numeric_limits<double>::quiet_NaN();
    CHECK(code_of([&] { simulate(sys, {{0, 0, 0, 0}}, bad, 0.1); }) == ErrorCode::NonfiniteState);
  }
}

TEST_CASE("probability functional") {
  const auto phi = sine_state(63);
  CHECK(std::abs(probability(phi, 0.0, 1.0) - 1.0) <= 1e-8);
  CHECK(probability(WaveFunction(63), 0.0, 1.0) == 0.0);

  // 2 sin²(πx) integrates to 1/2 over [0, 1/2]; midpoint rule at high resolution.
  double reference = 0.0;
  constexpr int kPanels = 200000;
  for (int k = 0; k < kPanels; ++k) {
    const double x = 0.5 * (k + 0.5) / kPanels;
    reference += 2.0 * std::pow(std::sin(std::numbers::pi * x), 2) * 0.5 / kPanels;
  }
  CHECK(std::abs(reference - 0.5) <= 1e-9);
  CHECK(std::abs(probability(phi, 0.0, 0.5) - reference) <= 1e-6);

  for (double c : {0.013, 0.25, 0.5, 0.77, 0.999}) {
    CHECK(std::abs(probability(phi, 0.0, c) + probability(phi, c, 1.0) - 1.0) <= 1e-12);
  }

  CHECK(code_of([&] { probability(phi, 0.5, 0.5); }) == ErrorCode::BadInterval);
  CHECK(code_of([&] { probability(phi, -0.1, 0.5); }) == ErrorCode::BadInterval);
  CHECK(code_of([&] { probability(phi, 0.2, 1.1); }) == ErrorCode::BadInterval);
}

TEST_CASE("attainable clouds") {
  SUBCASE("trivial: x1 is pinned to c") {
    const auto cloud = attainable_cloud(trivial_system(4, 1.0), PlanarState{1.0, 0.0}, 1.0, 5, 99);
    REQUIRE(cloud.samples.size() == 5);
    for (const auto& s : cloud.samples) {
      CHECK(std::get<PlanarState>(s.terminal).x1 == 1.0);
      for (double v : s.control.values) CHECK(std::abs(v) <= 5.0);
    }
  }
  SUBCASE("reproducible per seed") {
    const auto sys = trivial_system();
    const auto a = attainable_cloud(sys, PlanarState{1, 0}, 1.0, 8, 3);
    const auto b = attainable_cloud(sys, PlanarState{1, 0}, 1.0, 8, 3);
    const auto c = attainable_cloud(sys, PlanarState{1, 0}, 1.0, 8, 4);
    for (std::size_t k = 0; k < 8; ++k) {
      CHECK(a.samples[k].control.values == b.samples[k].control.values);
      CHECK(a.samples[k].control.values != c.samples[k].control.values);
    }
    // Sample k does not depend on K.
    const auto longer = attainable_cloud(sys, PlanarState{1, 0}, 1.0, 12, 3);
    CHECK(longer.samples[7].control.values == a.samples[7].control.values);
  }
  SUBCASE("Schrodinger from zero") {
    const auto cloud = attainable_cloud(schrodinger_system(), WaveFunction(63), 0.1, 10, 1);
    for (const auto& s : cloud.samples) CHECK(max_amplitude(std::get<WaveFunction>(s.terminal)) <= 1e-14);
  }
  SUBCASE("Schrodinger from the ground state") {
    const auto cloud = attainable_cloud(schrodinger_system(), sine_state(63), 0.1, 50, 2024);
    REQUIRE(cloud.samples.size() == 50);
    for (std::size_t i = 0; i < 50; ++i) {
      const auto& phi = std::get<WaveFunction>(cloud.samples[i].terminal);
      CHECK(std::abs(l2_norm(phi) - 1.0) <= 1e-10);
      for (std::size_t j = i + 1; j < 50; ++j) {
        CHECK(l2_distance(phi, std::get<WaveFunction>(cloud.samples[j].terminal)) > 1e-8);
      }
    }
  }
  CHECK(code_of([] { attainable_cloud(trivial_system(), PlanarState{1, 0}, 1.0, 0, 0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("quantization") {
  const auto sys = trivial_system(1);
  const auto cloud = cloud_from_controls(sys, PlanarState{1.0, 0.0}, 1.0, {{{-1}}, {{0}}, {{1}}});

  const auto q = quantize(cloud, TrivialGrid{-2, 2, 1});
  CHECK(q.universe.size() == 5);
  CHECK(q.hit == Subset(q.universe, {1, 2, 3}));
  CHECK(q.universe.label(1) == "x2=-1");

  // Out-of-window samples saturate into the edge cells.
  const auto far = cloud_from_controls(sys, PlanarState{1.0, 0.0}, 1.0, {{{-4}}, {{3.4}}});
  const auto qf = quantize(far, TrivialGrid{-2, 2, 1});
  CHECK(qf.hit == Subset(qf.universe, {0, 4}));

  const auto zero = attainable_cloud(schrodinger_system(), WaveFunction(63), 0.1, 4, 0);
  const auto qz = quantize(zero, ProbabilityBins{{{0.0, 0.5}}, 0.1});
  CHECK(qz.universe.size() == 10);
  CHECK(qz.hit == Subset(qz.universe, {0}));

  const auto ground = attainable_cloud(schrodinger_system(), sine_state(63), 0.1, 20, 8);
  const auto qg = quantize(ground, ProbabilityBins{{{0.0, 0.5}, {0.5, 1.0}}, 0.125});
  CHECK(qg.universe.size() == 64);
  CHECK(qg.hit.count() >= 1);

  CHECK(code_of([&] { quantize(ground, ProbabilityBins{{{0.0, 0.5}, {0.5, 1.0}}, 0.1}); }) == ErrorCode::TooManyCells);
  CHECK(code_of([&] { quantize(ground, ProbabilityBins{{{0.0, 0.5}}, 1.0}); }) == ErrorCode::DegenerateGrid);
  CHECK(code_of([&] { quantize(ground, TrivialGrid{}); }) == ErrorCode::InconsistentDimensions);
  CHECK(code_of([&] { quantize(cloud, TrivialGrid{-100, 100, 1}); }) == ErrorCode::TooManyCells);
  const AttainableCloud empty{sys, 1.0, 0, {}};
  CHECK(code_of([&] { quantize(empty, TrivialGrid{}); }) == ErrorCode::EmptyCloud);
}

TEST_CASE("metric density versus the mu verdict") {
  const auto sys = trivial_system(1);
  std::vector<PiecewiseControl> controls;
  for (int k = -10; k <= 10; ++k) controls.push_back({{k / 10.0}});
  const auto cloud = cloud_from_controls(sys, PlanarState{1.0, 0.0}, 1.0, controls);

  const auto origin = check_eps_density(cloud, {PlanarState{0.0, 0.0}}, 0.5);
  CHECK_FALSE(origin.dense);
  CHECK(origin.targets[0].distance >= 1.0);

  const auto on_line = check_eps_density(cloud, {PlanarState{1.0, -0.95}, PlanarState{1.0, 0.33}}, 0.05 + 1e-12);
  CHECK(on_line.dense);

  const auto mu = check_mu_controllability(cloud, TrivialGrid{-2, 2, 1});
  CHECK(mu.dense);
  CHECK_FALSE(mu.hausdorff);
  CHECK(mu.topology == "mu");
  CHECK_FALSE(check_eps_density(cloud, {PlanarState{0.0, 0.0}}, 0.1).dense);

  // Covering every cell leaves no strict F; the verdict falls back to {∅, X}.
  const auto cover = check_mu_controllability(cloud, TrivialGrid{-1, 1, 1});
  CHECK(cover.topology == "indiscrete");
  CHECK(cover.dense);
  CHECK_FALSE(cover.hausdorff);

  const auto zero = attainable_cloud(schrodinger_system(), WaveFunction(63), 0.1, 10, 0);
  CHECK_FALSE(check_eps_density(zero, {sine_state(63)}, 0.99).dense);
  CHECK(std::abs(check_eps_density(zero, {sine_state(63)}, 0.99).targets[0].distance - 1.0) <= 1e-12);
  const auto zero_mu = check_mu_controllability(zero, ProbabilityBins{{{0.0, 0.5}}, 0.1});
  CHECK(zero_mu.dense);
  CHECK(zero_mu.hit_cells == 1);

  const AttainableCloud empty{sys, 1.0, 0, {}};
  CHECK(code_of([&] { check_mu_controllability(empty, TrivialGrid{}); }) == ErrorCode::EmptyCloud);
  CHECK(code_of([&] { check_eps_density(cloud, {WaveFunction(63)}, 0.1); }) == ErrorCode::InconsistentDimensions);
}

TEST_CASE("property: norm conservation over seeded controls") {
  const auto cloud = attainable_cloud(schrodinger_system(), sine_state(63), 0.1, 20, 77);
  for (const auto& s : cloud.samples) {
    CHECK(std::abs(l2_norm(std::get<WaveFunction>(s.terminal)) - 1.0) <= 1e-10);
  }
}

TEST_CASE("second-order convergence in dt") {
  const auto sys = schrodinger_system(kRefinementBaseDt);
  const double ratio = refinement_ratio(sys, {{5.0, -5.0, 2.5, -1.5}}, sine_state(63), 0.1);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}
