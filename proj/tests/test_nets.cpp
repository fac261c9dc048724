#include "densetop/nets.hpp"

#include <random>

#include "densetop/closure.hpp"
#include "test_helpers.hpp"

using namespace densetop;
using test::code_of;

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

Net constant_net(std::size_t x, std::size_t n, std::size_t len = 3) {
  return Net(DirectedSet::chain(len), std::vector<std::size_t>(len, x), n);
}

}  // namespace

TEST_CASE("verify_directed") {
  CHECK(verify_directed(DirectedSet::chain(3)).valid());
  CHECK(verify_directed(DirectedSet::grid(2, 3)).valid());

  const Pairs two_tops{{0, 0}, {1, 1}};
  const auto split = verify_directed(DirectedSet(2, two_tops));
  CHECK_FALSE(split.valid());
  CHECK(split["reflexive"].pass);
  CHECK_FALSE(split["upper_bounds"].pass);
  CHECK(split["upper_bounds"].witness == std::vector<std::size_t>{0, 1});

  const Pairs cycle{{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  CHECK_FALSE(verify_directed(DirectedSet(2, cycle))["antisymmetric"].pass);
  const Pairs gap{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}};
  const auto nontransitive = verify_directed(DirectedSet(3, gap));
  CHECK_FALSE(nontransitive["transitive"].pass);
  CHECK(nontransitive["transitive"].witness == std::vector<std::size_t>{0, 1, 2});
  const Pairs bare{{0, 1}};
  CHECK_FALSE(verify_directed(DirectedSet(2, bare))["reflexive"].pass);

  const Universe u(3);
  const auto mu = mu_topology(u, Subset(u, {0, 1}));
  for (std::size_t x = 0; x < 3; ++x) CHECK(verify_directed(neighbourhood_filter(mu, x).order).valid());

  CHECK(code_of([] { DirectedSet(2, Pairs{{0, 2}}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { DirectedSet(0, Pairs{}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("eventually_in") {
  const Universe u(3);
  CHECK(eventually_in(constant_net(1, 3), Subset(u, {1, 2})));
  CHECK_FALSE(eventually_in(constant_net(1, 3), Subset(u, {0, 2})));

  const Net tail(DirectedSet::chain(4), {0, 0, 2, 2}, 3);
  CHECK(eventually_in(tail, Subset(u, {2})));
  CHECK_FALSE(eventually_in(tail, Subset(u, {0})));

  CHECK(code_of([&] { eventually_in(tail, Subset(Universe(4), {0})); }) == ErrorCode::UniverseMismatch);
  CHECK(code_of([] { Net(DirectedSet::chain(2), {0}, 3); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { Net(DirectedSet::chain(2), {0, 3}, 3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("strict tails are vacuous at a maximum") {
  // A finite directed set has a greatest element, whose strict tail is empty:
  // under the strict reading every net is eventually in every set.
  const Universe u(3);
  const Net tail(DirectedSet::chain(4), {0, 0, 2, 2}, 3);
  CHECK(eventually_in(tail, Subset(u, {0}), TailOrder::Strict));
  CHECK(eventually_in(tail, Subset::empty(u), TailOrder::Strict));
  CHECK_FALSE(eventually_in(tail, Subset::empty(u), TailOrder::Reflexive));

  const auto d = discrete_topology(u);
  CHECK(converges_to(tail, 0, d, TailOrder::Strict));
  CHECK_FALSE(converges_to(tail, 0, d, TailOrder::Reflexive));
}

TEST_CASE("convergence in the mu topology") {
  const Universe u(3);
  const auto mu = mu_topology(u, Subset(u, {0, 1}));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Net net = random_net(3, rng);
    // x = 2 lies outside F: its only neighbourhood is X.
    CHECK(converges_to(net, 2, mu));
    // x in F: {x} is open, so convergence means the tail is constantly x.
    for (std::size_t x : {0U, 1U}) {
      CHECK(converges_to(net, x, mu) == eventually_in(net, Subset(u, {x})));
    }
  }
  CHECK(converges_to(constant_net(0, 3), 0, mu));
  CHECK_FALSE(converges_to(constant_net(1, 3), 0, mu));

  const auto d = discrete_topology(u);
  const Net settles(DirectedSet::chain(3), {2, 1, 1}, 3);
  CHECK(converges_to(settles, 1, d));
  CHECK_FALSE(converges_to(settles, 2, d));
  CHECK(code_of([&] { converges_to(settles, 0, discrete_topology(Universe(4))); }) ==
        ErrorCode::UniverseMismatch);
}

TEST_CASE("witness nets") {
  const Universe u(3);
  const auto mu = mu_topology(u, Subset(u, {0, 1}));

  const auto w = witness_net(mu, Subset(u, {0}), 2);
  REQUIRE(w.has_value());
  CHECK(w->index().size() == 1);  // only X is a neighbourhood of 2
  CHECK(w->points() == std::vector<std::size_t>{0});
  CHECK(converges_to(*w, 2, mu));

  CHECK_FALSE(witness_net(mu, Subset(u, {2}), 0).has_value());

  const auto g = generate_topology(u, std::vector<Subset>{Subset(u, {0}), Subset(u, {1, 2})});
  const auto same = witness_net(g, Subset(u, {1, 2}), 1);
  REQUIRE(same.has_value());
  for (std::size_t p : same->points()) CHECK(p == 1);
}

TEST_CASE("closure-via-nets on small spaces") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& t : enumerate_topologies(n)) CHECK(check_closure_net_theorem(t));
  }
  for (std::size_t n = 2; n <= 5; ++n) {
    const Universe u(n);
    for (Mask f = 1; f < u.full(); ++f) CHECK(check_closure_net_theorem(mu_topology(u, Subset(u, f))));
  }
  CHECK(check_closure_net_theorem(discrete_topology(Universe(8))));
  CHECK(code_of([] { check_closure_net_theorem(discrete_topology(Universe(9))); }) == ErrorCode::BoundExceeded);
}

TEST_CASE("property: witness filters are directed and limits of mu-convergent nets include F^c") {
  std::mt19937_64 rng(5);
  for (std::size_t n = 2; n <= 5; ++n) {
    const Universe u(n);
    for (Mask fm = 1; fm < u.full(); ++fm) {
      const Subset f(u, fm);
      const auto mu = mu_topology(u, f);
      for (const Subset a : enumerate_subsets(u)) {
        for (std::size_t x = 0; x < n; ++x) {
          if (auto w = witness_net(mu, a, x)) CHECK(verify_directed(w->index()).valid());
        }
      }
      for (int k = 0; k < 20; ++k) {
        const Net net = random_net(n, rng);
        bool convergent = false;
        for (std::size_t x = 0; x < n; ++x) convergent = convergent || converges_to(net, x, mu);
        if (!convergent) continue;
        for (std::size_t x : complement(f).indices()) CHECK(converges_to(net, x, mu));
      }
    }
  }
}

TEST_CASE("property: convergence is inherited by coarser topologies") {
  std::mt19937_64 rng(9);
  for (std::size_t n = 2; n <= 3; ++n) {
    const auto all = enumerate_topologies(n);
    for (const auto& fine : all) {
      for (const auto& coarse : all) {
        if (!is_coarser(coarse, fine)) continue;
        for (int k = 0; k < 5; ++k) {
          const Net net = random_net(n, rng);
          for (std::size_t x = 0; x < n; ++x) {
            if (converges_to(net, x, fine)) CHECK(converges_to(net, x, coarse));
          }
        }
      }
    }
  }
}

TEST_CASE("reflexive convergence is decided by the net's value at the top") {
  // Independent characterization: a finite directed set has a greatest
  // element m, and the net converges to x iff x ∈ cl({net(m)}).
  std::mt19937_64 rng(21);
  for (const auto& t : enumerate_topologies(3)) {
    for (int k = 0; k < 10; ++k) {
      const Net net = random_net(3, rng);
      const std::size_t top = net.index().size() - 1;  // chains and grids end at their maximum
      const Subset at_top(t.universe(), Mask{1} << net.points()[top]);
      for (std::size_t x = 0; x < 3; ++x) CHECK(converges_to(net, x, t) == closure_of(t, at_top).contains(x));
    }
  }
}

TEST_CASE("final lemma") {
  const Universe u(4);
  // G with F = {0,1} closed: its complement {2,3} is open.
  const auto g = generate_topology(u, std::vector<Subset>{Subset(u, {2, 3}), Subset(u, {0, 2, 3})});
  const Subset f(u, {0, 1});
  const auto report = check_final_lemma(g, f, 500, 17);
  CHECK(report.holds);
  CHECK(report.trials == 500);
  CHECK(report.convergent > 0);
  CHECK(report.checks > 0);
  CHECK_FALSE(report.counterexample.has_value());

  // Points outside F lie in no G_F-open, so they contribute no checks.
  const auto sub = subspace(g, f);
  for (const auto& theta : sub.topology.opens()) CHECK(sub.lift(theta).is_subset_of(f));

  CHECK(code_of([&] { check_final_lemma(g, Subset(u, {2}), 10, 0); }) == ErrorCode::FNotClosed);
  CHECK(code_of([&] { check_final_lemma(g, Subset::empty(u), 10, 0); }) == ErrorCode::EmptyF);
}
