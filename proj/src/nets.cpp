#include "densetop/nets.hpp"

#include <algorithm>
#include <bit>

#include "densetop/error.hpp"

namespace densetop {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

bool any_bits(std::span<const std::uint64_t> words) {
  return std::any_of(words.begin(), words.end(), [](std::uint64_t w) { return w != 0; });
}

// Index elements whose point lies in `a`.
std::vector<std::uint64_t> membership(const Net& net, Mask a) {
  std::vector<std::uint64_t> good(net.index().words_per_row(), 0);
  const auto& pts = net.points();
  for (std::size_t alpha = 0; alpha < pts.size(); ++alpha) {
    if ((a >> pts[alpha]) & 1U) good[alpha / 64] |= std::uint64_t{1} << (alpha % 64);
  }
  return good;
}

bool eventually_in_mask(const Net& net, Mask a, TailOrder order) {
  const auto good = membership(net, a);
  const DirectedSet& d = net.index();
  for (std::size_t beta = 0; beta < d.size(); ++beta) {
    const auto up = d.upper_set(beta);
    bool tail_inside = true;
    for (std::size_t w = 0; w < up.size() && tail_inside; ++w) {
      std::uint64_t tail = up[w];
      if (order == TailOrder::Strict && w == beta / 64) tail &= ~(std::uint64_t{1} << (beta % 64));
      tail_inside = (tail & ~good[w]) == 0;
    }
    if (tail_inside) return true;
  }
  return false;
}

bool converges_mask(const Net& net, std::size_t x, const FiniteTopology& t, TailOrder order) {
  for (Mask u : t.open_masks()) {
    if (((u >> x) & 1U) && !eventually_in_mask(net, u, order)) return false;
  }
  return true;
}

Net net_over_filter(const NeighbourhoodFilter& filter, Mask a, std::size_t x, std::size_t n) {
  std::vector<std::size_t> points;
  points.reserve(filter.neighbourhoods.size());
  const bool x_in_a = ((a >> x) & 1U) != 0;
  for (Mask u : filter.neighbourhoods) {
    points.push_back(x_in_a ? x : static_cast<std::size_t>(std::countr_zero(u & a)));
  }
  return Net(filter.order, std::move(points), n);
}

}  // namespace

DirectedSet::DirectedSet(std::size_t size, std::span<const std::pair<std::size_t, std::size_t>> leq)
    : size_(size), words_(words_for(size)), rows_(size * words_for(size), 0) {
  if (size_ == 0) throw Error(ErrorCode::InvalidArgument, "directed set must be nonempty");
  for (auto [a, b] : leq) {
    if (a >= size_ || b >= size_) {
      throw Error(ErrorCode::InvalidArgument, "order pair references an index outside the carrier");
    }
    rows_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
  }
}

DirectedSet DirectedSet::chain(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> leq;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) leq.emplace_back(a, b);
  }
  return DirectedSet(k, leq);
}

DirectedSet DirectedSet::grid(std::size_t rows, std::size_t cols) {
  std::vector<std::pair<std::size_t, std::size_t>> leq;
  for (std::size_t r1 = 0; r1 < rows; ++r1) {
    for (std::size_t c1 = 0; c1 < cols; ++c1) {
      for (std::size_t r2 = r1; r2 < rows; ++r2) {
        for (std::size_t c2 = c1; c2 < cols; ++c2) leq.emplace_back(r1 * cols + c1, r2 * cols + c2);
      }
    }
  }
  return DirectedSet(rows * cols, leq);
}

std::vector<std::pair<std::size_t, std::size_t>> DirectedSet::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < size_; ++a) {
    for (std::size_t b = 0; b < size_; ++b) {
      if (bit(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

bool DirectedReport::valid() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const OrderCheck& c) { return c.pass; });
}

const OrderCheck& DirectedReport::operator[](std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::InvalidArgument, "no check named " + std::string(name));
}

DirectedReport verify_directed(const DirectedSet& d) {
  const std::size_t k = d.size();
  OrderCheck reflexive{"reflexive", true, {}};
  OrderCheck antisymmetric{"antisymmetric", true, {}};
  OrderCheck transitive{"transitive", true, {}};
  OrderCheck upper{"upper_bounds", true, {}};

  for (std::size_t a = 0; a < k; ++a) {
    if (reflexive.pass && !d.leq(a, a)) {
      reflexive.pass = false;
      reflexive.witness = {a};
    }
    for (std::size_t b = 0; b < k; ++b) {
      if (antisymmetric.pass && a != b && d.leq(a, b) && d.leq(b, a)) {
        antisymmetric.pass = false;
        antisymmetric.witness = {a, b};
      }
      if (transitive.pass && d.leq(a, b)) {
        for (std::size_t c = 0; c < k; ++c) {
          if (d.leq(b, c) && !d.leq(a, c)) {
            transitive.pass = false;
            transitive.witness = {a, b, c};
            break;
          }
        }
      }
      if (upper.pass && b > a) {
        const auto ua = d.upper_set(a);
        const auto ub = d.upper_set(b);
        std::vector<std::uint64_t> both(ua.size());
        for (std::size_t w = 0; w < ua.size(); ++w) both[w] = ua[w] & ub[w];
        if (!any_bits(both)) {
          upper.pass = false;
          upper.witness = {a, b};
        }
      }
    }
  }
  return {{reflexive, antisymmetric, transitive, upper}};
}

Net::Net(DirectedSet index, std::vector<std::size_t> points, std::size_t universe_size)
    : index_(std::move(index)), points_(std::move(points)), universe_size_(universe_size) {
  if (points_.size() != index_.size()) {
    throw Error(ErrorCode::InvalidArgument, "net needs exactly one point per index element");
  }
  for (std::size_t p : points_) {
    if (p >= universe_size_) throw Error(ErrorCode::InvalidArgument, "net point outside the universe");
  }
}

bool eventually_in(const Net& net, const Subset& a, TailOrder order) {
  require_same_universe(net.universe_size(), a.universe_size());
  return eventually_in_mask(net, a.mask(), order);
}

bool converges_to(const Net& net, std::size_t x, const FiniteTopology& t, TailOrder order) {
  require_same_universe(net.universe_size(), t.universe().size());
  if (x >= t.universe().size()) throw Error(ErrorCode::InvalidArgument, "limit point outside the universe");
  return converges_mask(net, x, t, order);
}

NeighbourhoodFilter neighbourhood_filter(const FiniteTopology& t, std::size_t x) {
  if (x >= t.universe().size()) throw Error(ErrorCode::InvalidArgument, "point outside the universe");
  std::vector<Mask> nbhds;
  for (Mask u : t.open_masks()) {
    if ((u >> x) & 1U) nbhds.push_back(u);
  }
  std::vector<std::pair<std::size_t, std::size_t>> leq;
  for (std::size_t i = 0; i < nbhds.size(); ++i) {
    for (std::size_t j = 0; j < nbhds.size(); ++j) {
      if ((nbhds[j] & ~nbhds[i]) == 0) leq.emplace_back(i, j);
    }
  }
  return {DirectedSet(nbhds.size(), leq), std::move(nbhds)};
}

std::optional<Net> witness_net(const FiniteTopology& t, const Subset& a, std::size_t x) {
  require_same_universe(t.universe().size(), a.universe_size());
  if (!closure_of(t, a).contains(x)) return std::nullopt;
  return net_over_filter(neighbourhood_filter(t, x), a.mask(), x, t.universe().size());
}

bool check_closure_net_theorem(const FiniteTopology& t) {
  const Universe& u = t.universe();
  if (u.size() > kMaxNetTheoremSize) {
    throw Error(ErrorCode::BoundExceeded, "net theorem check limited to n <= 8");
  }
  for (std::size_t x = 0; x < u.size(); ++x) {
    const auto filter = neighbourhood_filter(t, x);
    if (!verify_directed(filter.order).valid()) return false;
    for (const Subset a : enumerate_subsets(u)) {
      const bool in_closure = closure_of(t, a).contains(x);
      const auto net = witness_net(t, a, x);
      if (in_closure != net.has_value()) return false;
      if (!net) continue;
      if (!std::all_of(net->points().begin(), net->points().end(),
                       [&a](std::size_t p) { return a.contains(p); })) {
        return false;
      }
      if (!converges_mask(*net, x, t, TailOrder::Reflexive)) return false;
    }
  }
  return true;
}

Net random_net(std::size_t universe_size, std::mt19937_64& rng) {
  constexpr std::size_t kMaxIndex = 8;
  DirectedSet index = [&rng] {
    if (rng() % 2 == 0) return DirectedSet::chain(1 + rng() % kMaxIndex);
    const std::size_t rows = 1 + rng() % 4;
    const std::size_t cols = 1 + rng() % (kMaxIndex / rows);
    return DirectedSet::grid(rows, cols);
  }();
  std::vector<std::size_t> points(index.size());
  for (auto& p : points) p = rng() % universe_size;
  return Net(std::move(index), std::move(points), universe_size);
}

FinalLemmaReport check_final_lemma(const FiniteTopology& g, const Subset& dense_set,
                                   std::size_t trials, std::uint64_t seed) {
  const Universe& u = g.universe();
  require_proper_nonempty(u, dense_set);
  if (!g.is_closed(dense_set)) {
    throw Error(ErrorCode::FNotClosed, "F must be closed in G");
  }
  const auto mu = mu_topology(u, dense_set);
  const auto sub = subspace(g, dense_set);
  std::vector<Subset> thetas;
  for (const auto& s : sub.topology.opens()) thetas.push_back(sub.lift(s));

  FinalLemmaReport report;
  std::mt19937_64 rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Net net = random_net(u.size(), rng);
    ++report.trials;
    for (std::size_t x = 0; x < u.size(); ++x) {
      if (!converges_mask(net, x, mu, TailOrder::Reflexive)) continue;
      ++report.convergent;
      for (const auto& theta : thetas) {
        if (!theta.contains(x)) continue;
        ++report.checks;
        if (!eventually_in_mask(net, theta.mask(), TailOrder::Reflexive)) {
          report.holds = false;
          if (!report.counterexample) report.counterexample = FinalLemmaCounterexample{net, x, theta};
        }
      }
    }
  }
  return report;
}

}  // namespace densetop
