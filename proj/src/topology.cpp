#include "densetop/topology.hpp"

#include <algorithm>
#include <set>

#include "densetop/error.hpp"

namespace densetop {

namespace {

std::vector<Mask> sorted_unique(std::vector<Mask> masks) {
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  return masks;
}

// Gathers the bits of `m` selected by `embedding` into a dense low-order mask.
Mask compress(Mask m, const std::vector<std::size_t>& embedding) {
  Mask out = 0;
  for (std::size_t k = 0; k < embedding.size(); ++k) {
    if ((m >> embedding[k]) & 1U) out |= Mask{1} << k;
  }
  return out;
}

}  // namespace

std::string_view to_string(TopologyAxiom axiom) noexcept {
  switch (axiom) {
    case TopologyAxiom::HasEmpty: return "has_empty";
    case TopologyAxiom::HasFull: return "has_full";
    case TopologyAxiom::UnionClosed: return "union_closed";
    case TopologyAxiom::IntersectionClosed: return "intersection_closed";
  }
  return "unknown";
}

bool ValidityReport::valid() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const TopologyCheck& c) { return c.pass; });
}

const TopologyCheck& ValidityReport::operator[](TopologyAxiom axiom) const {
  for (const auto& c : checks) {
    if (c.axiom == axiom) return c;
  }
  throw Error(ErrorCode::InvalidArgument, "axiom missing from report");
}

ValidityReport verify_topology(std::span<const Subset> family, const Universe& universe) {
  std::vector<Mask> masks;
  masks.reserve(family.size());
  for (const auto& s : family) {
    require_same_universe(universe.size(), s.universe_size());
    masks.push_back(s.mask());
  }
  masks = sorted_unique(std::move(masks));
  const std::set<Mask> members(masks.begin(), masks.end());

  ValidityReport report;
  report.checks.push_back({TopologyAxiom::HasEmpty, members.count(0) != 0, std::nullopt});
  report.checks.push_back({TopologyAxiom::HasFull, members.count(universe.full()) != 0, std::nullopt});

  TopologyCheck unions{TopologyAxiom::UnionClosed, true, std::nullopt};
  TopologyCheck meets{TopologyAxiom::IntersectionClosed, true, std::nullopt};
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = i + 1; j < masks.size(); ++j) {
      const Mask a = masks[i];
      const Mask b = masks[j];
      if (unions.pass && members.count(a | b) == 0) {
        unions.pass = false;
        unions.witness.emplace(Subset(universe, a), Subset(universe, b));
      }
      if (meets.pass && members.count(a & b) == 0) {
        meets.pass = false;
        meets.witness.emplace(Subset(universe, a), Subset(universe, b));
      }
    }
  }
  report.checks.push_back(std::move(unions));
  report.checks.push_back(std::move(meets));
  return report;
}

FiniteTopology FiniteTopology::from_opens(const Universe& universe, std::span<const Subset> family) {
  const auto report = verify_topology(family, universe);
  if (!report.valid()) {
    for (const auto& c : report.checks) {
      if (!c.pass) {
        throw Error(ErrorCode::InvalidTopology,
                    "family is not a topology: " + std::string(to_string(c.axiom)) + " fails");
      }
    }
  }
  std::vector<Mask> masks;
  masks.reserve(family.size());
  for (const auto& s : family) masks.push_back(s.mask());
  return make_topology_unchecked(universe, std::move(masks));
}

FiniteTopology make_topology_unchecked(const Universe& universe, std::vector<Mask> opens) {
  return FiniteTopology(universe, sorted_unique(std::move(opens)));
}

std::vector<Subset> FiniteTopology::opens() const {
  std::vector<Subset> out;
  out.reserve(opens_.size());
  for (Mask m : opens_) out.emplace_back(universe_, m);
  return out;
}

bool FiniteTopology::is_open(const Subset& s) const {
  require_same_universe(universe_.size(), s.universe_size());
  return std::binary_search(opens_.begin(), opens_.end(), s.mask());
}

bool FiniteTopology::is_closed(const Subset& s) const { return is_open(complement(s)); }

FiniteTopology discrete_topology(const Universe& universe) {
  if (universe.size() > kMaxEnumerableSize) {
    throw Error(ErrorCode::BoundExceeded, "discrete topology limited to n <= 20");
  }
  std::vector<Mask> all(std::size_t{1} << universe.size());
  for (std::size_t m = 0; m < all.size(); ++m) all[m] = m;
  return make_topology_unchecked(universe, std::move(all));
}

FiniteTopology indiscrete_topology(const Universe& universe) {
  return make_topology_unchecked(universe, {0, universe.full()});
}

FiniteTopology generate_topology(const Universe& universe, std::span<const Subset> subbase) {
  std::set<Mask> family{0, universe.full()};
  for (const auto& s : subbase) {
    require_same_universe(universe.size(), s.universe_size());
    family.insert(s.mask());
  }
  auto close_under = [&family](auto combine) {
    bool grew = true;
    while (grew) {
      grew = false;
      const std::vector<Mask> snapshot(family.begin(), family.end());
      for (std::size_t i = 0; i < snapshot.size(); ++i) {
        for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
          grew |= family.insert(combine(snapshot[i], snapshot[j])).second;
        }
      }
    }
  };
  // Finite intersections first give a base; unions of base members then stay
  // intersection-closed.
  close_under([](Mask a, Mask b) { return a & b; });
  close_under([](Mask a, Mask b) { return a | b; });
  return make_topology_unchecked(universe, std::vector<Mask>(family.begin(), family.end()));
}

void require_proper_nonempty(const Universe& universe, const Subset& dense_set) {
  require_same_universe(universe.size(), dense_set.universe_size());
  if (dense_set.is_empty()) {
    throw Error(ErrorCode::EmptyF, "F must be nonempty");
  }
  if (dense_set.is_full()) {
    throw Error(ErrorCode::FullF, "F must be a strict subset of X");
  }
}

FiniteTopology mu_topology(const Universe& universe, const Subset& dense_set) {
  require_proper_nonempty(universe, dense_set);
  if (dense_set.count() > kMaxEnumerableSize) {
    throw Error(ErrorCode::BoundExceeded, "mu topology has 2^|F| + 1 opens; |F| limited to 20");
  }
  const Mask f = dense_set.mask();
  std::vector<Mask> opens;
  opens.reserve((std::size_t{1} << dense_set.count()) + 1);
  // Walk every submask of F, including F itself and the empty set.
  Mask s = f;
  while (true) {
    opens.push_back(s);
    if (s == 0) break;
    s = (s - 1) & f;
  }
  opens.push_back(universe.full());
  return make_topology_unchecked(universe, std::move(opens));
}

Subset closure_of(const FiniteTopology& t, const Subset& a) {
  require_same_universe(t.universe().size(), a.universe_size());
  Mask closed = t.universe().full();
  for (Mask u : t.open_masks()) {
    if ((u & a.mask()) == 0) closed &= ~u;
  }
  return {t.universe(), closed};
}

Subset interior_of(const FiniteTopology& t, const Subset& a) {
  require_same_universe(t.universe().size(), a.universe_size());
  Mask inner = 0;
  for (Mask u : t.open_masks()) {
    if ((u & ~a.mask()) == 0) inner |= u;
  }
  return {t.universe(), inner};
}

bool is_dense(const FiniteTopology& t, const Subset& a) { return closure_of(t, a).is_full(); }

Subset Subspace::lift(const Subset& s) const {
  require_same_universe(embedding.size(), s.universe_size());
  Mask out = 0;
  for (std::size_t k : s.indices()) out |= Mask{1} << embedding[k];
  return {Universe(parent_size), out};
}

Subspace subspace(const FiniteTopology& t, const Subset& y) {
  require_same_universe(t.universe().size(), y.universe_size());
  if (y.is_empty()) {
    throw Error(ErrorCode::EmptySubspace, "subspace requires a nonempty Y");
  }
  const auto embedding = y.indices();
  std::vector<std::string> labels;
  if (t.universe().has_labels()) {
    for (std::size_t i : embedding) labels.push_back(t.universe().labels()[i]);
  }
  Universe sub(embedding.size(), std::move(labels));
  std::vector<Mask> traces;
  traces.reserve(t.open_count());
  for (Mask u : t.open_masks()) traces.push_back(compress(u & y.mask(), embedding));
  return {make_topology_unchecked(sub, std::move(traces)), embedding, t.universe().size()};
}

bool is_coarser(const FiniteTopology& coarse, const FiniteTopology& fine) {
  require_same_universe(coarse.universe().size(), fine.universe().size());
  const auto& f = fine.open_masks();
  return std::all_of(coarse.open_masks().begin(), coarse.open_masks().end(),
                     [&f](Mask u) { return std::binary_search(f.begin(), f.end(), u); });
}

SeparationProfile separation_profile(const FiniteTopology& t) {
  const std::size_t n = t.universe().size();
  std::vector<std::vector<Mask>> neighbourhoods(n);
  for (Mask u : t.open_masks()) {
    for (std::size_t x = 0; x < n; ++x) {
      if ((u >> x) & 1U) neighbourhoods[x].push_back(u);
    }
  }

  SeparationProfile profile;
  for (std::size_t x = 0; x < n; ++x) {
    if (profile.t1 && !t.is_closed(Subset(t.universe(), Mask{1} << x))) {
      profile.t1 = false;
      profile.t1_witness = x;
    }
    for (std::size_t y = x + 1; y < n; ++y) {
      const Mask bx = Mask{1} << x;
      const Mask by = Mask{1} << y;
      const bool distinguished = std::any_of(
          t.open_masks().begin(), t.open_masks().end(),
          [&](Mask u) { return ((u & bx) != 0) != ((u & by) != 0); });
      if (profile.t0 && !distinguished) {
        profile.t0 = false;
        profile.t0_witness.emplace(x, y);
      }
      bool separated = false;
      for (Mask u : neighbourhoods[x]) {
        for (Mask v : neighbourhoods[y]) {
          if ((u & v) == 0) {
            separated = true;
            break;
          }
        }
        if (separated) break;
      }
      if (profile.hausdorff && !separated) {
        profile.hausdorff = false;
        profile.hausdorff_witness.emplace(x, y);
      }
    }
  }
  return profile;
}

std::vector<FiniteTopology> enumerate_topologies(std::size_t n) {
  if (n == 0 || n > kMaxEnumeratedTopologySize) {
    throw Error(ErrorCode::BoundExceeded, "topology enumeration limited to 1 <= n <= 4");
  }
  const Universe u(n);
  const std::size_t points = std::size_t{1} << n;  // |P(X)|
  const std::uint64_t families = std::uint64_t{1} << points;
  std::vector<FiniteTopology> out;
  std::vector<Subset> family;
  for (std::uint64_t code = 0; code < families; ++code) {
    family.clear();
    for (std::size_t m = 0; m < points; ++m) {
      if ((code >> m) & 1U) family.emplace_back(u, static_cast<Mask>(m));
    }
    if (verify_topology(family, u).valid()) {
      out.push_back(FiniteTopology::from_opens(u, family));
    }
  }
  return out;
}

}  // namespace densetop
