#include "densetop/closure.hpp"

#include <algorithm>
#include <random>

namespace densetop {

namespace {

Mask random_mask(std::mt19937_64& rng, Mask full) { return rng() & full; }

}  // namespace

ClosureOperator make_mu(const Universe& universe, const Subset& dense_set) {
  require_proper_nonempty(universe, dense_set);
  return ClosureOperator(universe, MuRule{dense_set});
}

ClosureOperator ClosureOperator::identity(const Universe& universe) {
  return ClosureOperator(universe, IdentityRule{});
}

ClosureOperator ClosureOperator::table(const Universe& universe, std::span<const Subset> images) {
  if (universe.size() > kMaxTableSize) {
    throw Error(ErrorCode::BoundExceeded, "tabulated operators limited to n <= 16");
  }
  const std::size_t expected = std::size_t{1} << universe.size();
  if (images.size() != expected) {
    throw Error(ErrorCode::InvalidArgument, "table must map all " + std::to_string(expected) + " subsets");
  }
  TableRule rule;
  rule.images.reserve(expected);
  for (const auto& s : images) {
    require_same_universe(universe.size(), s.universe_size());
    rule.images.push_back(s.mask());
  }
  return ClosureOperator(universe, std::move(rule));
}

Mask ClosureOperator::apply_mask(Mask a) const noexcept {
  struct Visitor {
    Mask a;
    Mask full;
    Mask operator()(const MuRule& r) const noexcept {
      return a == 0 ? Mask{0} : (a | (~r.dense_set.mask() & full));
    }
    Mask operator()(const IdentityRule&) const noexcept { return a; }
    Mask operator()(const TableRule& r) const noexcept { return r.images[a]; }
  };
  return std::visit(Visitor{a, universe_.full()}, rule_);
}

Subset ClosureOperator::apply(const Subset& a) const {
  require_same_universe(universe_.size(), a.universe_size());
  return {universe_, apply_mask(a.mask())};
}

std::string_view to_string(Axiom axiom) noexcept {
  switch (axiom) {
    case Axiom::Empty: return "i_empty";
    case Axiom::Extensive: return "ii_extensive";
    case Axiom::Idempotent: return "iii_idempotent";
    case Axiom::Additive: return "iv_additive";
  }
  return "unknown";
}

bool AxiomReport::all_pass() const noexcept {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

namespace {

// Records the first failure of each axiom.
class AxiomRecorder {
 public:
  explicit AxiomRecorder(const Universe& u) : u_(u) {}

  void check_unary(const ClosureOperator& g, Mask a, Mask image) {
    auto& ext = report_[Axiom::Extensive];
    if (ext.pass && (a & ~image) != 0) {
      ext.pass = false;
      ext.witness_a.emplace(u_, a);
    }
    auto& idem = report_[Axiom::Idempotent];
    if (idem.pass && g.apply_mask(image) != image) {
      idem.pass = false;
      idem.witness_a.emplace(u_, a);
    }
  }

  void check_pair(Mask a, Mask b, Mask image_a, Mask image_b, Mask image_ab) {
    auto& add = report_[Axiom::Additive];
    if (add.pass && image_ab != (image_a | image_b)) {
      add.pass = false;
      add.witness_a.emplace(u_, a);
      add.witness_b.emplace(u_, b);
    }
  }

  void check_empty(Mask image_of_empty) {
    auto& e = report_[Axiom::Empty];
    if (image_of_empty != 0) {
      e.pass = false;
      e.witness_a.emplace(u_, Mask{0});
    }
  }

  bool additive_failed() const noexcept { return !report_[Axiom::Additive].pass; }
  AxiomReport take() { return std::move(report_); }

 private:
  const Universe& u_;
  AxiomReport report_;
};

}  // namespace

AxiomReport verify_kuratowski(const ClosureOperator& gamma, VerifyMode mode) {
  const Universe& u = gamma.universe();
  AxiomRecorder rec(u);
  rec.check_empty(gamma.apply_mask(0));

  if (std::holds_alternative<Exhaustive>(mode)) {
    if (u.size() > kMaxExhaustiveAxiomSize) {
      throw Error(ErrorCode::BoundExceeded,
                  "exhaustive axiom check limited to n <= 12, got " + std::to_string(u.size()));
    }
    const std::size_t count = std::size_t{1} << u.size();
    std::vector<Mask> images(count);
    for (std::size_t a = 0; a < count; ++a) {
      images[a] = gamma.apply_mask(a);
      rec.check_unary(gamma, a, images[a]);
    }
    for (std::size_t a = 0; a < count && !rec.additive_failed(); ++a) {
      for (std::size_t b = 0; b < count; ++b) {
        if (images[a | b] != (images[a] | images[b])) {
          rec.check_pair(a, b, images[a], images[b], images[a | b]);
          break;
        }
      }
    }
    return rec.take();
  }

  const auto& sampled = std::get<Sampled>(mode);
  std::mt19937_64 rng(sampled.seed);
  const Mask full = u.full();
  for (std::size_t t = 0; t < sampled.trials; ++t) {
    const Mask a = random_mask(rng, full);
    const Mask b = random_mask(rng, full);
    const Mask ia = gamma.apply_mask(a);
    const Mask ib = gamma.apply_mask(b);
    rec.check_unary(gamma, a, ia);
    rec.check_pair(a, b, ia, ib, gamma.apply_mask(a | b));
  }
  return rec.take();
}

NotAClosureOperator::NotAClosureOperator(AxiomReport report)
    : Error(ErrorCode::NotAClosureOperator, "operator violates the Kuratowski axioms"),
      report_(std::move(report)) {}

FiniteTopology topology_from_closure(const ClosureOperator& gamma) {
  auto report = verify_kuratowski(gamma, Exhaustive{});
  if (!report.all_pass()) throw NotAClosureOperator(std::move(report));

  const Universe& u = gamma.universe();
  const std::size_t count = std::size_t{1} << u.size();
  std::vector<Mask> opens;
  opens.reserve(count);
  for (std::size_t a = 0; a < count; ++a) opens.push_back(~gamma.apply_mask(a) & u.full());
  return make_topology_unchecked(u, std::move(opens));
}

std::vector<Subset> mu_image_family(const FiniteTopology& g, const Subset& dense_set) {
  const auto mu = make_mu(g.universe(), dense_set);
  std::vector<Mask> masks;
  for (Mask theta : g.open_masks()) masks.push_back(~mu.apply_mask(theta) & g.universe().full());
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<Subset> out;
  for (Mask m : masks) out.emplace_back(g.universe(), m);
  return out;
}

}  // namespace densetop
