#include "densetop/io.hpp"

#include "densetop/error.hpp"

namespace densetop::io {

namespace {

template <typename F>
auto guarded(std::string_view what, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

json optional_subset(const std::optional<Subset>& s) { return s ? to_json(*s) : json(nullptr); }

}  // namespace

json to_json(const Universe& u) {
  json j{{"size", u.size()}};
  if (u.has_labels()) j["labels"] = u.labels();
  return j;
}

json to_json(const Subset& s) { return s.indices(); }

json to_json(const ClosureOperator& gamma) {
  struct Visitor {
    const ClosureOperator& g;
    json operator()(const MuRule& r) const { return {{"rule", "mu"}, {"F", to_json(r.dense_set)}}; }
    json operator()(const IdentityRule&) const { return {{"rule", "identity"}}; }
    json operator()(const TableRule& r) const {
      json entries = json::array();
      for (std::size_t a = 0; a < r.images.size(); ++a) {
        entries.push_back({to_json(Subset(g.universe(), a)), to_json(Subset(g.universe(), r.images[a]))});
      }
      return {{"rule", "table"}, {"entries", entries}};
    }
  };
  return std::visit(Visitor{gamma}, gamma.rule());
}

json to_json(const AxiomReport& report) {
  json j = json::object();
  for (const auto& r : report.results) {
    j[std::string(to_string(r.axiom))] = {
        {"pass", r.pass}, {"witnessA", optional_subset(r.witness_a)}, {"witnessB", optional_subset(r.witness_b)}};
  }
  return j;
}

json to_json(const FiniteTopology& t) {
  json opens = json::array();
  for (const auto& s : t.opens()) opens.push_back(to_json(s));
  return {{"universe", to_json(t.universe())}, {"opens", opens}};
}

json to_json(const ValidityReport& report) {
  json j = json::object();
  for (const auto& c : report.checks) {
    json witness = nullptr;
    if (c.witness) witness = {to_json(c.witness->first), to_json(c.witness->second)};
    j[std::string(to_string(c.axiom))] = {{"pass", c.pass}, {"witness", witness}};
  }
  return j;
}

json to_json(const SeparationProfile& p) {
  auto pair_or_null = [](const std::optional<std::pair<std::size_t, std::size_t>>& w) {
    return w ? json{w->first, w->second} : json(nullptr);
  };
  return {{"t0", p.t0},
          {"t1", p.t1},
          {"hausdorff", p.hausdorff},
          {"t0_witness", pair_or_null(p.t0_witness)},
          {"t1_witness", p.t1_witness ? json(*p.t1_witness) : json(nullptr)},
          {"hausdorff_witness", pair_or_null(p.hausdorff_witness)}};
}

json to_json(const DirectedSet& d) {
  json leq = json::array();
  for (auto [a, b] : d.pairs()) leq.push_back({a, b});
  return {{"size", d.size()}, {"leq", leq}};
}

json to_json(const DirectedReport& report) {
  json j = json::object();
  for (const auto& c : report.checks) {
    j[c.name] = {{"pass", c.pass}, {"witness", c.pass ? json(nullptr) : json(c.witness)}};
  }
  return j;
}

json to_json(const Net& net) { return {{"index", to_json(net.index())}, {"points", net.points()}}; }

json to_json(const FinalLemmaReport& r) {
  json j{{"holds", r.holds}, {"trials", r.trials}, {"convergent", r.convergent}, {"checks", r.checks}};
  if (r.counterexample) {
    j["counterexample"] = {{"net", to_json(r.counterexample->net)},
                           {"limit", r.counterexample->limit},
                           {"theta", to_json(r.counterexample->theta)}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

json to_json(const StateVector& x) {
  if (const auto* p = std::get_if<PlanarState>(&x)) return json{p->x1, p->x2};
  json out = json::array();
  for (const auto& z : std::get<WaveFunction>(x)) out.push_back({z.real(), z.imag()});
  return out;
}

json to_json(const ControlledSystem& sys) {
  json j{{"segments", sys.controls().segments}, {"amplitude", sys.controls().amplitude}};
  if (const auto* t = std::get_if<TrivialDynamics>(&sys.dynamics())) {
    j["kind"] = "trivial";
    j["c"] = t->c;
  } else {
    const auto& s = std::get<SchrodingerDynamics>(sys.dynamics());
    j["kind"] = "schrodinger";
    j["N"] = s.grid_points;
    j["dt"] = s.dt;
  }
  return j;
}

json to_json(const AttainableCloud& cloud) {
  json samples = json::array();
  for (const auto& s : cloud.samples) {
    samples.push_back({{"control", s.control.values}, {"terminal", to_json(s.terminal)}});
  }
  return {{"system", to_json(cloud.system)},
          {"T", cloud.horizon},
          {"seed", cloud.seed},
          {"K", cloud.samples.size()},
          {"samples", samples}};
}

json to_json(const DensityReport& r) {
  json targets = json::array();
  for (const auto& t : r.targets) targets.push_back({{"nearest", t.nearest}, {"distance", t.distance}});
  return {{"eps", r.eps}, {"dense", r.dense}, {"targets", targets}};
}

json to_json(const MuReport& r) {
  return {{"universe_size", r.universe_size}, {"hit_cells", r.hit_cells}, {"open_count", r.open_count},
          {"dense", r.dense},                 {"hausdorff", r.hausdorff}, {"topology", r.topology}};
}

Universe universe_from_json(const json& j) {
  return guarded("universe", [&] {
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return Universe(j.at("size").get<std::size_t>(), std::move(labels));
  });
}

Subset subset_from_json(const Universe& u, const json& j) {
  const auto members = guarded("subset", [&] { return j.get<std::vector<std::size_t>>(); });
  return Subset(u, std::span<const std::size_t>(members));
}

ClosureOperator operator_from_json(const Universe& u, const json& j) {
  const auto rule = guarded("operator", [&] { return j.at("rule").get<std::string>(); });
  if (rule == "mu") return make_mu(u, subset_from_json(u, guarded("operator", [&] { return j.at("F"); })));
  if (rule == "identity") return ClosureOperator::identity(u);
  if (rule != "table") throw Error(ErrorCode::ParseError, "unknown operator rule '" + rule + "'");

  if (u.size() > kMaxTableSize) throw Error(ErrorCode::BoundExceeded, "tabulated operators limited to n <= 16");
  const std::size_t count = std::size_t{1} << u.size();
  std::vector<std::optional<Subset>> images(count);
  const auto entries = guarded("operator", [&] { return j.at("entries"); });
  if (!entries.is_array()) throw Error(ErrorCode::ParseError, "operator entries must be an array");
  for (const auto& entry : entries) {
    if (!entry.is_array() || entry.size() != 2) {
      throw Error(ErrorCode::ParseError, "table entries are [A, gammaA] pairs");
    }
    const Subset a = subset_from_json(u, entry[0]);
    if (images[a.mask()]) throw Error(ErrorCode::ParseError, "table lists a subset twice");
    images[a.mask()] = subset_from_json(u, entry[1]);
  }
  std::vector<Subset> total;
  total.reserve(count);
  for (const auto& img : images) {
    if (!img) throw Error(ErrorCode::ParseError, "table must map every subset of the universe");
    total.push_back(*img);
  }
  return ClosureOperator::table(u, total);
}

FiniteTopology topology_from_json(const json& j) {
  const Universe u = universe_from_json(guarded("topology", [&] { return j.at("universe"); }));
  const auto opens = guarded("topology", [&] { return j.at("opens"); });
  if (!opens.is_array()) throw Error(ErrorCode::ParseError, "opens must be an array");
  std::vector<Subset> family;
  for (const auto& o : opens) family.push_back(subset_from_json(u, o));
  return FiniteTopology::from_opens(u, family);
}

DirectedSet directed_set_from_json(const json& j) {
  return guarded("directed set", [&] {
    const auto pairs = j.at("leq").get<std::vector<std::pair<std::size_t, std::size_t>>>();
    return DirectedSet(j.at("size").get<std::size_t>(), pairs);
  });
}

Net net_from_json(const json& j, std::size_t universe_size) {
  auto index = directed_set_from_json(guarded("net", [&] { return j.at("index"); }));
  auto points = guarded("net", [&] { return j.at("points").get<std::vector<std::size_t>>(); });
  return Net(std::move(index), std::move(points), universe_size);
}

StateVector state_from_json(const json& j) {
  return guarded("state", [&]() -> StateVector {
    if (!j.is_array() || j.empty()) throw Error(ErrorCode::ParseError, "state must be a nonempty array");
    if (j[0].is_number()) {
      if (j.size() != 2) throw Error(ErrorCode::InconsistentDimensions, "planar state has two coordinates");
      return PlanarState{j[0].get<double>(), j[1].get<double>()};
    }
    WaveFunction phi;
    for (const auto& z : j) {
      const auto parts = z.get<std::array<double, 2>>();
      phi.emplace_back(parts[0], parts[1]);
    }
    return phi;
  });
}

json parse(std::string_view text) {
  return guarded("json", [&] { return json::parse(text); });
}

}  // namespace densetop::io
