#include "densetop/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "densetop/error.hpp"

namespace densetop::cli {

namespace {

using io::json;

constexpr double kTrivialC = 1.0;
constexpr double kAmplitude = 5.0;
constexpr std::size_t kGridPoints = 63;
constexpr std::size_t kDefaultTrials = 1000;

json load_input(const std::string& input) {
  const auto first = input.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && input[first] == '{') return io::parse(input);
  std::ifstream in(input, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read input file '" + input + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return io::parse(buf.str());
}

std::string set_text(const Subset& s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : s.indices()) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

// Everything a command may derive from --input / --n / --F.
class Inputs {
 public:
  explicit Inputs(const CommandRequest& req) : req_(req) {
    if (req.input) doc_ = load_input(*req.input);
  }

  bool has_doc() const { return doc_.has_value(); }
  const json& doc() const { return *doc_; }

  Universe universe() const {
    if (doc_) {
      if (doc_->contains("universe")) return io::universe_from_json(doc_->at("universe"));
      throw Error(ErrorCode::ParseError, "input document needs a \"universe\" object");
    }
    if (req_.n) return Universe(*req_.n);
    throw Error(ErrorCode::InvalidArgument, "need --input or --n");
  }

  std::optional<Subset> dense_set(const Universe& u) const {
    if (req_.dense_set) return Subset(u, std::span<const std::size_t>(*req_.dense_set));
    if (doc_ && doc_->contains("F")) return io::subset_from_json(u, doc_->at("F"));
    if (doc_ && doc_->contains("operator")) {
      const auto op = io::operator_from_json(u, doc_->at("operator"));
      if (const auto* mu = std::get_if<MuRule>(&op.rule())) return mu->dense_set;
    }
    return std::nullopt;
  }

  ClosureOperator closure_operator() const {
    const Universe u = universe();
    if (doc_) {
      if (!doc_->contains("operator")) throw Error(ErrorCode::ParseError, "input document needs an \"operator\"");
      return io::operator_from_json(u, doc_->at("operator"));
    }
    const auto f = dense_set(u);
    if (!f) throw Error(ErrorCode::InvalidArgument, "need --F (or --input with an operator)");
    return make_mu(u, *f);
  }

  /// Topology given directly as opens, built from an operator, or the mu
  /// topology of --F. Throws NotAClosureOperator for a bad operator.
  FiniteTopology topology() const {
    if (doc_ && doc_->contains("opens")) return io::topology_from_json(*doc_);
    if (doc_) return topology_from_closure(closure_operator());
    const Universe u = universe();
    const auto f = dense_set(u);
    if (!f) throw Error(ErrorCode::InvalidArgument, "need --F (or --input with a topology)");
    return mu_topology(u, *f);
  }

  bool topology_given_as_opens() const { return doc_ && doc_->contains("opens"); }

 private:
  const CommandRequest& req_;
  std::optional<json> doc_;
};

CommandResult verify_closure(const CommandRequest& req, const Inputs& in) {
  const auto gamma = in.closure_operator();
  const Universe& u = gamma.universe();
  VerifyMode mode = Exhaustive{};
  json mode_json = "exhaustive";
  if (u.size() > kMaxExhaustiveAxiomSize) {
    mode = Sampled{req.seed, kDefaultSampledTrials};
    mode_json = {{"sampled", {{"seed", req.seed}, {"trials", kDefaultSampledTrials}}}};
  }
  const auto report = verify_kuratowski(gamma, mode);
  const bool ok = report.all_pass();

  json out{{"universe", io::to_json(u)},
           {"operator", io::to_json(gamma)},
           {"mode", mode_json},
           {"axioms", io::to_json(report)},
           {"pass", ok}};
  std::string summary = "verify-closure: n=" + std::to_string(u.size()) + ": ";
  if (ok) {
    summary += "all four Kuratowski axioms hold";
  } else {
    for (const auto& r : report.results) {
      if (r.pass) continue;
      summary += std::string(to_string(r.axiom)) + " fails at A=" + set_text(*r.witness_a);
      if (r.witness_b) summary += " B=" + set_text(*r.witness_b);
      summary += "; ";
    }
  }
  return {ok ? kExitOk : kExitVerificationFailed, std::move(out), summary};
}

CommandResult build_topology(const CommandRequest&, const Inputs& in) {
  const auto gamma = in.closure_operator();
  try {
    const auto t = topology_from_closure(gamma);
    bool agrees = true;
    for (const Subset a : enumerate_subsets(t.universe())) {
      agrees = agrees && closure_of(t, a) == gamma.apply(a);
    }
    json out{{"operator", io::to_json(gamma)},
             {"topology", io::to_json(t)},
             {"open_count", t.open_count()},
             {"closure_agrees", agrees}};
    if (const auto* mu = std::get_if<MuRule>(&gamma.rule())) {
      out["matches_closed_form"] = (t == mu_topology(t.universe(), mu->dense_set));
    }
    return {agrees ? kExitOk : kExitVerificationFailed, std::move(out),
            "build-topology: " + std::to_string(t.open_count()) + " open sets"};
  } catch (const NotAClosureOperator& e) {
    json out{{"operator", io::to_json(gamma)},
             {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}},
             {"axioms", io::to_json(e.report())}};
    std::string summary = "build-topology: rejected, not a closure operator";
    for (const auto& r : e.report().results) {
      if (!r.pass) {
        summary += "; " + std::string(to_string(r.axiom)) + " fails at A=" + set_text(*r.witness_a);
        break;
      }
    }
    return {kExitVerificationFailed, std::move(out), summary};
  }
}

CommandResult inspect(const CommandRequest&, const Inputs& in) {
  const auto t = in.topology();
  const Universe& u = t.universe();
  json closed = json::array();
  for (Mask m : t.open_masks()) closed.push_back(io::to_json(complement(Subset(u, m))));
  std::sort(closed.begin(), closed.end());
  json point_closures = json::array();
  json minimal_nbhds = json::array();
  for (std::size_t x = 0; x < u.size(); ++x) {
    const Subset point(u, Mask{1} << x);
    point_closures.push_back(io::to_json(closure_of(t, point)));
    Mask nb = u.full();
    for (Mask o : t.open_masks()) {
      if ((o >> x) & 1U) nb &= o;
    }
    minimal_nbhds.push_back(io::to_json(Subset(u, nb)));
  }
  const auto opens = t.opens();
  json out{{"topology", io::to_json(t)},
           {"validity", io::to_json(verify_topology(opens, u))},
           {"open_count", t.open_count()},
           {"closed_sets", closed},
           {"point_closures", point_closures},
           {"minimal_neighbourhoods", minimal_nbhds}};
  std::string summary = "inspect: n=" + std::to_string(u.size()) + ", " + std::to_string(t.open_count()) + " opens";
  if (const auto f = in.dense_set(u)) {
    json mu_image = json::array();
    for (const auto& s : mu_image_family(t, *f)) mu_image.push_back(io::to_json(s));
    const bool dense = is_dense(t, *f);
    out["F"] = {{"set", io::to_json(*f)},
                {"closure", io::to_json(closure_of(t, *f))},
                {"interior", io::to_json(interior_of(t, *f))},
                {"dense", dense},
                {"mu_image_family", mu_image}};
    summary += ", F=" + set_text(*f) + (dense ? " is dense" : " is not dense");
  }
  return {kExitOk, std::move(out), summary};
}

CommandResult check_separation(const CommandRequest&, const Inputs& in) {
  const auto t = in.topology();
  const auto p = separation_profile(t);
  const bool chain_ok = (!p.hausdorff || p.t1) && (!p.t1 || p.t0);
  json out{{"topology", io::to_json(t)}, {"separation", io::to_json(p)}};
  auto flag = [](bool b) { return b ? std::string("true") : std::string("false"); };
  return {chain_ok ? kExitOk : kExitVerificationFailed, std::move(out),
          "check-separation: t0=" + flag(p.t0) + " t1=" + flag(p.t1) + " hausdorff=" + flag(p.hausdorff)};
}

CommandResult check_nets(const CommandRequest& req, const Inputs& in) {
  const auto t = in.topology();
  const bool theorem = check_closure_net_theorem(t);
  json out{{"topology", io::to_json(t)}, {"closure_net_theorem", theorem}};
  std::string summary = std::string("check-nets: closure-via-nets ") + (theorem ? "holds" : "FAILS");
  bool ok = theorem;
  const auto f = in.dense_set(t.universe());
  if (f && in.topology_given_as_opens()) {
    const auto lemma = check_final_lemma(t, *f, req.samples.value_or(kDefaultTrials), req.seed);
    out["final_lemma"] = io::to_json(lemma);
    ok = ok && lemma.holds;
    summary += std::string("; final lemma ") + (lemma.holds ? "holds" : "FAILS") + " over " +
               std::to_string(lemma.trials) + " nets";
  } else {
    out["final_lemma"] = nullptr;
  }
  return {ok ? kExitOk : kExitVerificationFailed, std::move(out), summary};
}

CommandResult demo_trivial(const CommandRequest& req, const Inputs&) {
  const ControlledSystem sys(TrivialDynamics{kTrivialC}, ControlSpec{req.segments.value_or(4), kAmplitude});
  const double horizon = req.horizon.value_or(1.0);
  const double eps = req.eps.value_or(0.5);
  const auto cloud = attainable_cloud(sys, PlanarState{kTrivialC, 0.0}, horizon, req.samples.value_or(50), req.seed);

  const bool pinned = std::all_of(cloud.samples.begin(), cloud.samples.end(), [](const CloudSample& s) {
    return std::get<PlanarState>(s.terminal).x1 == kTrivialC;
  });
  const std::vector<StateVector> targets{PlanarState{0.0, 0.0}, PlanarState{kTrivialC, 0.0}};
  const double reach = kAmplitude * horizon;
  const TrivialGrid grid{-reach, reach, reach / 5.0};
  const auto density = check_eps_density(cloud, targets, eps);
  const auto mu = check_mu_controllability(cloud, grid);

  json target_json = json::array();
  for (const auto& x : targets) target_json.push_back(io::to_json(x));
  json out{{"cloud", io::to_json(cloud)},
           {"x1_pinned", pinned},
           {"targets", target_json},
           {"eps_density", io::to_json(density)},
           {"features", {{"trivial_grid", {{"lo", grid.lo}, {"hi", grid.hi}, {"step", grid.step}}}}},
           {"mu", io::to_json(mu)}};
  const bool ok = pinned && mu.dense;
  return {ok ? kExitOk : kExitVerificationFailed, std::move(out),
          std::string("demo-trivial: eps-dense=") + (density.dense ? "true" : "false") +
              ", mu-dense=" + (mu.dense ? "true" : "false") + ", hausdorff=" + (mu.hausdorff ? "true" : "false")};
}

CommandResult demo_schrodinger(const CommandRequest& req, const Inputs&) {
  if (req.initial != "sine" && req.initial != "zero") {
    throw Error(ErrorCode::InvalidArgument, "--initial must be sine or zero");
  }
  const ControlledSystem sys(SchrodingerDynamics{kGridPoints, req.dt.value_or(1e-3)},
                             ControlSpec{req.segments.value_or(4), kAmplitude});
  const double horizon = req.horizon.value_or(0.1);
  const double eps = req.eps.value_or(0.1);
  const WaveFunction phi0 = req.initial == "zero" ? WaveFunction(kGridPoints) : sine_state(kGridPoints);
  const auto cloud = attainable_cloud(sys, phi0, horizon, req.samples.value_or(50), req.seed);

  double drift = 0.0;
  double max_amplitude = 0.0;
  const double norm0 = l2_norm(phi0);
  for (const auto& s : cloud.samples) {
    const auto& phi = std::get<WaveFunction>(s.terminal);
    drift = std::max(drift, std::abs(l2_norm(phi) - norm0));
    for (const auto& z : phi) max_amplitude = std::max(max_amplitude, std::abs(z));
  }
  const ProbabilityBins bins{{{0.0, 0.5}, {0.5, 1.0}}, 0.125};
  const auto density = check_eps_density(cloud, {StateVector(sine_state(kGridPoints))}, eps);
  const auto mu = check_mu_controllability(cloud, bins);

  json out{{"initial", req.initial},
           {"cloud", io::to_json(cloud)},
           {"max_norm_drift", drift},
           {"max_terminal_amplitude", max_amplitude},
           {"eps_density", io::to_json(density)},
           {"features", {{"probability_bins", {{"intervals", {{0.0, 0.5}, {0.5, 1.0}}}, {"width", bins.width}}}}},
           {"mu", io::to_json(mu)}};
  if (req.initial == "sine") {
    const ControlledSystem fine(SchrodingerDynamics{kGridPoints, kRefinementBaseDt}, sys.controls());
    out["refinement_ratio"] = {{"base_dt", kRefinementBaseDt},
                               {"ratio", refinement_ratio(fine, cloud.samples.front().control, phi0, horizon)}};
  } else {
    out["refinement_ratio"] = nullptr;
  }
  std::ostringstream summary;
  summary.imbue(std::locale::classic());
  summary << "demo-schrodinger: initial=" << req.initial << ", max norm drift=" << drift
          << ", eps-dense=" << (density.dense ? "true" : "false") << ", mu-dense=" << (mu.dense ? "true" : "false");
  return {mu.dense ? kExitOk : kExitVerificationFailed, std::move(out), summary.str()};
}

CommandResult enumerate(const CommandRequest& req, const Inputs&) {
  if (!req.n) throw Error(ErrorCode::InvalidArgument, "enumerate needs --n");
  const auto all = enumerate_topologies(*req.n);
  json list = json::array();
  for (const auto& t : all) list.push_back(io::to_json(t)["opens"]);
  json out{{"n", *req.n}, {"count", all.size()}, {"topologies", list}};
  return {kExitOk, std::move(out),
          "enumerate: " + std::to_string(all.size()) + " topologies on " + std::to_string(*req.n) + " points"};
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"verify-closure", "build-topology", "inspect",        "check-separation",
                                              "check-nets",     "demo-trivial",   "demo-schrodinger", "enumerate"};
  return names;
}

CommandResult run(const CommandRequest& req) {
  CommandResult result;
  try {
    const Inputs in(req);
    const auto& s = req.subcommand;
    if (s == "verify-closure") result = verify_closure(req, in);
    else if (s == "build-topology") result = build_topology(req, in);
    else if (s == "inspect") result = inspect(req, in);
    else if (s == "check-separation") result = check_separation(req, in);
    else if (s == "check-nets") result = check_nets(req, in);
    else if (s == "demo-trivial") result = demo_trivial(req, in);
    else if (s == "demo-schrodinger") result = demo_schrodinger(req, in);
    else if (s == "enumerate") result = enumerate(req, in);
    else throw Error(ErrorCode::ParseError, "unknown subcommand '" + s + "'");
  } catch (const NotAClosureOperator& e) {
    result.exit_code = kExitVerificationFailed;
    result.report = {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}},
                     {"axioms", io::to_json(e.report())}};
    result.summary = req.subcommand + ": " + e.what();
  } catch (const Error& e) {
    result.exit_code = kExitInputError;
    result.report = {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
    result.summary = req.subcommand + ": error " + std::string(to_string(e.code())) + ": " + e.what();
  }
  result.report["command"] = req.subcommand;
  return result;
}

std::string render(const io::json& report) { return report.dump(2) + "\n"; }

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_unsigned(std::string_view text) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::ParseError, "not a non-negative integer: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::size_t> parse_index_list(std::string_view text) {
  std::vector<std::size_t> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(static_cast<std::size_t>(parse_unsigned(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (text.empty()) throw Error(ErrorCode::ParseError, "trailing comma in index list");
  }
  return out;
}

int main(int argc, char** argv) {
  CLI::App app{"Finite topologies, closure operators and density-based controllability checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string input, output, seed, n, dense, eps, samples, horizon, dt, segments, initial;
  bool json_only = false;
  app.add_option("--input", input, "JSON input file, or inline JSON starting with '{'");
  app.add_option("--output", output, "Write the JSON report here instead of standard output");
  app.add_option("--seed", seed, "64-bit seed for every sampler (default 0)");
  app.add_flag("--json-only", json_only, "Suppress the human-readable summary");
  app.add_option("--n", n, "Universe size");
  app.add_option("--F", dense, "Comma-separated indices of the set to make dense");
  app.add_option("--eps", eps, "Metric density threshold");
  app.add_option("--K", samples, "Number of sampled controls / random nets");
  app.add_option("--T", horizon, "Time horizon");
  app.add_option("--dt", dt, "Crank-Nicolson time step");
  app.add_option("--segments", segments, "Number of piecewise-constant control segments");
  app.add_option("--initial", initial, "demo-schrodinger initial state: sine or zero");
  const std::map<std::string, std::string> help{
      {"verify-closure", "Check the four Kuratowski axioms for an operator"},
      {"build-topology", "Build the topology whose closed sets are the operator's fixed points"},
      {"inspect", "Closed sets, point closures, neighbourhoods and density of F"},
      {"check-separation", "T0 / T1 / Hausdorff profile with witnesses"},
      {"check-nets", "Closure-via-nets theorem and, for a given G and closed F, the final lemma"},
      {"demo-trivial", "Planar system with frozen x1: metric versus mu density"},
      {"demo-schrodinger", "Crank-Nicolson Schrodinger system: conservation and mu density"},
      {"enumerate", "All labeled topologies on n <= 4 points"}};
  for (const auto& name : subcommands()) app.add_subcommand(name, help.at(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  CommandRequest req;
  req.subcommand = app.get_subcommands().front()->get_name();
  CommandResult result;
  try {
    if (!input.empty()) req.input = input;
    if (!seed.empty()) req.seed = parse_unsigned(seed);
    req.json_only = json_only;
    if (!n.empty()) req.n = static_cast<std::size_t>(parse_unsigned(n));
    if (app.count("--F") > 0) req.dense_set = parse_index_list(dense);
    if (!eps.empty()) req.eps = parse_double(eps);
    if (!samples.empty()) req.samples = static_cast<std::size_t>(parse_unsigned(samples));
    if (!horizon.empty()) req.horizon = parse_double(horizon);
    if (!dt.empty()) req.dt = parse_double(dt);
    if (!segments.empty()) req.segments = static_cast<std::size_t>(parse_unsigned(segments));
    if (!initial.empty()) req.initial = initial;
    result = run(req);
  } catch (const Error& e) {
    result.exit_code = kExitInputError;
    result.report = {{"command", req.subcommand},
                     {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
    result.summary = req.subcommand + ": error " + std::string(to_string(e.code())) + ": " + e.what();
  }

  const std::string bytes = render(result.report);
  if (!json_only) std::cout << result.summary << '\n';
  if (!output.empty()) {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << output << '\n';
      return kExitInputError;
    }
    out << bytes;
  } else {
    std::cout << bytes;
  }
  return result.exit_code;
}

}  // namespace densetop::cli
