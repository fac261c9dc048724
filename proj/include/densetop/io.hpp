#pragma once

// JSON forms of the domain values. Subsets serialize as ascending index
// arrays; object keys come out sorted, so equal values give equal bytes.

#include "json.hpp"

#include "densetop/closure.hpp"
#include "densetop/nets.hpp"
#include "densetop/reach.hpp"
#include "densetop/setcore.hpp"
#include "densetop/topology.hpp"

namespace densetop::io {

using nlohmann::json;

json to_json(const Universe& u);
json to_json(const Subset& s);
json to_json(const ClosureOperator& gamma);
json to_json(const AxiomReport& report);
json to_json(const FiniteTopology& t);
json to_json(const ValidityReport& report);
json to_json(const SeparationProfile& profile);
json to_json(const DirectedSet& d);
json to_json(const DirectedReport& report);
json to_json(const Net& net);
json to_json(const FinalLemmaReport& report);
json to_json(const StateVector& x);
json to_json(const ControlledSystem& sys);
json to_json(const AttainableCloud& cloud);
json to_json(const DensityReport& report);
json to_json(const MuReport& report);

// Parsers throw Error(ParseError) on malformed input; domain validation
// errors (InvalidArgument, InvalidTopology, EmptyF, ...) pass through.
Universe universe_from_json(const json& j);
Subset subset_from_json(const Universe& u, const json& j);
ClosureOperator operator_from_json(const Universe& u, const json& j);
FiniteTopology topology_from_json(const json& j);
DirectedSet directed_set_from_json(const json& j);
Net net_from_json(const json& j, std::size_t universe_size);
StateVector state_from_json(const json& j);

/// Parses text, mapping syntax errors to Error(ParseError).
json parse(std::string_view text);

}  // namespace densetop::io
