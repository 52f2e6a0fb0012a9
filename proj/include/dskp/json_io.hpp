#pragma once

#include <json.hpp>
#include <string>

#include "dskp/aztec.hpp"
#include "dskp/cw_graph.hpp"
#include "dskp/dimer.hpp"
#include "dskp/forests.hpp"
#include "dskp/lattice.hpp"

namespace dskp {

using Json = nlohmann::ordered_json;

// Exact values serialize as "p/q", "p/q+r/s*i" or "inf"; an
// indeterminate value is an error state and never serializes.
std::string value_to_string(const PV& v);
PV value_from_string(const std::string& s);

Json initial_data_to_json(const InitialData<GaussianRational>& d);
InitialData<GaussianRational> initial_data_from_json(const Json& j);

Json solution_to_json(const Solution<GaussianRational>& s);

Json graph_to_json(const CwGraph& g, const KasteleynOrientation* phi = nullptr,
                   const WeightMap<GaussianRational>* w = nullptr);

Json config_to_json(const Quadrangulation& q, const TreeForestConfig& cfg);

Json devron_report_to_json(const DevronReport& r);

void write_text_file(const std::string& path, const std::string& content);

} // namespace dskp
