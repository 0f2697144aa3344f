/*
Copyright (c) 2026 the retrodict developers.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef RETRODICT_SERIALIZATION_HPP
#define RETRODICT_SERIALIZATION_HPP

#include <iosfwd>
#include <string>
#include <variant>

#include <json.hpp>

#include "retrodict/metrics.hpp"
#include "retrodict/tomography.hpp"
#include "retrodict/wigner.hpp"

namespace retrodict {

using Json = nlohmann::json;

// Operators: {"dim": D, "matrix": [[[re,im],...],...]} row-major; states add
// "trace_tol". Doubles rely on the shortest-round-trip encoder of the JSON
// library, so write/parse is bit-exact.

Json to_json(const FockOperator& op);
FockOperator operator_from_json(const Json& j, double tol = 1e-9);

Json to_json(const QuantumState& state);
QuantumState state_from_json(const Json& j);

Json to_json(const Povm& povm);
Povm povm_from_json(const Json& j, double tol = 1e-9);

Json to_json(const PropositionSet& set);
PropositionSet propositions_from_json(const Json& j, double tol = 1e-9);

Json to_json(const BipartiteState& state);
BipartiteState bipartite_from_json(const Json& j);

Json to_json(const MetricReport& report);

Json to_json(const ReconstructionReport& report, const MaxlikOptions& options);

/// Detector configs: {"type":"apd","eta":..,"nu":..} | {"type":"pnrd"} |
/// {"type":"hd","eta":..,"phi":..,"bins":{"dx":..,"xmax":..}}.
struct HdConfig {
  double eta;
  double phi;
  HomodyneBinning bins;
};
struct PnrdConfig {};
using DetectorConfig = std::variant<ApdParams, PnrdConfig, HdConfig>;

DetectorConfig detector_from_json(const Json& j);
Povm build_povm(const DetectorConfig& config, const FockSpace& space);

// Wigner CSV: header "x,p,w", row-major, 17 significant digits; the JSON
// sidecar records grid bounds and the convention anchors.
void write_wigner_csv(std::ostream& os, const WignerGrid& grid);
WignerGrid read_wigner_csv(std::istream& is);
Json wigner_metadata(const WignerGrid& grid);

// CountTable CSV: header "probe_re,probe_im,prob,<label...>".
void write_count_csv(std::ostream& os, const CountTable& table);
CountTable read_count_csv(std::istream& is, const FockSpace& space,
                          std::uint64_t seed = 0);

/// Shortest-precision formatting used by every CSV writer (17 significant
/// digits round-trips any double).
std::string format_double(double v);

}  // namespace retrodict

#endif  // RETRODICT_SERIALIZATION_HPP
