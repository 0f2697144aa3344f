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

#include "retrodict/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace retrodict {

namespace {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw std::invalid_argument("matrix json: wrong row count");
  }
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const Json& row = j.at(i);
    if (static_cast<int>(row.size()) != dim) {
      throw std::invalid_argument("matrix json: wrong column count");
    }
    for (int k = 0; k < dim; ++k) {
      const Json& c = row.at(k);
      m(i, k) = Complex(c.at(0).get<double>(), c.at(1).get<double>());
    }
  }
  return m;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json to_json(const FockOperator& op) {
  return Json{{"dim", op.dim()}, {"matrix", matrix_to_json(op.matrix())}};
}

FockOperator operator_from_json(const Json& j, double tol) {
  const int dim = j.at("dim").get<int>();
  return FockOperator(FockSpace(dim, tol), matrix_from_json(j.at("matrix"), dim));
}

Json to_json(const QuantumState& state) {
  Json j = to_json(state.op());
  j["trace_tol"] = state.space().tol;
  return j;
}

QuantumState state_from_json(const Json& j) {
  const double tol = j.at("trace_tol").get<double>();
  return QuantumState::from_operator(operator_from_json(j, tol));
}

Json to_json(const Povm& povm) {
  Json elements = Json::array();
  for (const auto& [label, op] : povm.elements) {
    elements.push_back(Json{{"label", label}, {"matrix", matrix_to_json(op.matrix())}});
  }
  return Json{{"dim", povm.space.dim},
              {"completeness_tol", povm.completeness_tol},
              {"elements", std::move(elements)}};
}

Povm povm_from_json(const Json& j, double tol) {
  const int dim = j.at("dim").get<int>();
  const FockSpace space(dim, tol);
  Povm povm{space, {}, j.at("completeness_tol").get<double>()};
  for (const Json& e : j.at("elements")) {
    povm.elements.emplace_back(e.at("label").get<std::string>(),
                               FockOperator(space, matrix_from_json(e.at("matrix"), dim)));
  }
  return povm;
}

Json to_json(const PropositionSet& set) {
  Json ops = Json::array();
  for (const auto& op : set.ops) ops.push_back(matrix_to_json(op.matrix()));
  return Json{{"dim", set.space.dim},
              {"kind", set.kind == PropositionSet::Kind::theta ? "theta" : "lambda"},
              {"ops", std::move(ops)}};
}

PropositionSet propositions_from_json(const Json& j, double tol) {
  const int dim = j.at("dim").get<int>();
  const FockSpace space(dim, tol);
  const std::string kind = j.at("kind").get<std::string>();
  PropositionSet set{space,
                     kind == "theta" ? PropositionSet::Kind::theta
                                     : PropositionSet::Kind::lambda,
                     {}};
  for (const Json& m : j.at("ops")) {
    set.ops.emplace_back(space, matrix_from_json(m, dim));
  }
  return set;
}

Json to_json(const BipartiteState& state) {
  Json j = to_json(state.state);
  j["dims"] = Json::array({state.dim_a, state.dim_b});
  return j;
}

BipartiteState bipartite_from_json(const Json& j) {
  const auto dims = j.at("dims");
  return BipartiteState{state_from_json(j), dims.at(0).get<int>(), dims.at(1).get<int>()};
}

Json to_json(const MetricReport& report) {
  Json fidelities = Json::object();
  for (const auto& [n, f] : report.fidelities) {
    fidelities[std::to_string(n)] = f;
  }
  return Json{{"projectivity", report.projectivity},
              {"effective_efficiency", report.effective_efficiency
                                           ? Json(*report.effective_efficiency)
                                           : Json(nullptr)},
              {"fidelities", std::move(fidelities)},
              {"non_gaussianity", report.non_gaussianity},
              {"negativity_origin", report.negativity_origin}};
}

Json to_json(const ReconstructionReport& report, const MaxlikOptions& options) {
  return Json{{"povm", to_json(report.povm)},
              {"iterations", report.iterations},
              {"final_log_likelihood", report.final_log_likelihood},
              {"completeness_residual", report.completeness_residual},
              {"stop_reason", report.stop_reason},
              {"ll_history", report.ll_history},
              {"notes", report.notes},
              {"options", Json{{"max_iters", options.max_iters},
                               {"ll_tol", options.ll_tol},
                               {"diagonal_constraint", options.diagonal_constraint}}}};
}

DetectorConfig detector_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "apd") {
    return ApdParams(j.at("eta").get<double>(), j.at("nu").get<double>());
  }
  if (type == "pnrd") {
    return PnrdConfig{};
  }
  if (type == "hd") {
    HdConfig config{j.at("eta").get<double>(), j.at("phi").get<double>(), {}};
    if (j.contains("bins")) {
      config.bins.dx = j.at("bins").at("dx").get<double>();
      config.bins.x_max = j.at("bins").at("xmax").get<double>();
    }
    return config;
  }
  throw std::invalid_argument("detector config: unknown type '" + type + "'");
}

Povm build_povm(const DetectorConfig& config, const FockSpace& space) {
  if (const auto* apd = std::get_if<ApdParams>(&config)) {
    return apd_povm(*apd, space);
  }
  if (std::get_if<PnrdConfig>(&config)) {
    return pnrd_povm(space);
  }
  const auto& hd = std::get<HdConfig>(config);
  return hd_binned_povm(hd.eta, hd.phi, hd.bins, space);
}

void write_wigner_csv(std::ostream& os, const WignerGrid& grid) {
  os << "x,p,w\n";
  for (int ix = 0; ix < grid.spec.nx; ++ix) {
    for (int ip = 0; ip < grid.spec.np; ++ip) {
      os << format_double(grid.x_at(ix)) << ',' << format_double(grid.p_at(ip)) << ','
         << format_double(grid.at(ix, ip)) << '\n';
    }
  }
}

WignerGrid read_wigner_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "x,p,w") {
    throw std::invalid_argument("wigner csv: bad header");
  }
  std::vector<double> xs, ps, ws;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double x, p, w;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &p, &w) != 3) {
      throw std::invalid_argument("wigner csv: bad row '" + line + "'");
    }
    xs.push_back(x);
    ps.push_back(p);
    ws.push_back(w);
  }
  if (ws.empty()) throw std::invalid_argument("wigner csv: empty");
  // row-major with p fastest: np = run-length until x changes
  std::size_t np = 1;
  while (np < xs.size() && xs[np] == xs[0]) ++np;
  if (xs.size() % np != 0) throw std::invalid_argument("wigner csv: ragged grid");
  const std::size_t nx = xs.size() / np;
  GridSpec spec{xs.front(), xs.back(), ps.front(), ps[np - 1],
                static_cast<int>(nx), static_cast<int>(np)};
  WignerGrid grid = WignerGrid::zeros(spec);
  grid.values = std::move(ws);
  return grid;
}

Json wigner_metadata(const WignerGrid& grid) {
  return Json{{"x_min", grid.spec.x_min},
              {"x_max", grid.spec.x_max},
              {"p_min", grid.spec.p_min},
              {"p_max", grid.spec.p_max},
              {"nx", grid.spec.nx},
              {"np", grid.spec.np},
              {"convention", Json{{"hbar", 1.0},
                                  {"vacuum_variance", 0.5},
                                  {"vacuum_origin", 1.0 / std::numbers::pi},
                                  {"identity_level", 0.5 / std::numbers::pi}}}};
}

void write_count_csv(std::ostream& os, const CountTable& table) {
  os << "probe_re,probe_im,prob";
  for (const auto& label : table.labels) os << ',' << label;
  os << '\n';
  for (Eigen::Index m = 0; m < table.counts.rows(); ++m) {
    const ProbeEntry& e = table.probes.entries[m];
    os << format_double(e.alpha.real()) << ',' << format_double(e.alpha.imag()) << ','
       << format_double(e.prob);
    for (Eigen::Index n = 0; n < table.counts.cols(); ++n) {
      os << ',' << format_double(table.counts(m, n));
    }
    os << '\n';
  }
}

CountTable read_count_csv(std::istream& is, const FockSpace& space, std::uint64_t seed) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("count csv: empty");
  std::vector<std::string> labels;
  {
    std::istringstream head(line);
    std::string field;
    int idx = 0;
    while (std::getline(head, field, ',')) {
      if (idx >= 3) labels.push_back(field);
      ++idx;
    }
  }
  if (labels.empty()) throw std::invalid_argument("count csv: no outcome columns");
  ProbeEnsemble probes{space, {}};
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<double> vals;
    while (std::getline(row, field, ',')) vals.push_back(std::stod(field));
    if (vals.size() != labels.size() + 3) {
      throw std::invalid_argument("count csv: bad row '" + line + "'");
    }
    probes.entries.push_back({Complex(vals[0], vals[1]), vals[2]});
    rows.emplace_back(vals.begin() + 3, vals.end());
  }
  Eigen::MatrixXd counts(rows.size(), labels.size());
  for (std::size_t m = 0; m < rows.size(); ++m) {
    for (std::size_t n = 0; n < labels.size(); ++n) counts(m, n) = rows[m][n];
  }
  const auto shots = static_cast<std::int64_t>(std::llround(counts.row(0).sum()));
  CountTable table{std::move(probes), std::move(labels), std::move(counts), shots, seed};
  return table;
}

}  // namespace retrodict
