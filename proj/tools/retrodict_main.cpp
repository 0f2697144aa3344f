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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "retrodict/metrics.hpp"
#include "retrodict/serialization.hpp"
#include "retrodict/tomography.hpp"
#include "retrodict/wigner.hpp"

namespace fs = std::filesystem;
using namespace retrodict;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) {
    throw CLI::ValidationError("--out", "cannot open '" + path + "' for writing");
  }
  return os;
}

struct NegativityMapArgs {
  int eta_steps = 20;
  double eta_min = 0.05;
  double eta_max = 1.0;
  double nu_max = 2.0;
  int nu_steps = 41;
  std::string out = "negativity_map.csv";
};

int run_negativity_map(const NegativityMapArgs& args) {
  std::ofstream os = open_out(args.out);
  os << "eta,nu,negativity,nu_star\n";
  for (int i = 0; i < args.eta_steps; ++i) {
    const double eta =
        args.eta_min + (args.eta_max - args.eta_min) * i / (args.eta_steps - 1);
    const double nu_star = negativity_threshold(eta);
    for (int j = 0; j < args.nu_steps; ++j) {
      const double nu = args.nu_max * j / (args.nu_steps - 1);
      os << format_double(eta) << ',' << format_double(nu) << ','
         << format_double(negativity_on(ApdParams(eta, nu))) << ','
         << format_double(nu_star) << '\n';
    }
  }
  return 0;
}

struct FidelityCurvesArgs {
  int n_max = 4;
  int eta_steps = 101;
  std::vector<double> nu_list{0.0, 0.5};
  std::string out = "fidelity_curves.csv";
};

int run_fidelity_curves(const FidelityCurvesArgs& args) {
  std::ofstream os = open_out(args.out);
  os << "n,eta,f_off";
  for (double nu : args.nu_list) os << ",pr_on_nu" << nu;
  os << '\n';
  for (int n = 0; n <= args.n_max; ++n) {
    for (int i = 0; i < args.eta_steps; ++i) {
      const double eta = static_cast<double>(i) / (args.eta_steps - 1);
      os << n << ',' << format_double(eta) << ',' << format_double(fidelity_off(n, eta));
      for (double nu : args.nu_list) {
        os << ',' << format_double(fidelity_on_profile(n, ApdParams(eta, nu)));
      }
      os << '\n';
    }
  }
  return 0;
}

struct HdWignerArgs {
  double x_i = 1.0;
  double eta = 0.75;
  double phi = 0.0;
  bool retro = false;
  double excess_noise = 1e3;
  GridSpec grid;
  std::string out = "hd_wigner.csv";
};

int run_hd_wigner(const HdWignerArgs& args) {
  const HomodyneParams params(args.eta, args.phi, args.x_i);
  const WignerGrid grid = args.retro
                              ? hd_retro_wigner(HdRetroParams(params, args.excess_noise),
                                                args.grid)
                              : wigner_hd(params, args.grid);
  std::ofstream os = open_out(args.out);
  write_wigner_csv(os, grid);
  Json meta = wigner_metadata(grid);
  meta["detector"] = Json{{"type", "hd"},
                          {"eta", args.eta},
                          {"phi", args.phi},
                          {"x_i", args.x_i},
                          {"retro", args.retro}};
  if (args.retro) meta["excess_noise"] = args.excess_noise;
  std::ofstream ms = open_out(args.out + ".meta.json");
  ms << meta.dump(2) << '\n';
  return 0;
}

struct TomoArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int dim = 0;
};

int run_tomo(const TomoArgs& args) {
  std::ifstream in(args.config_path);
  if (!in) {
    throw CLI::ValidationError("config", "cannot read '" + args.config_path + "'");
  }
  Json config = Json::parse(in);

  const int dim = args.dim > 0 ? args.dim : config.value("dim", kDefaultDim);
  const FockSpace space(dim);
  const DetectorConfig detector = detector_from_json(config.at("detector"));
  const Povm povm = build_povm(detector, space);

  const Json& probe_cfg = config.at("probes");
  const ProbeEnsemble probes =
      ring_probes(probe_cfg.value("amp_max", 3.0), probe_cfg.value("amp_steps", 25),
                  probe_cfg.value("phases", 8), space);
  const std::int64_t shots = config.value("shots", 100000);
  const std::uint64_t seed =
      args.seed_set ? args.seed : config.value("seed", std::uint64_t{12648430});

  MaxlikOptions options;
  if (config.contains("maxlik")) {
    const Json& ml = config.at("maxlik");
    options.max_iters = ml.value("max_iters", options.max_iters);
    options.ll_tol = ml.value("ll_tol", options.ll_tol);
    options.diagonal_constraint =
        ml.value("diagonal_constraint", options.diagonal_constraint);
  }
  const std::string recovery = config.value("recovery", std::string("both"));
  if (recovery != "element" && recovery != "qst" && recovery != "both") {
    throw CLI::ValidationError("recovery", "must be element, qst or both");
  }
  const int fock_max = config.value("metrics_fock_max", 5);

  const fs::path out_dir =
      args.out_dir.empty() ? fs::path(config.value("out_dir", std::string("tomo_out")))
                           : fs::path(args.out_dir);
  fs::create_directories(out_dir);

  const CountTable table = simulate_counts(probes, povm, shots, seed);
  {
    std::ofstream os = open_out((out_dir / "counts.csv").string());
    write_count_csv(os, table);
  }

  const ReconstructionReport report = maxlik_povm(table, options);
  {
    Json j = to_json(report, options);
    j["seed"] = seed;
    j["shots_per_probe"] = shots;
    std::ofstream os = open_out((out_dir / "report.json").string());
    os << j.dump(2) << '\n';
  }

  bool qst_failed = false;
  for (std::size_t n = 0; n < report.povm.elements.size(); ++n) {
    const auto& [label, element] = report.povm.elements[n];
    if (element.trace().real() <= kTraceFloor) continue;

    const QuantumState retro = repair_state(element);
    {
      std::ofstream os = open_out((out_dir / ("premeas_" + label + ".json")).string());
      os << to_json(retro).dump(2) << '\n';
    }
    {
      const MetricReport metrics = metric_report(element, fock_max);
      std::ofstream os = open_out((out_dir / ("metrics_" + label + ".json")).string());
      os << to_json(metrics).dump(2) << '\n';
    }
    if (recovery != "element") {
      try {
        QstOptions qst;
        qst.max_iters = options.max_iters;
        qst.ll_tol = options.ll_tol;
        const Eigen::MatrixXd retro_probs = qdt_retrodict(table);
        const QuantumState recovered =
            qst_premeasurement(retro_probs.col(static_cast<Eigen::Index>(n)), probes, qst);
        std::ofstream os =
            open_out((out_dir / ("premeas_qst_" + label + ".json")).string());
        os << to_json(recovered).dump(2) << '\n';
      } catch (const NoConvergence& e) {
        std::cerr << "retrodict: " << e.what() << "\n";
        qst_failed = true;
      }
    }
  }

  if (report.stop_reason == "max_iters" || qst_failed) {
    std::cerr << "retrodict: reconstruction did not converge within max_iters\n";
    return kExitNoConvergence;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pre-measurement state retrodiction for modeled optical detectors"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  NegativityMapArgs neg;
  CLI::App* cmd_neg =
      app.add_subcommand("negativity-map", "APD 'on' Wigner negativity over (eta, nu)");
  cmd_neg->add_option("--eta-steps", neg.eta_steps)->check(CLI::Range(2, 100000));
  cmd_neg->add_option("--eta-min", neg.eta_min)->check(CLI::Range(1e-9, 1.0));
  cmd_neg->add_option("--eta-max", neg.eta_max)->check(CLI::Range(1e-9, 1.0));
  cmd_neg->add_option("--nu-max", neg.nu_max)->check(CLI::PositiveNumber);
  cmd_neg->add_option("--nu-steps", neg.nu_steps)->check(CLI::Range(2, 100000));
  cmd_neg->add_option("--out", neg.out);

  FidelityCurvesArgs fid;
  CLI::App* cmd_fid = app.add_subcommand(
      "fidelity-curves", "APD fidelities with photon-number detections");
  cmd_fid->add_option("--n-max", fid.n_max)->check(CLI::Range(1, 1000));
  cmd_fid->add_option("--eta-steps", fid.eta_steps)->check(CLI::Range(2, 100000));
  cmd_fid->add_option("--nu-list", fid.nu_list)->delimiter(',');
  cmd_fid->add_option("--out", fid.out);

  HdWignerArgs hd;
  CLI::App* cmd_hd = app.add_subcommand(
      "hd-wigner", "Wigner grid of the homodyne POVM element or its retrodiction");
  cmd_hd->add_option("--x-i", hd.x_i);
  cmd_hd->add_option("--eta", hd.eta)->check(CLI::Range(1e-9, 1.0 - 1e-12));
  cmd_hd->add_option("--phi", hd.phi);
  cmd_hd->add_flag("--retro", hd.retro);
  cmd_hd->add_option("--excess-noise", hd.excess_noise)->check(CLI::Range(10.0, 1e12));
  cmd_hd->add_option("--xmin", hd.grid.x_min);
  cmd_hd->add_option("--xmax", hd.grid.x_max);
  cmd_hd->add_option("--pmin", hd.grid.p_min);
  cmd_hd->add_option("--pmax", hd.grid.p_max);
  cmd_hd->add_option("--nx", hd.grid.nx)->check(CLI::Range(2, 100000));
  cmd_hd->add_option("--np", hd.grid.np)->check(CLI::Range(2, 100000));
  cmd_hd->add_option("--out", hd.out);

  TomoArgs tomo;
  CLI::App* cmd_tomo = app.add_subcommand(
      "tomo", "simulate -> reconstruct -> retrodict -> metrics from a JSON config");
  cmd_tomo->add_option("config", tomo.config_path, "JSON config path")->required();
  cmd_tomo->add_option("--out", tomo.out_dir, "output directory override");
  cmd_tomo->add_option("--seed", tomo.seed)->each([&](const std::string&) {
    tomo.seed_set = true;
  });
  cmd_tomo->add_option("--dim", tomo.dim)->check(CLI::Range(2, 4096));

  try {
    app.parse(argc, argv);
    if (cmd_neg->parsed()) return run_negativity_map(neg);
    if (cmd_fid->parsed()) return run_fidelity_curves(fid);
    if (cmd_hd->parsed()) return run_hd_wigner(hd);
    if (cmd_tomo->parsed()) return run_tomo(tomo);
    return kExitConfig;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const Json::exception& e) {
    std::cerr << "retrodict: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "retrodict: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "retrodict: " << e.what() << "\n";
    return kExitConfig;
  }
}
