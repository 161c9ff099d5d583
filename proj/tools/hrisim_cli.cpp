// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end.
//
//   hrisim simulate  --config cfg --sweep L --values 20,40,60 --trials 100
//                    --seed 1 --methods proposed,passive --out sweep.csv
//   hrisim gap-audit --config cfg --delta 0.1 --trials 10 --seed 1
//
// simulate runs a Monte-Carlo sweep and writes the aggregate CSV; gap-audit
// scores the closed-form solver against the exhaustive oracle per
// realization and prints the bound chain.

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <hrisim/hrisim.hpp>

namespace {

void print_rows(const std::vector<hrisim::SweepRow>& rows) {
  std::printf("%-8s %10s  %-10s %10s %10s %10s %14s %7s\n", "variable", "value", "method",
              "mean_se", "min_se", "max_se", "mean_gamma_db", "trials");
  for (const hrisim::SweepRow& r : rows)
    std::printf("%-8s %10.4g  %-10s %10.4f %10.4f %10.4f %14.3f %7d\n", r.variable.c_str(),
                r.value, r.method.c_str(), r.mean_se, r.min_se, r.max_se, r.mean_gamma_db,
                r.trials);
}

int run_simulate(const hrisim::SimConfig& cfg, const std::string& out_path) {
  const std::vector<hrisim::SweepRow> rows =
      hrisim::run_sweep(cfg.system, cfg.geometry, cfg.fading, cfg.sweep, cfg.run);
  hrisim::emit_csv(rows, out_path);
  print_rows(rows);
  std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
  return 0;
}

int run_gap_audit(const hrisim::SimConfig& cfg, double delta, int trials) {
  std::printf("%-6s %12s %12s %12s %12s %11s %11s %11s %9s\n", "trial", "prop_db", "opt_db",
              "lb_db", "ub_db", "epsilon", "E", "E_bound", "eta_ok");
  double worst_e = 0.0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = hrisim::derive_seed(cfg.sweep.root_seed,
                                                   static_cast<std::uint64_t>(t));
    hrisim::Rng rng(seed);
    const hrisim::ChannelSet ch =
        hrisim::generate_channels(cfg.system, cfg.geometry, cfg.fading, rng);
    const hrisim::GapReport rep = hrisim::gap_analysis(cfg.system, ch, delta, cfg.run.oracle);
    worst_e = std::max(worst_e, rep.e);
    std::printf("%-6d %12.5f %12.5f %12.5f %12.5f %11.4g %11.4g %11.4g %9s\n", t,
                hrisim::pow_to_db(rep.gamma_prop), hrisim::pow_to_db(rep.gamma_opt),
                hrisim::pow_to_db(rep.gamma_lb), hrisim::pow_to_db(rep.gamma_ub), rep.epsilon,
                rep.e, rep.epsilon / (1.0 + rep.epsilon),
                cfg.system.eta <= rep.eta_max ? "yes" : "no");
  }
  std::printf("worst normalized gap over %d trials: %.4g (target delta %.4g)\n", trials, worst_e,
              delta);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hrisim: hybrid-RIS MISO downlink link-level simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;

  auto* sim = app.add_subcommand("simulate", "run a Monte-Carlo sweep and write a CSV");
  std::string sweep_var, values_csv, methods_csv, out_path = "sweep.csv";
  std::uint64_t seed = 0;
  int trials = 0, threads = 0, arb = 0, oracle_max_n = 0;
  std::uint64_t oracle_cap = 0;
  sim->add_option("--config", config_path, "configuration file (defaults apply if omitted)");
  sim->add_option("--sweep", sweep_var, "sweep variable: rho, eta_db or L");
  sim->add_option("--values", values_csv, "comma-separated sweep values");
  sim->add_option("--trials", trials, "channel realizations per sweep value");
  sim->add_option("--seed", seed, "root seed");
  sim->add_option("--methods", methods_csv,
                  "comma-separated subset of proposed,arbitrary,passive,active,no_ris,oracle");
  sim->add_option("--out", out_path, "output CSV path");
  sim->add_option("--threads", threads, "worker threads (results are thread-count invariant)");
  sim->add_option("--arbitrary-placements", arb, "candidate placements for the arbitrary method");
  sim->add_option("--oracle-cap", oracle_cap, "max enumerated placements for the oracle");
  sim->add_option("--oracle-max-n", oracle_max_n, "max element count for the oracle");
  sim->add_option("--set", overrides, "extra 'key=value' config overrides")->take_all();

  auto* gap = app.add_subcommand("gap-audit", "bound-chain audit against the exhaustive oracle");
  double delta = 0.1;
  int gap_trials = 10;
  gap->add_option("--config", config_path, "configuration file (defaults apply if omitted)");
  gap->add_option("--delta", delta, "target normalized gap in (0,1)");
  gap->add_option("--trials", gap_trials, "channel realizations to audit");
  gap->add_option("--seed", seed, "root seed");
  gap->add_option("--oracle-cap", oracle_cap, "max enumerated placements for the oracle");
  gap->add_option("--oracle-max-n", oracle_max_n, "max element count for the oracle");
  gap->add_option("--set", overrides, "extra 'key=value' config overrides")->take_all();

  CLI11_PARSE(app, argc, argv);

  try {
    hrisim::SimConfig cfg;
    if (!config_path.empty()) cfg = hrisim::load_config(config_path);
    for (const std::string& ov : overrides) {
      const std::size_t eq = ov.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("--set expects key=value, got '" + ov + "'");
      hrisim::apply_config_key(cfg, hrisim::detail::trim(ov.substr(0, eq)),
                               ov.substr(eq + 1));
    }

    if (sim->parsed()) {
      if (!sweep_var.empty()) cfg.sweep.variable = hrisim::variable_from_string(sweep_var);
      if (!values_csv.empty()) {
        cfg.sweep.values.clear();
        for (const std::string& tok : hrisim::detail::split_list(values_csv))
          cfg.sweep.values.push_back(hrisim::detail::parse_double("--values", tok));
      }
      if (sim->count("--trials") > 0) cfg.sweep.trials = trials;
      if (sim->count("--seed") > 0) cfg.sweep.root_seed = seed;
      if (!methods_csv.empty()) {
        cfg.sweep.methods.clear();
        for (const std::string& tok : hrisim::detail::split_list(methods_csv))
          cfg.sweep.methods.push_back(hrisim::method_from_string(tok));
      }
      if (sim->count("--threads") > 0) cfg.run.threads = static_cast<unsigned>(threads);
      if (sim->count("--arbitrary-placements") > 0) cfg.run.arbitrary_placements = arb;
      if (sim->count("--oracle-cap") > 0) cfg.run.oracle.placement_cap = oracle_cap;
      if (sim->count("--oracle-max-n") > 0) cfg.run.oracle.max_n = oracle_max_n;
      hrisim::validate_config(cfg);
      return run_simulate(cfg, out_path);
    }

    if (gap->parsed()) {
      if (gap->count("--seed") > 0) cfg.sweep.root_seed = seed;
      if (gap->count("--oracle-cap") > 0) cfg.run.oracle.placement_cap = oracle_cap;
      if (gap->count("--oracle-max-n") > 0) cfg.run.oracle.max_n = oracle_max_n;
      if (gap_trials < 1) throw std::invalid_argument("--trials must be >= 1");
      hrisim::validate_config(cfg);
      return run_gap_audit(cfg, delta, gap_trials);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
