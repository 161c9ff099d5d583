// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion runs end to end against the library (and
// the CLI binary where the contract is about the executable), prints one
// pass/fail line, and the process exit code is the number of failures.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"

using namespace hrisim;
using testutil::desk_config;
using testutil::for_each_subset;
using testutil::gamma_min_reference;
using testutil::random_channels;

namespace {

struct Check {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// Random small instance shared by criteria 1 and 3.
struct SmallInstance {
  SystemConfig cfg;
  ChannelSet ch;
};

SmallInstance small_instance(Rng& rng) {
  const int n = 6 + static_cast<int>(rng.uniform_below(7));   // 6..12
  const int l = 1 + static_cast<int>(rng.uniform_below(4));   // 1..4
  const int m = 2 + static_cast<int>(rng.uniform_below(3));   // 2..4
  SmallInstance inst;
  inst.cfg = desk_config(m, n, l, 1.0 + 2.5 * rng.uniform(), 1.0, 1.0,
                         0.05 + 0.95 * rng.uniform());
  inst.ch = random_channels(rng, n, m);
  return inst;
}

// criterion 1: the alternating solver's final placement and coefficients
// attain the enumerated maximum of the SNR lower bound at the final
// precoder, to 1e-9 relative, on 200 small instances.
Check criterion1() {
  Check c;
  Rng rng(0xC1);
  for (int rep = 0; rep < 200 && c.pass; ++rep) {
    const SmallInstance inst = small_instance(rng);
    const SolveResult r = alternating_solve(inst.cfg, inst.ch);
    double best = 0.0;
    for_each_subset(inst.cfg.ris_elements, inst.cfg.active_elements,
                    [&](const std::vector<int>& a) {
                      best = std::max(best,
                                      gamma_min_reference(inst.cfg, inst.ch,
                                                          r.design.precoder, a));
                    });
    if (!(r.snr.gamma_min >= best * (1.0 - 1e-9)))
      c.fail("instance " + std::to_string(rep) + ": solver bound " +
             std::to_string(r.snr.gamma_min) + " below enumerated max " + std::to_string(best));
  }
  return c;
}

// criterion 2: with aligned coefficients the numerator amplitude equals
// |f| + eta*sum_A |g| + sum_Ac |g| to 1e-10 on 1000 random instances.
Check criterion2() {
  Check c;
  Rng rng(0xC2);
  for (int rep = 0; rep < 1000 && c.pass; ++rep) {
    const int n = 2 + static_cast<int>(rng.uniform_below(14));
    const int l = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n) + 1));
    const double eta = 1.0 + 3.0 * rng.uniform();
    EffectiveChannels eff;
    eff.direct = rng.standard_complex_normal();
    eff.cascade.resize(static_cast<std::size_t>(n));
    for (cplx& z : eff.cascade) z = rng.standard_complex_normal();
    const std::vector<int> active = optimal_placement(eff, l);
    const CVec omega = optimal_coefficients(eff, active, eta);

    cplx num = eff.direct;
    for (std::size_t i = 0; i < omega.size(); ++i) num += omega[i] * eff.cascade[i];
    std::vector<char> mask(static_cast<std::size_t>(n), 0);
    for (int i : active) mask[static_cast<std::size_t>(i)] = 1;
    double expected = std::abs(eff.direct);
    for (std::size_t i = 0; i < omega.size(); ++i)
      expected += (mask[i] ? eta : 1.0) * std::abs(eff.cascade[i]);

    if (!(std::abs(std::abs(num) - expected) <= 1e-10 * std::max(1.0, expected)))
      c.fail("instance " + std::to_string(rep) + ": |c| " + std::to_string(std::abs(num)) +
             " vs closed sum " + std::to_string(expected));
  }
  return c;
}

// criterion 3: the noise bound and the full bound chain hold with the
// exhaustive oracle on the criterion-1 instance family.
Check criterion3() {
  Check c;
  Rng rng(0xC1);  // same instance stream as criterion 1
  for (int rep = 0; rep < 200 && c.pass; ++rep) {
    const SmallInstance inst = small_instance(rng);
    const SolveResult r = alternating_solve(inst.cfg, inst.ch);
    if (!(r.snr.r <= r.snr.r_max * (1.0 + 1e-12)))
      c.fail("instance " + std::to_string(rep) + ": ris noise exceeds its bound");
    try {
      const GapReport g = gap_analysis(inst.cfg, inst.ch, 0.5);
      const bool chain = g.gamma_lb <= g.gamma_prop * (1.0 + 1e-9) &&
                         g.gamma_prop <= g.gamma_opt * (1.0 + 1e-9) &&
                         g.gamma_opt <= g.gamma_ub * (1.0 + 1e-9);
      if (!chain) c.fail("instance " + std::to_string(rep) + ": bound chain out of order");
    } catch (const std::exception& e) {
      c.fail("instance " + std::to_string(rep) + ": " + e.what());
    }
  }
  return c;
}

// criterion 4: with the amplification set exactly at the bound for delta,
// the measured normalized gap stays within delta on 100 small instances,
// for delta in {0.01, 0.1, 0.5}.
Check criterion4() {
  Check c;
  Rng rng(0xC4);
  const double deltas[] = {0.01, 0.1, 0.5};
  for (int rep = 0; rep < 100 && c.pass; ++rep) {
    const int n = 6 + static_cast<int>(rng.uniform_below(5));  // 6..10
    const int l = 1 + static_cast<int>(rng.uniform_below(3));  // 1..3
    const ChannelSet ch = random_channels(rng, n, 3);
    const double eta_target = 1.2 + 2.0 * rng.uniform();
    for (double delta : deltas) {
      SystemConfig cfg = desk_config(3, n, l, 2.0);
      const double topsum = r_max_bound(ch.h_ru, l, 1.0, 1.0);
      cfg.ris_noise_var =
          delta * cfg.noise_var / ((1.0 - delta) * eta_target * eta_target * topsum);
      cfg.eta = eta_max_bound(ch.h_ru, l, delta, cfg.noise_var, cfg.ris_noise_var);
      try {
        const GapReport g = gap_analysis(cfg, ch, delta);
        if (!(g.e <= delta + 1e-12))
          c.fail("instance " + std::to_string(rep) + " delta " + std::to_string(delta) +
                 ": measured gap " + std::to_string(g.e));
      } catch (const std::exception& e) {
        c.fail("instance " + std::to_string(rep) + ": " + e.what());
      }
    }
  }
  return c;
}

// criterion 5: the lower-bound trace never decreases and the loop settles
// within five iterations on at least 99% of 1000 default-scale instances.
Check criterion5() {
  Check c;
  const SystemConfig cfg;  // stock defaults
  const Geometry geom;
  const FadingSpec fading;
  int fast = 0;
  std::vector<std::size_t> lengths;
  lengths.reserve(1000);
  for (int t = 0; t < 1000; ++t) {
    Rng rng(derive_seed(0xC5, static_cast<std::uint64_t>(t)));
    const ChannelSet ch = generate_channels(cfg, geom, fading, rng);
    const SolveResult r = alternating_solve(cfg, ch);
    for (std::size_t i = 1; i < r.gamma_min_trace.size(); ++i)
      if (!(r.gamma_min_trace[i] >= r.gamma_min_trace[i - 1] * (1.0 - 1e-12)))
        c.fail("trial " + std::to_string(t) + ": bound trace decreased at step " +
               std::to_string(i));
    lengths.push_back(r.gamma_min_trace.size());
    if (r.gamma_min_trace.size() <= 5) ++fast;
  }
  std::sort(lengths.begin(), lengths.end());
  if (fast < 990)
    c.fail("monotone on all instances, but only " + std::to_string(fast) +
           "/1000 reached a 1e-8 relative change within 5 iterations (median " +
           std::to_string(lengths[500]) + ", p99 " + std::to_string(lengths[989]) +
           "); the alternating fixed point contracts geometrically, not in O(1) steps");
  return c;
}

// criterion 6: full-scale trends on 100 paired realizations. The three
// sub-checks are reported together so a single failing part stays visible.
Check criterion6() {
  Check c;
  const std::uint64_t root = 20260808;
  const Geometry geom;
  const FadingSpec fading;
  const int trials = 100;
  const int placements = 100;
  std::string parts;

  // (a) at L = 40, the proposed design beats the worst of 100 fixed
  // arbitrary placements by at least 0.5 bits/s/Hz of mean SE.
  {
    SystemConfig cfg;
    cfg.active_elements = 40;
    double mean_prop = 0.0;
    std::vector<double> arb_mean(placements, 0.0);
    for (int t = 0; t < trials; ++t) {
      Rng rng(derive_seed(root, static_cast<std::uint64_t>(t)));
      const ChannelSet ch = generate_channels(cfg, geom, fading, rng);
      mean_prop += alternating_solve(cfg, ch).snr.se;
      for (int k = 0; k < placements; ++k) {
        const std::uint64_t pk = derive_seed(root, 1000003ULL + static_cast<std::uint64_t>(k));
        const auto [d, b] = baseline_design(Baseline::arbitrary, cfg, ch, pk);
        arb_mean[static_cast<std::size_t>(k)] += b.se;
      }
    }
    mean_prop /= trials;
    double worst = 1e300;
    for (double& v : arb_mean) worst = std::min(worst, v / trials);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "(a) proposed %.4f vs worst arbitrary %.4f, gap %.3f vs 0.5",
                  mean_prop, worst, mean_prop - worst);
    parts += buf;
    if (!(mean_prop >= worst + 0.5)) c.fail("");
  }

  // (b) at L = 60 the proposed design reaches 95% of the fully active SE.
  {
    SystemConfig cfg;
    cfg.active_elements = 60;
    double mean_prop = 0.0, mean_active = 0.0;
    for (int t = 0; t < trials; ++t) {
      Rng rng(derive_seed(root, static_cast<std::uint64_t>(t)));
      const ChannelSet ch = generate_channels(cfg, geom, fading, rng);
      mean_prop += alternating_solve(cfg, ch).snr.se;
      mean_active += baseline_design(Baseline::fully_active, cfg, ch).second.se;
    }
    mean_prop /= trials;
    mean_active /= trials;
    char buf[160];
    std::snprintf(buf, sizeof(buf), " | (b) proposed %.4f vs fully active %.4f (%.1f%% vs 95%%)",
                  mean_prop, mean_active, 100.0 * mean_prop / mean_active);
    parts += buf;
    if (!(mean_prop >= 0.95 * mean_active)) c.fail("");
  }

  // (c) proposed >= passive >= no-RIS mean SE at every sweep point.
  {
    SystemConfig cfg;
    SweepSpec sweep;
    sweep.variable = SweepSpec::Variable::l;
    sweep.values = {20, 40, 60, 80};
    sweep.trials = trials;
    sweep.root_seed = root;
    sweep.methods = {Method::proposed, Method::passive, Method::no_ris};
    RunOptions opts;
    opts.threads = 2;
    const std::vector<SweepRow> rows = run_sweep(cfg, geom, fading, sweep, opts);
    bool ordered = true;
    for (std::size_t vi = 0; vi < sweep.values.size(); ++vi) {
      const double prop = rows[3 * vi].mean_se;
      const double pass = rows[3 * vi + 1].mean_se;
      const double none = rows[3 * vi + 2].mean_se;
      if (!(prop >= pass && pass >= none)) ordered = false;
    }
    parts += ordered ? " | (c) ordering holds at every sweep point"
                     : " | (c) method ordering broken";
    if (!ordered) c.fail("");
  }
  c.detail = parts;
  return c;
}

// criterion 7: two CLI runs with the same config and seed produce
// byte-identical CSVs, also across thread counts.
Check criterion7() {
  Check c;
  const char* cfg_path = "acc7.cfg";
  {
    std::ofstream cfg(cfg_path);
    cfg << "n = 32\nm = 4\nl = 6\n"
        << "sweep_variable = eta_db\nsweep_values = 0, 10\ntrials = 8\nseed = 7\n"
        << "methods = proposed, arbitrary, passive, no_ris\n"
        << "arbitrary_placements = 5\n";
  }
  auto run = [&](const char* out, int threads) {
    std::ostringstream cmd;
    cmd << '"' << HRISIM_CLI_PATH << '"' << " simulate --config " << cfg_path << " --threads "
        << threads << " --out " << out << " > /dev/null 2>&1";
    return std::system(cmd.str().c_str());
  };
  auto slurp = [](const char* path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  if (run("acc7_a.csv", 1) != 0 || run("acc7_b.csv", 1) != 0 || run("acc7_c.csv", 4) != 0) {
    c.fail("CLI run failed");
  } else {
    const std::string a = slurp("acc7_a.csv"), b = slurp("acc7_b.csv"), d = slurp("acc7_c.csv");
    if (a.empty()) c.fail("empty CSV output");
    if (a != b) c.fail("two identical runs produced different bytes");
    if (a != d) c.fail("thread count changed the output bytes");
  }
  std::remove(cfg_path);
  std::remove("acc7_a.csv");
  std::remove("acc7_b.csv");
  std::remove("acc7_c.csv");
  return c;
}

// criterion 8: enforcing the power budget on deliberately violating designs
// lands exactly on the budget and the rescaled design is feasible.
Check criterion8() {
  Check c;
  Rng rng(0xC8);
  for (int rep = 0; rep < 100 && c.pass; ++rep) {
    const int n = 6 + static_cast<int>(rng.uniform_below(7));
    const int l = 1 + static_cast<int>(rng.uniform_below(4));
    const ChannelSet ch = random_channels(rng, n, 3);
    SystemConfig cfg = desk_config(3, n, l, 1.0 + 2.0 * rng.uniform());
    const SolveResult r = alternating_solve(cfg, ch);
    if (!(r.snr.p_ris > 0.0)) continue;
    cfg.ris_power_max = r.snr.p_ris * (0.01 + 0.9 * rng.uniform());
    const HrisDesign scaled = enforce_ris_power(r.design, cfg, ch);
    const SnrBreakdown b = snr(cfg, ch, scaled);
    if (!(std::abs(b.p_ris - cfg.ris_power_max) <= 1e-9 * cfg.ris_power_max))
      c.fail("instance " + std::to_string(rep) + ": rescaled power " +
             std::to_string(b.p_ris) + " vs budget " + std::to_string(cfg.ris_power_max));
    if (!(b.p_ris <= cfg.ris_power_max * (1.0 + 1e-9)))
      c.fail("instance " + std::to_string(rep) + ": rescaled design still over budget");
  }
  return c;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<Check()> fn;
    double limit_s;  // 0 = no runtime requirement
  };
  const std::vector<Entry> entries = {
      {1, "closed-form placement attains the enumerated bound optimum", criterion1, 60.0},
      {2, "aligned coefficients meet the closed numerator sum", criterion2, 10.0},
      {3, "noise bound and oracle bound chain hold", criterion3, 0.0},
      {4, "gap target met when amplification sits at its bound", criterion4, 120.0},
      {5, "monotone convergence within five iterations", criterion5, 0.0},
      {6, "full-scale trend reproduction", criterion6, 300.0},
      {7, "byte-identical CLI output across runs and thread counts", criterion7, 0.0},
      {8, "power enforcement lands on the budget", criterion8, 0.0},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = e.fn();
    } catch (const std::exception& ex) {
      c.fail(std::string("unexpected exception: ") + ex.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (e.limit_s > 0.0 && secs > e.limit_s)
      c.fail("runtime " + std::to_string(secs) + " s exceeded " + std::to_string(e.limit_s) +
             " s");
    if (c.pass && c.detail.empty()) {
      std::printf("[PASS] criterion %d: %s (%.2f s)\n", e.id, e.name, secs);
    } else if (c.pass) {
      std::printf("[PASS] criterion %d: %s (%.2f s) -- %s\n", e.id, e.name, secs,
                  c.detail.c_str());
    } else {
      std::printf("[FAIL] criterion %d: %s (%.2f s) -- %s\n", e.id, e.name, secs,
                  c.detail.c_str());
      ++failures;
    }
  }
  return failures;
}
