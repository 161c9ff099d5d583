// SPDX-License-Identifier: Apache-2.0
//
// Seeded Monte-Carlo sweep harness. One sweep varies a single parameter
// (Rician factor, amplification in dB, or the active-element count) over a
// grid of values, runs a set of methods on paired channel realizations, and
// aggregates spectral efficiency per (value, method).
//
// Determinism: trial t draws its channels from derive_seed(root_seed, t)
// regardless of the sweep value, methods share the realization at each
// (value, trial), arbitrary placements use their own fixed seed stream, and
// every sample lands in a preallocated slot keyed by (value, trial), so the
// output is byte-identical for a given (config, root_seed) at any thread
// count.

#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hrisim/channel.hpp"
#include "hrisim/oracle.hpp"

namespace hrisim {

enum class Method { proposed, arbitrary, passive, active, no_ris, oracle };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::proposed: return "proposed";
    case Method::arbitrary: return "arbitrary";
    case Method::passive: return "passive";
    case Method::active: return "active";
    case Method::no_ris: return "no_ris";
    case Method::oracle: return "oracle";
  }
  return "?";
}

inline Method method_from_string(const std::string& s) {
  if (s == "proposed") return Method::proposed;
  if (s == "arbitrary") return Method::arbitrary;
  if (s == "passive") return Method::passive;
  if (s == "active") return Method::active;
  if (s == "no_ris") return Method::no_ris;
  if (s == "oracle") return Method::oracle;
  throw std::invalid_argument("unknown method: " + s);
}

struct SweepSpec {
  enum class Variable { rho, eta_db, l };

  Variable variable = Variable::eta_db;
  std::vector<double> values = {0.0, 5.0, 10.0, 15.0, 20.0};
  int trials = 100;
  std::uint64_t root_seed = 1;
  std::vector<Method> methods = {Method::proposed, Method::arbitrary, Method::passive,
                                 Method::active, Method::no_ris};
  // true: a rho sweep sets all three link factors to the sweep value;
  // false: only the BS-UE and BS-RIS factors follow it and the RIS-UE link
  // keeps its configured factor.
  bool tie_rho_links = true;

  void validate(const SystemConfig& cfg) const {
    if (values.empty()) throw std::invalid_argument("sweep: values must be non-empty");
    for (std::size_t i = 1; i < values.size(); ++i)
      if (!(values[i] > values[i - 1]))
        throw std::invalid_argument("sweep: values must be strictly increasing");
    if (trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
    if (methods.empty()) throw std::invalid_argument("sweep: methods must be non-empty");
    for (double v : values) {
      switch (variable) {
        case Variable::rho:
          if (!(v >= 0.0)) throw std::invalid_argument("sweep: rho values must be >= 0");
          break;
        case Variable::eta_db:
          if (!(v >= 0.0)) throw std::invalid_argument("sweep: eta_db values must be >= 0");
          break;
        case Variable::l:
          if (v != std::floor(v) || v < 0.0 || v > static_cast<double>(cfg.ris_elements))
            throw std::invalid_argument("sweep: L values must be integers in [0, n]");
          break;
      }
    }
  }
};

inline const char* to_string(SweepSpec::Variable v) {
  switch (v) {
    case SweepSpec::Variable::rho: return "rho";
    case SweepSpec::Variable::eta_db: return "eta_db";
    case SweepSpec::Variable::l: return "L";
  }
  return "?";
}

inline SweepSpec::Variable variable_from_string(const std::string& s) {
  if (s == "rho") return SweepSpec::Variable::rho;
  if (s == "eta_db") return SweepSpec::Variable::eta_db;
  if (s == "L" || s == "l") return SweepSpec::Variable::l;
  throw std::invalid_argument("unknown sweep variable: " + s);
}

struct SweepRow {
  std::string variable;
  double value = 0.0;
  std::string method;
  double mean_se = 0.0;
  double min_se = 0.0;
  double max_se = 0.0;
  double mean_gamma_db = 0.0;  // 10*log10 of the mean linear SNR
  int trials = 0;
};

struct RunOptions {
  unsigned threads = 1;
  int arbitrary_placements = 10;  // candidate placements per trial
  OracleLimits oracle;
};

namespace detail {

// Seed stream tag for the arbitrary-placement candidates. The candidates are
// a fixed set shared by every trial and sweep value.
constexpr std::uint64_t kArbitraryStream = 0x61726269747261ULL;

struct SweepPoint {
  SystemConfig cfg;
  FadingSpec fading;
};

inline SweepPoint apply_sweep_value(const SystemConfig& cfg, const FadingSpec& fading,
                                    const SweepSpec& sweep, double value) {
  SweepPoint p{cfg, fading};
  switch (sweep.variable) {
    case SweepSpec::Variable::rho:
      p.fading.rho_bu = value;
      p.fading.rho_br = value;
      if (sweep.tie_rho_links) p.fading.rho_ru = value;
      break;
    case SweepSpec::Variable::eta_db:
      p.cfg.eta = db_to_amp(value);
      break;
    case SweepSpec::Variable::l:
      p.cfg.active_elements = static_cast<int>(std::llround(value));
      break;
  }
  p.cfg.validate();
  p.fading.validate();
  return p;
}

}  // namespace detail

inline std::vector<SweepRow> run_sweep(const SystemConfig& cfg, const Geometry& geom,
                                       const FadingSpec& fading, const SweepSpec& sweep,
                                       const RunOptions& opts = {}) {
  cfg.validate();
  geom.validate();
  fading.validate();
  sweep.validate(cfg);
  if (opts.arbitrary_placements < 1)
    throw std::invalid_argument("run_sweep: arbitrary_placements must be >= 1");

  const std::size_t n_values = sweep.values.size();
  const std::size_t n_methods = sweep.methods.size();
  const auto trials = static_cast<std::size_t>(sweep.trials);
  const auto n_arb = static_cast<std::size_t>(opts.arbitrary_placements);

  std::vector<detail::SweepPoint> points;
  points.reserve(n_values);
  for (double v : sweep.values)
    points.push_back(detail::apply_sweep_value(cfg, fading, sweep, v));

  // The oracle guard must hold at every sweep point before any work starts.
  for (Method m : sweep.methods) {
    if (m != Method::oracle) continue;
    for (std::size_t vi = 0; vi < n_values; ++vi) {
      const SystemConfig& c = points[vi].cfg;
      if (c.ris_elements > opts.oracle.max_n ||
          binomial_capped(c.ris_elements, c.active_elements, opts.oracle.placement_cap) >
              opts.oracle.placement_cap)
        throw std::invalid_argument(
            "run_sweep: oracle method not permitted at n=" + std::to_string(c.ris_elements) +
            ", l=" + std::to_string(c.active_elements) + " (guard n<=" +
            std::to_string(opts.oracle.max_n) + ", placements<=" +
            std::to_string(opts.oracle.placement_cap) + ")");
    }
  }

  // Sample slots, fixed before any parallel work.
  std::vector<std::vector<std::vector<double>>> se(n_values), gamma(n_values);
  for (std::size_t vi = 0; vi < n_values; ++vi) {
    se[vi].resize(n_methods);
    gamma[vi].resize(n_methods);
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
      const std::size_t slots = sweep.methods[mi] == Method::arbitrary ? trials * n_arb : trials;
      se[vi][mi].assign(slots, 0.0);
      gamma[vi][mi].assign(slots, 0.0);
    }
  }

  auto run_item = [&](std::size_t vi, std::size_t t) {
    const detail::SweepPoint& pt = points[vi];
    const std::uint64_t trial_seed = derive_seed(sweep.root_seed, t);
    Rng rng(trial_seed);
    const ChannelSet ch = generate_channels(pt.cfg, geom, pt.fading, rng);

    std::optional<SolveResult> proposed;
    auto proposed_result = [&]() -> const SolveResult& {
      if (!proposed) proposed = alternating_solve(pt.cfg, ch);
      return *proposed;
    };

    for (std::size_t mi = 0; mi < n_methods; ++mi) {
      switch (sweep.methods[mi]) {
        case Method::proposed: {
          const SolveResult& r = proposed_result();
          se[vi][mi][t] = r.snr.se;
          gamma[vi][mi][t] = r.snr.gamma;
          break;
        }
        case Method::arbitrary: {
          for (std::size_t k = 0; k < n_arb; ++k) {
            const std::uint64_t pk =
                derive_seed(derive_seed(sweep.root_seed, detail::kArbitraryStream), k);
            const auto [d, b] = baseline_design(Baseline::arbitrary, pt.cfg, ch, pk);
            se[vi][mi][t * n_arb + k] = b.se;
            gamma[vi][mi][t * n_arb + k] = b.gamma;
          }
          break;
        }
        case Method::passive:
        case Method::active:
        case Method::no_ris: {
          const Baseline kind = sweep.methods[mi] == Method::passive ? Baseline::passive
                                : sweep.methods[mi] == Method::active ? Baseline::fully_active
                                                                      : Baseline::no_ris;
          const auto [d, b] = baseline_design(kind, pt.cfg, ch);
          se[vi][mi][t] = b.se;
          gamma[vi][mi][t] = b.gamma;
          break;
        }
        case Method::oracle: {
          const PlacementCandidate c =
              exhaustive_oracle(pt.cfg, ch, proposed_result().design.precoder, opts.oracle);
          se[vi][mi][t] = std::log2(1.0 + c.gamma);
          gamma[vi][mi][t] = c.gamma;
          break;
        }
      }
    }
  };

  const std::size_t total = n_values * trials;
  const unsigned n_threads = std::max(1u, opts.threads);
  if (n_threads == 1) {
    for (std::size_t i = 0; i < total; ++i) run_item(i / trials, i % trials);
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= total) return;
        try {
          run_item(i / trials, i % trials);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) {
            const std::size_t t = i % trials;
            try {
              std::throw_with_nested(std::runtime_error(
                  "sweep trial " + std::to_string(t) + " (seed " +
                  std::to_string(derive_seed(sweep.root_seed, t)) + ") failed"));
            } catch (...) {
              first_error = std::current_exception();
            }
          }
          failed.store(true, std::memory_order_relaxed);
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  std::vector<SweepRow> rows;
  rows.reserve(n_values * n_methods);
  for (std::size_t vi = 0; vi < n_values; ++vi) {
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
      const std::vector<double>& s = se[vi][mi];
      const std::vector<double>& g = gamma[vi][mi];
      SweepRow row;
      row.variable = to_string(sweep.variable);
      row.value = sweep.values[vi];
      row.method = to_string(sweep.methods[mi]);
      row.trials = sweep.trials;
      double se_sum = 0.0, g_sum = 0.0;
      row.min_se = s.front();
      row.max_se = s.front();
      for (std::size_t i = 0; i < s.size(); ++i) {
        se_sum += s[i];
        g_sum += g[i];
        row.min_se = std::min(row.min_se, s[i]);
        row.max_se = std::max(row.max_se, s[i]);
      }
      row.mean_se = se_sum / static_cast<double>(s.size());
      row.mean_gamma_db = pow_to_db(g_sum / static_cast<double>(g.size()));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// CSV with a fixed schema: variable,value,method,mean_se,min_se,max_se,
// mean_gamma_db,trials. Ten significant digits, LF line endings.
inline void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << "variable,value,method,mean_se,min_se,max_se,mean_gamma_db,trials\n";
  char buf[512];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%.10g,%s,%.10g,%.10g,%.10g,%.10g,%d\n",
                  r.variable.c_str(), r.value, r.method.c_str(), r.mean_se, r.min_se, r.max_se,
                  r.mean_gamma_db, r.trials);
    out << buf;
  }
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

}  // namespace hrisim
