// SPDX-License-Identifier: Apache-2.0
//
// Joint design of the transmit precoder, the RIS coefficient vector and the
// placement of the active elements for received-SNR maximization.
//
// Conventions used throughout:
//   overall channel   h^H = h_bu^H + h_ru^H diag(omega) h_br
//   effective direct  f   = h_bu^H p
//   effective cascade g_i = conj(h_ru_i) * (h_br p)_i
// so the received signal amplitude factors as h^H p = f + sum_i omega_i g_i.
// The SNR is tx_power*|h^H p|^2 / (r + noise_var) with the active-element
// noise r = ris_noise_var * sum_{i in A} |h_ru_i|^2 |omega_i|^2, and the
// lower bound gamma_min replaces r with its placement-independent worst case
// r_max over any L active elements.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "hrisim/channel.hpp"
#include "hrisim/linalg.hpp"
#include "hrisim/system.hpp"

namespace hrisim {

struct EffectiveChannels {
  cplx direct;   // f
  CVec cascade;  // g, length N
};

// A complete design. active_set is kept sorted ascending with distinct
// indices; coefficients carry amplitude eta at most on active elements and
// exactly one elsewhere.
struct HrisDesign {
  CVec precoder;                // p, unit norm
  CVec coeffs;                  // omega, length N
  std::vector<int> active_set;  // A
};

struct SnrBreakdown {
  double gamma = 0.0;      // exact received SNR, linear
  double gamma_min = 0.0;  // lower bound with worst-case RIS noise
  double c_abs = 0.0;      // |f + omega^T g|, numerator amplitude
  double r = 0.0;          // RIS noise power at the UE
  double r_max = 0.0;      // worst-case RIS noise power
  double p_ris = 0.0;      // power consumed by the active elements
  double se = 0.0;         // log2(1 + gamma)
};

namespace detail {

inline void check_active_set(const std::vector<int>& active, std::size_t n) {
  std::vector<char> seen(n, 0);
  for (int idx : active) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= n)
      throw std::invalid_argument("active set index out of range: " + std::to_string(idx));
    if (seen[static_cast<std::size_t>(idx)])
      throw std::invalid_argument("active set index repeated: " + std::to_string(idx));
    seen[static_cast<std::size_t>(idx)] = 1;
  }
}

inline std::vector<char> active_mask(const std::vector<int>& active, std::size_t n) {
  check_active_set(active, n);
  std::vector<char> mask(n, 0);
  for (int idx : active) mask[static_cast<std::size_t>(idx)] = 1;
  return mask;
}

}  // namespace detail

// Indices of v sorted by descending magnitude; equal magnitudes keep their
// original (lowest-first) order.
inline std::vector<int> magnitude_order(const CVec& v) {
  std::vector<double> mag(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mag[i] = std::abs(v[i]);
  std::vector<int> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&mag](int a, int b) { return mag[static_cast<std::size_t>(a)] > mag[static_cast<std::size_t>(b)]; });
  return idx;
}

// h = h_bu + h_br^H diag(conj(omega)) h_ru, the column form of the overall
// channel, so that h^H p = h_bu^H p + sum_i conj(h_ru_i) omega_i (h_br p)_i.
inline CVec overall_channel(const ChannelSet& ch, const CVec& omega) {
  const std::size_t n = ch.h_br.rows();
  const std::size_t m = ch.h_br.cols();
  if (omega.size() != n || ch.h_ru.size() != n || ch.h_bu.size() != m)
    throw std::invalid_argument("overall_channel: dimension mismatch");
  CVec h = ch.h_bu;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx w = std::conj(omega[i]) * ch.h_ru[i];
    for (std::size_t j = 0; j < m; ++j) h[j] += w * std::conj(ch.h_br(i, j));
  }
  return h;
}

// Maximal ratio transmission for the current coefficients: p = h / ||h||.
inline CVec mrt_precoder(const ChannelSet& ch, const CVec& omega) {
  CVec h = overall_channel(ch, omega);
  const double nrm = norm2(h);
  if (!(nrm > 0.0))
    throw DegenerateChannelError("mrt_precoder: overall channel is zero");
  for (cplx& z : h) z /= nrm;
  return h;
}

inline EffectiveChannels effective_channels(const ChannelSet& ch, const CVec& p) {
  if (norm2(p) > 1.0 + 1e-9)
    throw std::invalid_argument("effective_channels: precoder norm exceeds 1");
  EffectiveChannels eff;
  eff.direct = hdot(ch.h_bu, p);
  const CVec incident = matvec(ch.h_br, p);
  eff.cascade.resize(incident.size());
  for (std::size_t i = 0; i < incident.size(); ++i)
    eff.cascade[i] = std::conj(ch.h_ru[i]) * incident[i];
  return eff;
}

// The L cascade entries with the largest magnitude, in rank order. This is
// the placement that maximizes the SNR lower bound once the coefficients are
// phase-aligned, because the bound's numerator awards the amplification eta
// to exactly the |g_i| chosen active.
inline std::vector<int> optimal_placement(const EffectiveChannels& eff, int num_active) {
  const int n = static_cast<int>(eff.cascade.size());
  if (num_active < 0 || num_active > n)
    throw std::invalid_argument("optimal_placement: need 0 <= L <= N");
  std::vector<int> order = magnitude_order(eff.cascade);
  order.resize(static_cast<std::size_t>(num_active));
  return order;
}

// Phase-align every element against the direct path (amplitude eta on the
// active set, one elsewhere). With these coefficients the numerator amplitude
// equals |f| + sum_{A} eta |g_i| + sum_{A^c} |g_i| exactly. arg(0) is 0, so
// zero channels produce well-defined coefficients.
inline CVec optimal_coefficients(const EffectiveChannels& eff, const std::vector<int>& active,
                                 double eta) {
  const std::size_t n = eff.cascade.size();
  const std::vector<char> mask = detail::active_mask(active, n);
  const double theta_f = std::arg(eff.direct);
  CVec omega(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double amp = mask[i] ? eta : 1.0;
    omega[i] = std::polar(amp, theta_f - std::arg(eff.cascade[i]));
  }
  return omega;
}

// nu2 * sum_{i in A} |h_ru_i|^2 |omega_i|^2
inline double ris_noise_power(const CVec& h_ru, const CVec& omega,
                              const std::vector<int>& active, double nu2) {
  if (omega.size() != h_ru.size())
    throw std::invalid_argument("ris_noise_power: dimension mismatch");
  detail::check_active_set(active, h_ru.size());
  double s = 0.0;
  for (int idx : active) {
    const auto i = static_cast<std::size_t>(idx);
    s += std::norm(h_ru[i]) * std::norm(omega[i]);
  }
  return nu2 * s;
}

// Worst case of ris_noise_power over any placement of num_active elements:
// nu2 * eta^2 * (sum of the num_active largest |h_ru_i|^2).
inline double r_max_bound(const CVec& h_ru, int num_active, double eta, double nu2) {
  const int n = static_cast<int>(h_ru.size());
  if (num_active < 0 || num_active > n)
    throw std::invalid_argument("r_max_bound: need 0 <= L <= N");
  std::vector<double> mag2(h_ru.size());
  for (std::size_t i = 0; i < h_ru.size(); ++i) mag2[i] = std::norm(h_ru[i]);
  std::sort(mag2.begin(), mag2.end(), std::greater<double>());
  double s = 0.0;
  for (int i = 0; i < num_active; ++i) s += mag2[static_cast<std::size_t>(i)];
  return nu2 * eta * eta * s;
}

// Power consumed by the active elements: each contributes
// |omega_i|^2 * (incident signal power + amplifier noise), with the incident
// power taken per element as tx_power * |(h_br p)_i|^2.
inline double ris_power(const SystemConfig& cfg, const ChannelSet& ch, const HrisDesign& d) {
  detail::check_active_set(d.active_set, ch.h_br.rows());
  if (d.active_set.empty()) return 0.0;
  const CVec incident = matvec(ch.h_br, d.precoder);
  double s = 0.0;
  for (int idx : d.active_set) {
    const auto i = static_cast<std::size_t>(idx);
    s += std::norm(d.coeffs[i]) * (cfg.tx_power * std::norm(incident[i]) + cfg.ris_noise_var);
  }
  return s;
}

namespace detail {

inline void check_design(const SystemConfig& cfg, const ChannelSet& ch, const HrisDesign& d) {
  const std::size_t n = ch.h_br.rows();
  const std::size_t m = ch.h_br.cols();
  if (d.precoder.size() != m || d.coeffs.size() != n)
    throw InfeasibleDesignError("design dimensions do not match the channel");
  const double pn = norm2(d.precoder);
  if (pn > 1.0 + 1e-9)
    throw InfeasibleDesignError("precoder norm " + std::to_string(pn) + " exceeds 1");
  const std::vector<char> mask = active_mask(d.active_set, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(d.coeffs[i]);
    if (mask[i]) {
      if (a > cfg.eta * (1.0 + 1e-9))
        throw InfeasibleDesignError("active coefficient " + std::to_string(i) +
                                    " has amplitude " + std::to_string(a) +
                                    " above eta=" + std::to_string(cfg.eta));
    } else if (std::abs(a - 1.0) > 1e-9) {
      throw InfeasibleDesignError("passive coefficient " + std::to_string(i) +
                                  " has amplitude " + std::to_string(a) + ", expected 1");
    }
  }
}

}  // namespace detail

// Exact SNR of a feasible design plus its lower bound and power bookkeeping.
inline SnrBreakdown snr(const SystemConfig& cfg, const ChannelSet& ch, const HrisDesign& d) {
  detail::check_design(cfg, ch, d);
  const CVec h = overall_channel(ch, d.coeffs);
  const cplx sig = hdot(h, d.precoder);
  const double num = cfg.tx_power * std::norm(sig);

  SnrBreakdown b;
  b.c_abs = std::abs(sig);
  b.r = ris_noise_power(ch.h_ru, d.coeffs, d.active_set, cfg.ris_noise_var);
  b.r_max = r_max_bound(ch.h_ru, static_cast<int>(d.active_set.size()), cfg.eta,
                        cfg.ris_noise_var);
  b.gamma = num / (b.r + cfg.noise_var);
  b.gamma_min = num / (b.r_max + cfg.noise_var);
  b.p_ris = ris_power(cfg, ch, d);
  b.se = std::log2(1.0 + b.gamma);
  return b;
}

// If the consumed RIS power exceeds the budget, scale the active coefficients
// by sqrt(budget / consumed) so the rescaled design meets it with equality.
// Passive coefficients are untouched. No-op for feasible designs.
inline HrisDesign enforce_ris_power(HrisDesign d, const SystemConfig& cfg, const ChannelSet& ch) {
  const double consumed = ris_power(cfg, ch, d);
  if (consumed <= cfg.ris_power_max || d.active_set.empty()) return d;
  const double scale = std::sqrt(cfg.ris_power_max / consumed);
  for (int idx : d.active_set) d.coeffs[static_cast<std::size_t>(idx)] *= scale;
  return d;
}

struct SolveResult {
  HrisDesign design;
  SnrBreakdown snr;
  std::vector<double> gamma_min_trace;  // one entry per iteration
};

namespace detail {

inline bool converged(double prev, double cur, double tol) {
  const double denom = std::max(std::abs(prev), std::numeric_limits<double>::min());
  return std::abs(cur - prev) <= tol * denom;
}

}  // namespace detail

// Alternating maximization of the SNR lower bound. Starting from
// omega = [eta, 0, ..., 0] and A = {0, ..., L-1}, each iteration refits the
// MRT precoder against the current overall channel and then re-derives the
// placement and coefficients in closed form. Every step is an exact argmax
// of gamma_min, so the trace is non-decreasing; the loop stops when the
// relative change drops below conv_tol. The RIS power budget is enforced
// once after convergence and the returned breakdown scores the final design.
inline SolveResult alternating_solve(const SystemConfig& cfg, const ChannelSet& ch) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(cfg.ris_elements);
  if (ch.h_br.rows() != n || ch.h_br.cols() != static_cast<std::size_t>(cfg.bs_antennas))
    throw std::invalid_argument("alternating_solve: channel dimensions do not match config");

  CVec omega(n, cplx{0.0, 0.0});
  omega[0] = cplx{cfg.eta, 0.0};

  HrisDesign d;
  std::vector<double> trace;
  double prev = 0.0;
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    d.precoder = mrt_precoder(ch, omega);
    const EffectiveChannels eff = effective_channels(ch, d.precoder);
    std::vector<int> active = optimal_placement(eff, cfg.active_elements);
    std::sort(active.begin(), active.end());
    d.active_set = std::move(active);
    d.coeffs = optimal_coefficients(eff, d.active_set, cfg.eta);
    omega = d.coeffs;

    const double gm = snr(cfg, ch, d).gamma_min;
    trace.push_back(gm);
    if (iter > 0 && detail::converged(prev, gm, cfg.conv_tol)) break;
    prev = gm;
  }

  d = enforce_ris_power(std::move(d), cfg, ch);
  return {d, snr(cfg, ch, d), std::move(trace)};
}

// Alternating refit with the placement frozen: coefficients are re-aligned
// and the precoder refit until gamma_min settles. Used by the baseline
// designs. Starts from the stand-alone direct-path precoder so the first
// aligned iterate already dominates a system without the RIS.
inline SolveResult solve_fixed_placement(const SystemConfig& cfg, const ChannelSet& ch,
                                         std::vector<int> active) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(cfg.ris_elements);
  detail::check_active_set(active, n);
  std::sort(active.begin(), active.end());

  CVec p;
  const double hbu_norm = norm2(ch.h_bu);
  if (hbu_norm > 0.0) {
    p = ch.h_bu;
    for (cplx& z : p) z /= hbu_norm;
  } else {
    CVec omega0(n, cplx{0.0, 0.0});
    omega0[0] = cplx{cfg.eta, 0.0};
    p = mrt_precoder(ch, omega0);
  }

  HrisDesign d;
  d.active_set = std::move(active);
  std::vector<double> trace;
  double prev = 0.0;
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    const EffectiveChannels eff = effective_channels(ch, p);
    d.precoder = p;
    d.coeffs = optimal_coefficients(eff, d.active_set, cfg.eta);

    const double gm = snr(cfg, ch, d).gamma_min;
    trace.push_back(gm);
    if (iter > 0 && detail::converged(prev, gm, cfg.conv_tol)) break;
    prev = gm;
    p = mrt_precoder(ch, d.coeffs);
  }

  d = enforce_ris_power(std::move(d), cfg, ch);
  return {d, snr(cfg, ch, d), std::move(trace)};
}

}  // namespace hrisim
