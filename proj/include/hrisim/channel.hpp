// SPDX-License-Identifier: Apache-2.0
//
// Random channel generation for the three links of the scenario: BS-RIS,
// RIS-UE and BS-UE. Small-scale fading is Rician with a per-link factor;
// large-scale attenuation follows a log-distance model applied as a scalar
// amplitude on the whole link.
//
// The line-of-sight component is a unit-modulus matrix with entrywise
// uniform random phases drawn once per realization. No per-element array
// geometry is modeled; what matters for the algorithms downstream is that
// entry magnitudes equalize as the Rician factor grows while the average
// per-entry power stays at one.

#pragma once

#include <cmath>
#include <stdexcept>

#include "hrisim/geometry.hpp"
#include "hrisim/linalg.hpp"
#include "hrisim/rng.hpp"
#include "hrisim/system.hpp"

namespace hrisim {

struct FadingSpec {
  double rho_bu = 10.0;  // Rician factor of the BS-UE link, linear
  double rho_br = 10.0;  // BS-RIS
  double rho_ru = 0.0;   // RIS-UE (Rayleigh by default)
  double pathloss_intercept_db = 30.0;
  double pathloss_decade_db = 22.0;  // dB added per decade of distance

  void validate() const {
    auto ok = [](double r) { return r >= 0.0 && std::isfinite(r); };
    if (!ok(rho_bu) || !ok(rho_br) || !ok(rho_ru))
      throw std::invalid_argument("fading: rician factors must be finite and >= 0");
    if (!std::isfinite(pathloss_intercept_db) || !std::isfinite(pathloss_decade_db))
      throw std::invalid_argument("fading: pathloss parameters must be finite");
  }
};

// One channel realization. h_br is N x M, h_ru and h_bu are the RIS-UE and
// BS-UE links of length N and M.
struct ChannelSet {
  CMat h_br;
  CVec h_ru;
  CVec h_bu;
  Vec3 ue_position;
  bool operator==(const ChannelSet&) const = default;
};

// Amplitude-domain gain at distance d meters: 10^-( (intercept + decade*log10 d) / 20 ).
// The squared value is the power attenuation.
inline double pathloss_linear(double d, const FadingSpec& spec) {
  if (!(d > 0.0) || !std::isfinite(d))
    throw std::domain_error("pathloss_linear: distance must be finite and > 0");
  const double loss_db = spec.pathloss_intercept_db + spec.pathloss_decade_db * std::log10(d);
  return db_to_amp(-loss_db);
}

// sqrt(rho/(1+rho)) * LOS + sqrt(1/(1+rho)) * NLOS, unit average entry power.
// Each entry consumes exactly three uniform draws (one LOS phase, two for the
// scatter term) regardless of rho, so sweeps over rho stay draw-aligned.
inline CMat rician_matrix(std::size_t rows, std::size_t cols, double rho, Rng& rng) {
  if (rho < 0.0 || !std::isfinite(rho))
    throw std::domain_error("rician_matrix: rho must be finite and >= 0");
  const double w_los = std::sqrt(rho / (1.0 + rho));
  const double w_nlos = std::sqrt(1.0 / (1.0 + rho));
  CMat h(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const cplx los = rng.unit_phasor();
      const cplx nlos = rng.standard_complex_normal();
      h(r, c) = w_los * los + w_nlos * nlos;
    }
  }
  return h;
}

inline CVec rician_vector(std::size_t len, double rho, Rng& rng) {
  CMat m = rician_matrix(len, 1, rho, rng);
  CVec v(len);
  for (std::size_t i = 0; i < len; ++i) v[i] = m(i, 0);
  return v;
}

// One full realization. Draw order is fixed and part of the determinism
// contract: UE position, then h_br row-major, then h_ru, then h_bu.
inline ChannelSet generate_channels(const SystemConfig& cfg, const Geometry& geom,
                                    const FadingSpec& fading, Rng& rng) {
  cfg.validate();
  geom.validate();
  fading.validate();

  ChannelSet ch;
  ch.ue_position = sample_ue_position(geom, rng);

  const double a_br = pathloss_linear(distance(geom.bs, geom.ris), fading);
  const double a_ru = pathloss_linear(distance(geom.ris, ch.ue_position), fading);
  const double a_bu = pathloss_linear(distance(geom.bs, ch.ue_position), fading);

  const auto n = static_cast<std::size_t>(cfg.ris_elements);
  const auto m = static_cast<std::size_t>(cfg.bs_antennas);

  ch.h_br = rician_matrix(n, m, fading.rho_br, rng);
  for (cplx& z : ch.h_br.data()) z *= a_br;

  ch.h_ru = rician_vector(n, fading.rho_ru, rng);
  for (cplx& z : ch.h_ru) z *= a_ru;

  ch.h_bu = rician_vector(m, fading.rho_bu, rng);
  for (cplx& z : ch.h_bu) z *= a_bu;

  return ch;
}

}  // namespace hrisim
