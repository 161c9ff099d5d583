// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "hrisim/common.hpp"

namespace hrisim {

// Scalar system parameters. Linear quantities share the milliwatt reference
// used by the dBm config keys. Defaults are the standard simulation setup:
// 8 BS antennas, a 100-element surface with 20 active elements, 10 dB
// amplification, 10 dBm transmit power, 0 dBm RIS power budget and -80 dBm
// noise floors.
struct SystemConfig {
  int bs_antennas = 8;      // M
  int ris_elements = 100;   // N
  int active_elements = 20; // L
  double eta = db_to_amp(10.0);        // max active amplitude gain, linear
  double tx_power = dbm_to_mw(10.0);   // P_t, linear mW
  double ris_power_max = dbm_to_mw(0.0);
  double noise_var = dbm_to_mw(-80.0);     // receiver noise sigma^2, linear mW
  double ris_noise_var = dbm_to_mw(-80.0); // active-element noise nu^2, linear mW
  int max_iter = 20;
  double conv_tol = 1e-8;  // relative change of the SNR lower bound

  void validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
    if (bs_antennas < 1) fail("m must be >= 1");
    if (ris_elements < 1) fail("n must be >= 1");
    if (active_elements < 0 || active_elements > ris_elements) fail("l must satisfy 0 <= l <= n");
    if (!(eta >= 1.0) || !std::isfinite(eta)) fail("eta must be >= 1 (eta_db >= 0)");
    if (!(tx_power > 0.0) || !std::isfinite(tx_power)) fail("p_t must be > 0");
    if (!(ris_power_max >= 0.0)) fail("p_ris_max must be >= 0");
    if (!(noise_var > 0.0) || !std::isfinite(noise_var)) fail("sigma2 must be > 0");
    if (!(ris_noise_var >= 0.0) || !std::isfinite(ris_noise_var)) fail("nu2 must be >= 0");
    if (max_iter < 1) fail("max_iter must be >= 1");
    if (!(conv_tol >= 0.0) || !std::isfinite(conv_tol)) fail("conv_tol must be >= 0");
  }
};

}  // namespace hrisim
