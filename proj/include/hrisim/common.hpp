// SPDX-License-Identifier: Apache-2.0
//
// Shared scalar helpers and error types for the hrisim library.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hrisim {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// dB / linear conversions. Every linear power in this library shares one
// milliwatt reference, so dBm-valued inputs stay commensurate with each other
// after conversion.
inline double db_to_pow(double db) { return std::pow(10.0, db / 10.0); }
inline double db_to_amp(double db) { return std::pow(10.0, db / 20.0); }
inline double pow_to_db(double p) { return 10.0 * std::log10(p); }
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

// Overall channel vanished; no precoder direction exists.
class DegenerateChannelError : public std::runtime_error {
 public:
  explicit DegenerateChannelError(const std::string& msg) : std::runtime_error(msg) {}
};

// A design violates one of its amplitude or norm constraints.
class InfeasibleDesignError : public std::runtime_error {
 public:
  explicit InfeasibleDesignError(const std::string& msg) : std::runtime_error(msg) {}
};

// An exhaustive-search request exceeds the configured size guards.
class OracleScaleError : public std::runtime_error {
 public:
  explicit OracleScaleError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hrisim
