// SPDX-License-Identifier: Apache-2.0
//
// Deterministic random number generation.
//
// Reproducibility contract: mt19937_64 has a fully specified output sequence
// and every distribution here is built from raw 64-bit draws with explicit
// arithmetic, so a given seed produces bit-identical streams on any
// conforming platform. Parallel drivers must not share one Rng; they derive
// one independent seed per work item with derive_seed().

#pragma once

#include <cstdint>
#include <random>

#include "hrisim/common.hpp"

namespace hrisim {

// splitmix64 mixing step (Steele, Lea, Flood 2014 finalizer).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for sub-stream `stream` of `root`. Trial i of a run uses
// derive_seed(root_seed, i); nested streams chain the call.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  return splitmix64(root ^ splitmix64(stream + 0x9e3779b97f4a7c15ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). Modulo bias is O(bound / 2^64).
  std::uint64_t uniform_below(std::uint64_t bound) {
    return next_u64() % bound;
  }

  // exp(j*2*pi*u): uniformly distributed unit phasor. One draw.
  cplx unit_phasor() {
    return std::polar(1.0, 2.0 * kPi * uniform());
  }

  // Circularly-symmetric complex Gaussian, unit variance (E|w|^2 = 1).
  // Polar Box-Muller form; two draws.
  cplx standard_complex_normal() {
    const double mag = std::sqrt(-std::log(uniform_pos()));
    return std::polar(mag, 2.0 * kPi * uniform());
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 gen_;
};

}  // namespace hrisim
