// SPDX-License-Identifier: Apache-2.0
//
// Node placement for the link-level scenario: one BS, one RIS, and a planar
// rectangular region the UE position is drawn from.

#pragma once

#include <cmath>
#include <stdexcept>

#include "hrisim/rng.hpp"

namespace hrisim {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Vec3&) const = default;
};

inline double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

struct Geometry {
  Vec3 bs{0.0, 0.0, 0.0};
  Vec3 ris{20.0, 13.0, 3.0};
  Vec3 ue_corner{18.0, 8.0, 0.0};
  double ue_extent_x = 3.0;   // meters, x span of the UE rectangle
  double ue_extent_y = 10.0;  // meters, y span

  void validate() const {
    auto finite = [](const Vec3& v) {
      return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
    };
    if (!finite(bs) || !finite(ris) || !finite(ue_corner))
      throw std::invalid_argument("geometry: positions must be finite");
    if (!(ue_extent_x >= 0.0) || !(ue_extent_y >= 0.0))
      throw std::invalid_argument("geometry: ue_extent must be >= 0");
    if (!(distance(bs, ris) > 0.0))
      throw std::invalid_argument("geometry: bs and ris positions coincide");
  }
};

// Uniform point in the axis-aligned UE rectangle; the region is planar, so
// the z coordinate is the corner's. A zero extent collapses to the corner.
// Consumes exactly two uniform draws.
inline Vec3 sample_ue_position(const Geometry& g, Rng& rng) {
  g.validate();
  const double ux = rng.uniform();
  const double uy = rng.uniform();
  return {g.ue_corner.x + ux * g.ue_extent_x,
          g.ue_corner.y + uy * g.ue_extent_y,
          g.ue_corner.z};
}

}  // namespace hrisim
