#pragma once

#include <vector>

#include "dgp/gp.hpp"
#include "dgp/target.hpp"

// Expert-region partition of the xy-plane and offline dataset generation
// from a target trajectory rollout.

namespace dgp {

struct ExpertRegions {
  // Sector boundaries in degrees, ascending in [0, 360); sector k spans
  // [boundary_k, boundary_{k+1}) going counter-clockwise.
  std::vector<double> boundaries_deg = {90.0, 210.0, 330.0};
  int samples_per_drone = 10;

  int count() const { return static_cast<int>(boundaries_deg.size()); }
  // Sector index of an xy position (atan2 angle membership).
  int sector_of(double x, double y) const;
  void validate() const;
};

struct TrajectorySample {
  Pose g;
  BodyVelocity V;
};

// Fixed-step rollout of the target motion using the exact group exponential.
std::vector<TrajectorySample> rollout_target(const TargetMotion& motion,
                                             double duration, double dt);

// Per-drone datasets: trajectory samples assigned to sectors by (x, y),
// M_i points selected uniform-in-arc-length within each sector,
// y = V + eps with eps ~ N(0, sigma^2 I4). Deterministic given seed.
// Throws std::runtime_error naming the drone if a sector has no coverage.
std::vector<Dataset> generate_datasets(
    const std::vector<TrajectorySample>& trajectory,
    const ExpertRegions& regions, double noise_var, std::uint64_t seed);

}  // namespace dgp
