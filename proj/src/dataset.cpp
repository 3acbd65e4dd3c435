#include "dgp/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace dgp {

void ExpertRegions::validate() const {
  if (boundaries_deg.empty()) {
    throw std::invalid_argument("regions: need at least one sector");
  }
  if (!std::is_sorted(boundaries_deg.begin(), boundaries_deg.end())) {
    throw std::invalid_argument("regions: boundaries must be ascending");
  }
  for (double b : boundaries_deg) {
    if (b < 0.0 || b >= 360.0) {
      throw std::invalid_argument("regions: boundaries must be in [0, 360)");
    }
  }
  if (samples_per_drone < 1) {
    throw std::invalid_argument("regions: samples_per_drone must be >= 1");
  }
}

int ExpertRegions::sector_of(double x, double y) const {
  double a = std::atan2(y, x) * 180.0 / M_PI;
  if (a < 0.0) a += 360.0;
  const int n = count();
  for (int k = 0; k < n - 1; ++k) {
    if (a >= boundaries_deg[k] && a < boundaries_deg[k + 1]) return k;
  }
  return n - 1;  // wrap-around sector [last boundary, first boundary)
}

std::vector<TrajectorySample> rollout_target(const TargetMotion& motion,
                                             double duration, double dt) {
  std::vector<TrajectorySample> traj;
  const int n = static_cast<int>(std::llround(duration / dt));
  traj.reserve(n + 1);
  Pose g = motion.initial;
  for (int k = 0; k <= n; ++k) {
    const BodyVelocity V = motion.velocity(g, k * dt);
    traj.push_back({g, V});
    g = integrate(g, V, dt);
  }
  return traj;
}

std::vector<Dataset> generate_datasets(
    const std::vector<TrajectorySample>& trajectory,
    const ExpertRegions& regions, double noise_var, std::uint64_t seed) {
  regions.validate();
  const int n = regions.count();
  std::vector<std::vector<const TrajectorySample*>> per_sector(n);
  for (const TrajectorySample& s : trajectory) {
    per_sector[regions.sector_of(s.g.p().x(), s.g.p().y())].push_back(&s);
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(noise_var));
  const int M = regions.samples_per_drone;
  std::vector<Dataset> out;
  out.reserve(n);
  for (int drone = 0; drone < n; ++drone) {
    const auto& samples = per_sector[drone];
    if (samples.empty()) {
      throw std::runtime_error("dataset generation: expert region of drone " +
                               std::to_string(drone + 1) +
                               " has no trajectory coverage");
    }
    // cumulative arc length along the sector's subsequence
    std::vector<double> arc(samples.size(), 0.0);
    for (size_t k = 1; k < samples.size(); ++k) {
      arc[k] = arc[k - 1] + (samples[k]->g.p() - samples[k - 1]->g.p()).norm();
    }
    Dataset d;
    if (noise_var > 0.0) d.sigma_n = Vec4::Constant(std::sqrt(noise_var));
    d.X.resize(M, 4);
    d.Y.resize(M, 4);
    for (int m = 0; m < M; ++m) {
      const double target =
          M == 1 ? 0.0 : arc.back() * m / static_cast<double>(M - 1);
      const auto it = std::lower_bound(arc.begin(), arc.end(), target);
      const size_t idx =
          std::min(static_cast<size_t>(it - arc.begin()), samples.size() - 1);
      d.X.row(m) = samples[idx]->g.flatten();
      Vec4 y = samples[idx]->V.as_vec4();
      if (noise_var > 0.0) {
        for (int c = 0; c < kNumChannels; ++c) y[c] += gauss(rng);
      }
      d.Y.row(m) = y;
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace dgp
