#pragma once

#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "dgp/geometry.hpp"

// Pinhole projection of target feature points, visibility-set membership
// and the per-drone estimation-error channel.

namespace dgp {

struct CameraModel {
  double lambda = 1.0;          // focal length
  double u_max = 1.0;           // image half extent, u
  double v_max = 1.0;           // image half extent, v
  double z_min = 0.05;          // minimum admissible depth [m]
  double pixel_noise_std = 0.0; // optional Gaussian noise on f_i
};

struct FeatureSet {
  std::vector<Vec3> points;  // positions in the target frame, m >= 4

  void validate() const;  // throws std::invalid_argument
  static FeatureSet default_square();  // 4 points at (+-0.1, +-0.1, 0)
};

struct VisibilityFailure {
  int point_index;  // first offending feature point (0-based)
  std::string reason;
};

struct DepthError {
  double z;
};

// Projects a camera-frame point, (lambda/z)*[x, y]. Returns DepthError when
// z < z_min.
std::variant<Eigen::Vector2d, DepthError> project(const Vec3& p_cam,
                                                  const CameraModel& cam);

// Stacked projections of all feature points of the target at relative pose
// g_i0. A failure (depth or out of image bounds) is a modeled outcome, not
// an exception: drone i's v_i flag is 1 exactly when this returns a vector.
std::variant<Eigen::VectorXd, VisibilityFailure> feature_vector(
    const Pose& g_i0, const FeatureSet& fs, const CameraModel& cam);

// e_ei = vec(gbar_i0^{-1} g_i0), the exact-pose estimation-error channel.
Vec4 estimation_error(const Pose& g_bar_i0, const Pose& g_i0);

// Same channel with optional pixel noise: the noise on f_i is converted to
// a first-order pose perturbation by least squares on the feature residual
// (finite-difference image Jacobian in the error coordinates). With
// cam.pixel_noise_std == 0 this equals estimation_error().
Vec4 estimation_error_noisy(const Pose& g_bar_i0, const Pose& g_i0,
                            const FeatureSet& fs, const CameraModel& cam,
                            std::mt19937_64& rng);

// Componentwise f - f_bar; diagnostics only. Throws on length mismatch.
Eigen::VectorXd feature_residual(const Eigen::VectorXd& f,
                                 const Eigen::VectorXd& f_bar);

}  // namespace dgp
