#include "dgp/vision.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dgp {

void FeatureSet::validate() const {
  if (points.size() < 4) {
    throw std::invalid_argument("feature set: need m >= 4 points");
  }
}

FeatureSet FeatureSet::default_square() {
  return FeatureSet{{Vec3(0.1, 0.1, 0.0), Vec3(-0.1, 0.1, 0.0),
                     Vec3(-0.1, -0.1, 0.0), Vec3(0.1, -0.1, 0.0)}};
}

std::variant<Eigen::Vector2d, DepthError> project(const Vec3& p_cam,
                                                  const CameraModel& cam) {
  if (p_cam.z() < cam.z_min) return DepthError{p_cam.z()};
  return Eigen::Vector2d(cam.lambda * p_cam.x() / p_cam.z(),
                         cam.lambda * p_cam.y() / p_cam.z());
}

std::variant<Eigen::VectorXd, VisibilityFailure> feature_vector(
    const Pose& g_i0, const FeatureSet& fs, const CameraModel& cam) {
  Eigen::VectorXd f(2 * fs.points.size());
  const Mat3 R = g_i0.rotation();
  for (size_t j = 0; j < fs.points.size(); ++j) {
    const Vec3 p_cam = R * fs.points[j] + g_i0.p();
    auto pr = project(p_cam, cam);
    if (std::holds_alternative<DepthError>(pr)) {
      return VisibilityFailure{static_cast<int>(j), "depth below z_min"};
    }
    const Eigen::Vector2d& uv = std::get<Eigen::Vector2d>(pr);
    if (std::abs(uv.x()) > cam.u_max || std::abs(uv.y()) > cam.v_max) {
      return VisibilityFailure{static_cast<int>(j), "outside image bounds"};
    }
    f.segment<2>(2 * j) = uv;
  }
  return f;
}

Vec4 estimation_error(const Pose& g_bar_i0, const Pose& g_i0) {
  return vec_of(compose(inverse(g_bar_i0), g_i0));
}

namespace {

// Pose obtained by applying error coordinates (p_e, asin-free small theta)
// on top of g_bar: g = g_bar * (p_e, theta_e).
Pose apply_error(const Pose& g_bar, const Vec4& e) {
  return compose(g_bar, Pose(e.head<3>(), std::asin(std::clamp(e[3], -1.0, 1.0))));
}

}  // namespace

Vec4 estimation_error_noisy(const Pose& g_bar_i0, const Pose& g_i0,
                            const FeatureSet& fs, const CameraModel& cam,
                            std::mt19937_64& rng) {
  const Vec4 e = estimation_error(g_bar_i0, g_i0);
  if (cam.pixel_noise_std <= 0.0) return e;

  auto f0v = feature_vector(g_i0, fs, cam);
  if (!std::holds_alternative<Eigen::VectorXd>(f0v)) return e;
  const Eigen::VectorXd f0 = std::get<Eigen::VectorXd>(f0v);

  // finite-difference Jacobian of f w.r.t. the 4 error coordinates
  const double h = 1e-6;
  Eigen::MatrixXd J(f0.size(), 4);
  for (int k = 0; k < 4; ++k) {
    Vec4 de = Vec4::Zero();
    de[k] = h;
    const Pose g_pert = apply_error(g_bar_i0, e + de);
    auto fp = feature_vector(g_pert, fs, cam);
    if (!std::holds_alternative<Eigen::VectorXd>(fp)) return e;
    J.col(k) = (std::get<Eigen::VectorXd>(fp) - f0) / h;
  }
  std::normal_distribution<double> gauss(0.0, cam.pixel_noise_std);
  Eigen::VectorXd noise(f0.size());
  for (int k = 0; k < noise.size(); ++k) noise[k] = gauss(rng);
  const Vec4 de = J.colPivHouseholderQr().solve(noise);
  return e + de;
}

Eigen::VectorXd feature_residual(const Eigen::VectorXd& f,
                                 const Eigen::VectorXd& f_bar) {
  if (f.size() != f_bar.size()) {
    throw std::invalid_argument("feature_residual: length mismatch");
  }
  return f - f_bar;
}

}  // namespace dgp
