#include "dgp/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace dgp {

double wrap_angle(double theta) {
  double t = std::fmod(theta + M_PI, 2.0 * M_PI);
  if (t <= 0.0) t += 2.0 * M_PI;
  return t - M_PI;
}

Mat3 rot_z(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Mat3 R;
  R << c, -s, 0.0,
       s,  c, 0.0,
       0.0, 0.0, 1.0;
  return R;
}

Mat4 Pose::matrix() const {
  Mat4 g = Mat4::Identity();
  g.topLeftCorner<3, 3>() = rotation();
  g.topRightCorner<3, 1>() = p_;
  return g;
}

Pose Pose::project(const Mat4& g) {
  const double theta = std::atan2(g(1, 0), g(0, 0));
  return Pose(g.topRightCorner<3, 1>(), theta);
}

Pose compose(const Pose& a, const Pose& b) {
  return Pose(a.p() + a.rotation() * b.p(), a.theta() + b.theta());
}

Pose inverse(const Pose& g) {
  return Pose(-(rot_z(-g.theta()) * g.p()), -g.theta());
}

Mat4 hat(const BodyVelocity& V) {
  Mat4 M = Mat4::Zero();
  M(0, 1) = -V.omega;
  M(1, 0) = V.omega;
  M.topRightCorner<3, 1>() = V.v;
  return M;
}

BodyVelocity vee(const Mat4& M, double tol) {
  const bool pattern_ok =
      std::abs(M(0, 0)) <= tol && std::abs(M(1, 1)) <= tol &&
      std::abs(M(2, 2)) <= tol && std::abs(M(0, 1) + M(1, 0)) <= tol &&
      std::abs(M(0, 2)) <= tol && std::abs(M(1, 2)) <= tol &&
      std::abs(M(2, 0)) <= tol && std::abs(M(2, 1)) <= tol &&
      M.row(3).cwiseAbs().maxCoeff() <= tol;
  if (!pattern_ok) {
    throw std::invalid_argument("vee: matrix is not a z-axis twist");
  }
  return BodyVelocity{M.topRightCorner<3, 1>(), M(1, 0)};
}

Pose integrate(const Pose& g, const BodyVelocity& V, double dt) {
  const double w = V.omega;
  double jxx, jxy;  // V-matrix of the planar rotation, integral of R(ws)
  if (std::abs(w) < 1e-12) {
    jxx = dt;
    jxy = 0.5 * w * dt * dt;  // first-order term, exact limit as w -> 0
  } else {
    jxx = std::sin(w * dt) / w;
    jxy = (1.0 - std::cos(w * dt)) / w;
  }
  Vec3 dp_body(jxx * V.v.x() - jxy * V.v.y(),
               jxy * V.v.x() + jxx * V.v.y(),
               V.v.z() * dt);
  return Pose(g.p() + g.rotation() * dp_body, g.theta() + w * dt);
}

Vec4 vec_of(const Pose& g) {
  return Vec4(g.p().x(), g.p().y(), g.p().z(), std::sin(g.theta()));
}

Mat4 adjoint(double theta) {
  Mat4 A = Mat4::Identity();
  A.topLeftCorner<3, 3>() = rot_z(theta);
  return A;
}

double phi(double theta) { return 2.0 * (1.0 - std::cos(theta)); }

}  // namespace dgp
