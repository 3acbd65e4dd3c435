#pragma once

#include <Eigen/Dense>

// The 4-DOF rigid motion group used throughout: rotation about the world
// z-axis plus translation in R^3. Poses are stored as (p, theta) so the
// rotation constraint is exact; the homogeneous 4x4 form is derived on
// demand.

namespace dgp {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

// Wraps an angle to (-pi, pi].
double wrap_angle(double theta);

// 3x3 rotation about the z-axis.
Mat3 rot_z(double theta);

struct BodyVelocity {
  Vec3 v = Vec3::Zero();   // linear body velocity [m/s]
  double omega = 0.0;      // angular rate about z [rad/s]

  Vec4 as_vec4() const { return Vec4(v.x(), v.y(), v.z(), omega); }
  static BodyVelocity from_vec4(const Vec4& u) {
    return BodyVelocity{u.head<3>(), u[3]};
  }
};

class Pose {
 public:
  Pose() = default;
  Pose(const Vec3& p, double theta) : p_(p), theta_(wrap_angle(theta)) {}

  static Pose identity() { return Pose(); }

  const Vec3& p() const { return p_; }
  double theta() const { return theta_; }
  Mat3 rotation() const { return rot_z(theta_); }

  // Homogeneous 4x4 matrix form.
  Mat4 matrix() const;

  // Nearest group element: theta from atan2 of the rotation block, p from
  // the last column. Used to re-project RK4 stage results.
  static Pose project(const Mat4& g);

  // Flattened coordinates [p^T, theta] used as GP input.
  Vec4 flatten() const { return Vec4(p_.x(), p_.y(), p_.z(), theta_); }

 private:
  Vec3 p_ = Vec3::Zero();
  double theta_ = 0.0;
};

Pose compose(const Pose& a, const Pose& b);
Pose inverse(const Pose& g);

// 4x4 twist matrix of a body velocity.
Mat4 hat(const BodyVelocity& V);

// Inverse of hat. Throws std::invalid_argument if the matrix does not have
// the z-skew/zero-row twist pattern within `tol`.
BodyVelocity vee(const Mat4& M, double tol = 1e-9);

// Exact flow of g' = g*hat(V) over dt (closed-form exponential: SE(2)
// V-matrix for the planar part, linear in z, angle advanced by omega*dt).
Pose integrate(const Pose& g, const BodyVelocity& V, double dt);

// Error coordinates [p^T, sin(theta)].
Vec4 vec_of(const Pose& g);

// Block-diagonal adjoint diag(R(theta), 1) acting on 4-vector twists.
Mat4 adjoint(double theta);

// Rotation-error potential (1/2)*||I3 - R(theta)||_F^2 = 2*(1 - cos(theta)).
double phi(double theta);

}  // namespace dgp
