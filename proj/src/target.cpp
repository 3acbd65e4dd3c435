#include "dgp/target.hpp"

#include <cmath>
#include <stdexcept>

namespace dgp {

BodyVelocity duffing_velocity(const Pose& g_w0, const DuffingParams& p) {
  const double x = g_w0.p().x();
  const double y = g_w0.p().y();
  const double z = g_w0.p().z();
  const double th = g_w0.theta();
  const double v_z = 0.2 * (-p.delta * z - p.alpha * y -
                            3.0 * p.beta * x * x * y -
                            p.gamma * p.omega * std::sin(th));
  const Vec4 raw(y, z, v_z, 2.0 * p.omega);
  return BodyVelocity::from_vec4(0.5 * (adjoint(-th) * raw));
}

SquareReference square_reference(double t, const SquareTrackParams& p) {
  const double perimeter = 4.0 * p.side;
  const double lap_time = perimeter / p.speed;
  double s = std::fmod(t * p.speed, perimeter);
  if (s < 0.0) s += perimeter;

  // corners of the square, counter-clockwise, starting at (side/2, -side/2)
  const double h = 0.5 * p.side;
  const Eigen::Vector2d corners[4] = {{h, -h}, {h, h}, {-h, h}, {-h, -h}};
  const int edge = static_cast<int>(s / p.side);
  const double along = s - edge * p.side;
  const Eigen::Vector2d a = corners[edge % 4];
  const Eigen::Vector2d b = corners[(edge + 1) % 4];
  const Eigen::Vector2d dir = (b - a).normalized();
  const Eigen::Vector2d pos = a + along * dir;

  SquareReference ref;
  const double theta_d = wrap_angle(2.0 * M_PI * std::fmod(t, lap_time) / lap_time);
  ref.g_d = Pose(Vec3(pos.x(), pos.y(), p.z), theta_d);
  ref.v_world = Vec3(p.speed * dir.x(), p.speed * dir.y(), 0.0);
  ref.omega_d = 2.0 * M_PI / lap_time;
  return ref;
}

BodyVelocity square_track_velocity(const Pose& g_w0, double t,
                                   const SquareTrackParams& p) {
  const SquareReference ref = square_reference(t, p);
  Vec4 feedforward;
  feedforward << ref.v_world, ref.omega_d;
  const Vec4 correction =
      p.track_gain * vec_of(compose(g_w0, inverse(ref.g_d)));
  return BodyVelocity::from_vec4(adjoint(-g_w0.theta()) *
                                 (feedforward - correction));
}

BodyVelocity TargetMotion::velocity(const Pose& g_w0, double t) const {
  switch (kind) {
    case TargetKind::kDuffing:
      return duffing_velocity(g_w0, duffing);
    case TargetKind::kSquareTrack:
      return square_track_velocity(g_w0, t, square);
    case TargetKind::kConstant:
      return constant;
  }
  throw std::logic_error("unreachable");
}

TargetKind target_kind_from_string(const std::string& s) {
  if (s == "duffing") return TargetKind::kDuffing;
  if (s == "square_track") return TargetKind::kSquareTrack;
  if (s == "constant") return TargetKind::kConstant;
  throw std::invalid_argument("unknown target kind: " + s);
}

}  // namespace dgp
