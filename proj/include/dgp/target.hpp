#pragma once

#include <string>

#include "dgp/geometry.hpp"

// Target motion models: Duffing-style velocity field, square waypoint
// track, and constant velocity.

namespace dgp {

struct DuffingParams {
  double delta = 0.1;
  double gamma = 0.39;
  double omega = 0.4;
  double alpha = -1.0;
  double beta = 1.0;
};

// V = 0.5 * Ad_{R^T(theta)} * [y, z, v_z, 2*omega] with
// v_z = 0.2*(-delta*z - alpha*y - 3*beta*x^2*y - gamma*omega*sin(theta)).
BodyVelocity duffing_velocity(const Pose& g_w0, const DuffingParams& p);

struct SquareTrackParams {
  double side = 1.0;       // [m]
  double speed = 0.1;      // [m/s]
  double track_gain = 0.05;
  double z = 0.0;          // constant height of the track
};

// Desired pose and world-frame feedforward on the square at time t; one
// full rotation per lap.
struct SquareReference {
  Pose g_d;
  Vec3 v_world;
  double omega_d;
};
SquareReference square_reference(double t, const SquareTrackParams& p);

// V = Ad_{R^T(theta_w0)} * ([v_world; omega_d] - track_gain * vec(g_w0 g_d^{-1}))
BodyVelocity square_track_velocity(const Pose& g_w0, double t,
                                   const SquareTrackParams& p);

enum class TargetKind { kDuffing, kSquareTrack, kConstant };

struct TargetMotion {
  TargetKind kind = TargetKind::kDuffing;
  DuffingParams duffing;
  SquareTrackParams square;
  BodyVelocity constant;  // used by kConstant
  Pose initial = Pose(Vec3(-0.3, -1.0, 0.0), 0.0);

  BodyVelocity velocity(const Pose& g_w0, double t) const;
};

TargetKind target_kind_from_string(const std::string& s);

}  // namespace dgp
