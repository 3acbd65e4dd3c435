#pragma once

#include <optional>
#include <vector>

#include "dgp/geometry.hpp"

// Passivity-based pursuit/observer control law with its structural
// matrices, the consensus coupling term, storage functions, and the
// per-drone error-state dynamics.

namespace dgp {

struct Gains {
  Vec4 k_c = Vec4::Constant(100.0);
  Vec4 k_e = Vec4::Constant(100.0);
  double k_s = 70.0;

  void validate() const;  // all strictly positive

  static Gains sim_preset();         // 100 / 100 / 70
  static Gains experiment_preset();  // (13,13,13,7) / 8 / 1
};

struct ErrorState {
  Pose g_ci;  // control error
  Pose g_ei;  // estimation error

  Vec4 e_ci() const { return vec_of(g_ci); }
  Vec4 e_ei() const { return vec_of(g_ei); }
  Eigen::Matrix<double, 8, 1> e() const {
    Eigen::Matrix<double, 8, 1> out;
    out << e_ci(), e_ei();
    return out;
  }
};

struct ControlInput {
  Vec4 u_ci = Vec4::Zero();
  Vec4 u_ei = Vec4::Zero();
};

Eigen::Matrix<double, 8, 8> n_matrix(double theta_ci);
Eigen::Matrix<double, 8, 4> b_matrix(double theta_ci);
Eigen::Matrix<double, 8, 4> a_matrix(double theta_ei, double theta_ci);
Eigen::Matrix<double, 8, 8> k_matrix(const Gains& g, int v_i);

// sum_j k_s * vec(gbar_wi^{-1} gbar_wj)
Vec4 consensus_term(const Pose& self_est, const std::vector<Pose>& neighbor_ests,
                    double k_s);

// u = -K N e - B * consensus - A * mu. Pass std::nullopt for mu in no-GP
// mode (the A term is omitted).
ControlInput control_law(const ErrorState& e, const Gains& g, int v_i,
                         const Vec4& consensus,
                         const std::optional<Vec4>& mu);

// Right-hand sides of the error dynamics,
//   d/dt g_ei = hat(u_ei) g_ei + g_ei hat(V),
//   d/dt g_ci = hat(u_ci) g_ci - g_ci hat(u_ei).
struct ErrorDerivatives {
  Mat4 dg_ci;
  Mat4 dg_ei;
};
ErrorDerivatives error_dynamics(const ErrorState& e, const ControlInput& u,
                                const BodyVelocity& V_target);

// One RK4 step on the matrix-valued error dynamics with a frozen control
// input, followed by projection back onto the group.
ErrorState rk4_step(const ErrorState& e, const ControlInput& u,
                    const BodyVelocity& V_target, double dt);

// S_i = 1/2||p_ei||^2 + 1/2 phi(theta_ei) + 1/2||p_ci||^2 + 1/2 phi(theta_ci)
double storage(const ErrorState& e);
double total_storage(const std::vector<ErrorState>& states);

// Poses recovered from the target pose, desired relative pose and the error
// state: gbar_i0 = g_di g_ci; g_i0 = gbar_i0 g_ei; g_wi = g_w0 g_i0^{-1};
// gbar_wi = g_wi gbar_i0.
struct ReconstructedPoses {
  Pose g_wi;
  Pose g_bar_i0;
  Pose g_bar_wi;
  Pose g_i0;
};
ReconstructedPoses reconstruct_poses(const Pose& g_w0, const Pose& g_di,
                                     const ErrorState& e);

}  // namespace dgp
