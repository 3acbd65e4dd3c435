#include "dgp/control.hpp"

#include <stdexcept>

namespace dgp {

void Gains::validate() const {
  if (!(k_c.minCoeff() > 0.0 && k_e.minCoeff() > 0.0 && k_s > 0.0)) {
    throw std::invalid_argument("gains: all entries must be > 0");
  }
}

Gains Gains::sim_preset() { return Gains{}; }

Gains Gains::experiment_preset() {
  Gains g;
  g.k_c = Vec4(13.0, 13.0, 13.0, 7.0);
  g.k_e = Vec4::Constant(8.0);
  g.k_s = 1.0;
  return g;
}

Eigen::Matrix<double, 8, 8> n_matrix(double theta_ci) {
  Eigen::Matrix<double, 8, 8> N = Eigen::Matrix<double, 8, 8>::Identity();
  N.block<4, 4>(4, 0) = -adjoint(theta_ci);
  return N;
}

Eigen::Matrix<double, 8, 4> b_matrix(double theta_ci) {
  Eigen::Matrix<double, 8, 4> B;
  B.topRows<4>() = adjoint(-theta_ci);
  B.bottomRows<4>() = Mat4::Identity();
  return B;
}

Eigen::Matrix<double, 8, 4> a_matrix(double theta_ei, double theta_ci) {
  Eigen::Matrix<double, 8, 4> A;
  A.topRows<4>() = adjoint(-theta_ei) * adjoint(-theta_ci);
  A.bottomRows<4>() = adjoint(-theta_ei);
  return A;
}

Eigen::Matrix<double, 8, 8> k_matrix(const Gains& g, int v_i) {
  Eigen::Matrix<double, 8, 1> diag;
  diag << g.k_c, (v_i ? 1.0 : 0.0) * g.k_e;
  return diag.asDiagonal();
}

Vec4 consensus_term(const Pose& self_est, const std::vector<Pose>& neighbor_ests,
                    double k_s) {
  Vec4 sum = Vec4::Zero();
  const Pose self_inv = inverse(self_est);
  for (const Pose& gj : neighbor_ests) {
    sum += k_s * vec_of(compose(self_inv, gj));
  }
  return sum;
}

ControlInput control_law(const ErrorState& e, const Gains& g, int v_i,
                         const Vec4& consensus,
                         const std::optional<Vec4>& mu) {
  const double tc = e.g_ci.theta();
  const double te = e.g_ei.theta();
  Eigen::Matrix<double, 8, 1> u =
      -k_matrix(g, v_i) * n_matrix(tc) * e.e() - b_matrix(tc) * consensus;
  if (mu) {
    u -= a_matrix(te, tc) * (*mu);
  }
  return ControlInput{u.head<4>(), u.tail<4>()};
}

ErrorDerivatives error_dynamics(const ErrorState& e, const ControlInput& u,
                                const BodyVelocity& V_target) {
  const Mat4 gci = e.g_ci.matrix();
  const Mat4 gei = e.g_ei.matrix();
  const Mat4 uei = hat(BodyVelocity::from_vec4(u.u_ei));
  const Mat4 uci = hat(BodyVelocity::from_vec4(u.u_ci));
  const Mat4 Vt = hat(V_target);
  return ErrorDerivatives{uci * gci - gci * uei, uei * gei + gei * Vt};
}

namespace {

struct MatPair {
  Mat4 ci;
  Mat4 ei;
};

MatPair deriv(const Mat4& gci, const Mat4& gei, const Mat4& uci,
              const Mat4& uei, const Mat4& Vt) {
  return MatPair{uci * gci - gci * uei, uei * gei + gei * Vt};
}

}  // namespace

ErrorState rk4_step(const ErrorState& e, const ControlInput& u,
                    const BodyVelocity& V_target, double dt) {
  const Mat4 uci = hat(BodyVelocity::from_vec4(u.u_ci));
  const Mat4 uei = hat(BodyVelocity::from_vec4(u.u_ei));
  const Mat4 Vt = hat(V_target);
  const Mat4 gci = e.g_ci.matrix();
  const Mat4 gei = e.g_ei.matrix();

  const MatPair k1 = deriv(gci, gei, uci, uei, Vt);
  const MatPair k2 =
      deriv(gci + 0.5 * dt * k1.ci, gei + 0.5 * dt * k1.ei, uci, uei, Vt);
  const MatPair k3 =
      deriv(gci + 0.5 * dt * k2.ci, gei + 0.5 * dt * k2.ei, uci, uei, Vt);
  const MatPair k4 = deriv(gci + dt * k3.ci, gei + dt * k3.ei, uci, uei, Vt);

  const Mat4 gci_new =
      gci + dt / 6.0 * (k1.ci + 2.0 * k2.ci + 2.0 * k3.ci + k4.ci);
  const Mat4 gei_new =
      gei + dt / 6.0 * (k1.ei + 2.0 * k2.ei + 2.0 * k3.ei + k4.ei);
  return ErrorState{Pose::project(gci_new), Pose::project(gei_new)};
}

double storage(const ErrorState& e) {
  return 0.5 * e.g_ei.p().squaredNorm() + 0.5 * phi(e.g_ei.theta()) +
         0.5 * e.g_ci.p().squaredNorm() + 0.5 * phi(e.g_ci.theta());
}

double total_storage(const std::vector<ErrorState>& states) {
  double total = 0.0;
  for (const ErrorState& s : states) total += storage(s);
  return total;
}

ReconstructedPoses reconstruct_poses(const Pose& g_w0, const Pose& g_di,
                                     const ErrorState& e) {
  ReconstructedPoses out;
  out.g_bar_i0 = compose(g_di, e.g_ci);
  out.g_i0 = compose(out.g_bar_i0, e.g_ei);
  out.g_wi = compose(g_w0, inverse(out.g_i0));
  out.g_bar_wi = compose(out.g_wi, out.g_bar_i0);
  return out;
}

}  // namespace dgp
