#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <array>
#include <vector>

#include "dgp/geometry.hpp"

// Per-drone exact GP regression over the drone's private dataset: SE-ARD
// kernel, Cholesky training, per-channel prediction, marginal-likelihood
// hyperparameter fitting, and bound diagnostics.

namespace dgp {

inline constexpr int kNumChannels = 4;

struct Dataset {
  Eigen::MatrixXd X;  // M x 4 inputs, flattened target poses [p^T, theta]
  Eigen::MatrixXd Y;  // M x 4 noisy body-velocity observations
  Vec4 sigma_n = Vec4::Constant(0.1);  // per-channel observation noise std

  int size() const { return static_cast<int>(X.rows()); }
  void validate() const;  // throws std::invalid_argument
};

struct ChannelHyperParams {
  double sigma_f = 1.0;
  Vec4 lengthscales = Vec4::Ones();
};

using HyperParams = std::array<ChannelHyperParams, kNumChannels>;

struct Prediction {
  Vec4 mu = Vec4::Zero();
  Vec4 var = Vec4::Zero();  // diagonal covariance, clamped to >= var_floor
};

struct BoundReport {
  Vec4 gamma_sq = Vec4::Zero();   // information gain surrogate per channel
  Vec4 beta = Vec4::Zero();       // confidence coefficient per channel
  Vec4 delta_bar = Vec4::Zero();  // error radius sup over the region grid
  Vec4 l_mu = Vec4::Zero();       // Lipschitz bound of the posterior mean
  Vec4 l_mu_empirical = Vec4::Zero();  // grid-sampled gradient-norm estimate
};

// SE-ARD kernel, sigma_f^2 * exp(-sum_d (x_d - y_d)^2 / (2 l_d^2)).
double kernel(const Vec4& x, const Vec4& y, const ChannelHyperParams& h);

inline constexpr double kVarFloor = 1e-12;

class GpExpert {
 public:
  // Builds the per-channel Gram matrices and factorizes K + sigma_n^2 I.
  // Jitter escalates from 1e-10*sigma_f^2 to 1e-4*sigma_f^2 before a
  // factorization failure is thrown (std::runtime_error).
  static GpExpert fit(const Dataset& d, const HyperParams& h);

  Prediction predict(const Vec4& x_star) const;

  const Dataset& dataset() const { return data_; }
  const HyperParams& hyperparams() const { return hp_; }
  // Weight vector (K + sigma_n^2 I)^{-1} Y_j of channel j.
  const Eigen::VectorXd& alpha(int channel) const { return alpha_[channel]; }
  const Eigen::LLT<Eigen::MatrixXd>& llt(int channel) const {
    return llt_[channel];
  }

 private:
  GpExpert() = default;
  Dataset data_;
  HyperParams hp_;
  std::array<Eigen::LLT<Eigen::MatrixXd>, kNumChannels> llt_;
  std::array<Eigen::VectorXd, kNumChannels> alpha_;
};

// Standard GP evidence summed over the four output channels.
double log_marginal_likelihood(const Dataset& d, const HyperParams& h);
// Per-channel evidence (used by the per-channel optimizer).
double log_marginal_likelihood_channel(const Dataset& d,
                                       const ChannelHyperParams& h,
                                       int channel);

// Deterministic log-space coordinate descent with multiplicative step
// halving; never returns hyperparameters with a lower evidence than init.
// Bounds: lengthscales and sigma_f in [1e-3, 1e3]. `budget` counts evidence
// evaluations per channel.
HyperParams optimize_hyperparams(const Dataset& d, const HyperParams& init,
                                 int budget = 500);

// 1/2 log det(I + sigma_n^-2 K) per channel.
Vec4 information_gain(const GpExpert& e);

// Confidence coefficient beta(delta) = 2 log(M pi^2 / (6 delta)) + 2 gamma^2.
Vec4 beta_coefficient(const GpExpert& e, double delta);

// sqrt(beta) * sqrt(var(x_star)) per channel.
Vec4 error_radius(const GpExpert& e, double delta, const Vec4& x_star);

// Axis-aligned evaluation grid over the bounded target region.
struct RegionGrid {
  Vec4 lo = Vec4(-2.5, -1.5, -0.5, -M_PI);
  Vec4 hi = Vec4(2.5, 1.5, 0.5, M_PI);
  int points_per_dim = 5;

  std::vector<Vec4> points() const;
};

// Sup of error_radius over the grid, per channel.
Vec4 delta_bar(const GpExpert& e, double delta, const RegionGrid& grid);

// Analytic Lipschitz bound of the posterior mean,
// ||alpha||_1 * max_d sigma_f^2 e^{-1/2} / l_d, plus a grid-sampled
// empirical gradient-norm estimate for diagnostics.
struct LipschitzEstimate {
  Vec4 bound;
  Vec4 empirical;
};
LipschitzEstimate lipschitz_of_mean(const GpExpert& e, const RegionGrid& grid);

// Full diagnostic bundle for one expert.
BoundReport bound_report(const GpExpert& e, double delta,
                         const RegionGrid& grid);

}  // namespace dgp
