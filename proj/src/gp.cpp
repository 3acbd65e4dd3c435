#include "dgp/gp.hpp"

#include <cmath>
#include <stdexcept>

namespace dgp {

void Dataset::validate() const {
  if (X.rows() < 1 || X.rows() != Y.rows() || X.cols() != 4 || Y.cols() != 4) {
    throw std::invalid_argument("dataset: need M >= 1 rows of 4-d X and Y");
  }
  for (int j = 0; j < kNumChannels; ++j) {
    if (!(sigma_n[j] > 0.0)) {
      throw std::invalid_argument("dataset: sigma_n must be > 0");
    }
  }
}

double kernel(const Vec4& x, const Vec4& y, const ChannelHyperParams& h) {
  const Vec4 z = (x - y).cwiseQuotient(h.lengthscales);
  return h.sigma_f * h.sigma_f * std::exp(-0.5 * z.squaredNorm());
}

namespace {

Eigen::MatrixXd gram(const Eigen::MatrixXd& X, const ChannelHyperParams& h) {
  const int M = static_cast<int>(X.rows());
  Eigen::MatrixXd K(M, M);
  for (int a = 0; a < M; ++a) {
    K(a, a) = h.sigma_f * h.sigma_f;
    for (int b = a + 1; b < M; ++b) {
      K(a, b) = K(b, a) = kernel(X.row(a), X.row(b), h);
    }
  }
  return K;
}

// Factorizes K + sigma^2 I, escalating jitter before giving up.
Eigen::LLT<Eigen::MatrixXd> factorize(const Eigen::MatrixXd& K, double sigma2,
                                      double sf2) {
  const int M = static_cast<int>(K.rows());
  Eigen::MatrixXd A =
      K + sigma2 * Eigen::MatrixXd::Identity(M, M);
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  double jitter = 1e-10 * sf2;
  while (llt.info() != Eigen::Success && jitter <= 1e-4 * sf2) {
    llt.compute(A + jitter * Eigen::MatrixXd::Identity(M, M));
    jitter *= 10.0;
  }
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error(
        "gp: Cholesky factorization failed after jitter escalation "
        "(duplicate inputs with near-zero noise?)");
  }
  return llt;
}

}  // namespace

GpExpert GpExpert::fit(const Dataset& d, const HyperParams& h) {
  d.validate();
  GpExpert e;
  e.data_ = d;
  e.hp_ = h;
  for (int j = 0; j < kNumChannels; ++j) {
    const Eigen::MatrixXd K = gram(d.X, h[j]);
    e.llt_[j] = factorize(K, d.sigma_n[j] * d.sigma_n[j],
                          h[j].sigma_f * h[j].sigma_f);
    e.alpha_[j] = e.llt_[j].solve(d.Y.col(j));
  }
  return e;
}

Prediction GpExpert::predict(const Vec4& x_star) const {
  const int M = data_.size();
  Prediction out;
  Eigen::VectorXd ks(M);
  for (int j = 0; j < kNumChannels; ++j) {
    for (int l = 0; l < M; ++l) {
      ks[l] = kernel(x_star, data_.X.row(l), hp_[j]);
    }
    out.mu[j] = ks.dot(alpha_[j]);
    const Eigen::VectorXd w =
        llt_[j].matrixL().solve(ks);
    const double prior = hp_[j].sigma_f * hp_[j].sigma_f;
    double var = prior - w.squaredNorm();
    out.var[j] = std::clamp(var, kVarFloor, prior);
  }
  return out;
}

double log_marginal_likelihood_channel(const Dataset& d,
                                       const ChannelHyperParams& h,
                                       int channel) {
  const int M = d.size();
  const Eigen::MatrixXd K = gram(d.X, h);
  const auto llt =
      factorize(K, d.sigma_n[channel] * d.sigma_n[channel],
                h.sigma_f * h.sigma_f);
  const Eigen::VectorXd y = d.Y.col(channel);
  const Eigen::VectorXd a = llt.solve(y);
  double logdet = 0.0;
  for (int i = 0; i < M; ++i) logdet += std::log(llt.matrixL()(i, i));
  return -0.5 * y.dot(a) - logdet - 0.5 * M * std::log(2.0 * M_PI);
}

double log_marginal_likelihood(const Dataset& d, const HyperParams& h) {
  double total = 0.0;
  for (int j = 0; j < kNumChannels; ++j) {
    total += log_marginal_likelihood_channel(d, h[j], j);
  }
  return total;
}

namespace {

constexpr double kLogLo = -6.907755278982137;  // log(1e-3)
constexpr double kLogHi = 6.907755278982137;   // log(1e3)

ChannelHyperParams from_log(const Eigen::Matrix<double, 5, 1>& lp) {
  ChannelHyperParams h;
  h.sigma_f = std::exp(lp[0]);
  for (int i = 0; i < 4; ++i) h.lengthscales[i] = std::exp(lp[1 + i]);
  return h;
}

}  // namespace

HyperParams optimize_hyperparams(const Dataset& d, const HyperParams& init,
                                 int budget) {
  d.validate();
  HyperParams out = init;
  for (int j = 0; j < kNumChannels; ++j) {
    Eigen::Matrix<double, 5, 1> lp;
    lp[0] = std::log(init[j].sigma_f);
    for (int i = 0; i < 4; ++i) lp[1 + i] = std::log(init[j].lengthscales[i]);

    auto eval = [&](const Eigen::Matrix<double, 5, 1>& p) {
      try {
        return log_marginal_likelihood_channel(d, from_log(p), j);
      } catch (const std::runtime_error&) {
        return -std::numeric_limits<double>::infinity();
      }
    };

    double best = eval(lp);
    int evals = 1;
    double step = 0.5;
    while (evals < budget && step > 1e-3) {
      bool improved = false;
      for (int i = 0; i < 5 && evals < budget; ++i) {
        for (int sgn : {+1, -1}) {
          Eigen::Matrix<double, 5, 1> trial = lp;
          trial[i] = std::clamp(trial[i] + sgn * step, kLogLo, kLogHi);
          const double val = eval(trial);
          ++evals;
          if (val > best) {
            best = val;
            lp = trial;
            improved = true;
            break;
          }
          if (evals >= budget) break;
        }
      }
      if (!improved) step *= 0.5;
    }
    out[j] = from_log(lp);
  }
  return out;
}

Vec4 information_gain(const GpExpert& e) {
  const Dataset& d = e.dataset();
  const int M = d.size();
  Vec4 g;
  for (int j = 0; j < kNumChannels; ++j) {
    const Eigen::MatrixXd K = gram(d.X, e.hyperparams()[j]);
    const Eigen::MatrixXd A =
        Eigen::MatrixXd::Identity(M, M) + K / (d.sigma_n[j] * d.sigma_n[j]);
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    double logdet = 0.0;
    for (int i = 0; i < M; ++i) logdet += std::log(llt.matrixL()(i, i));
    g[j] = logdet;  // = 1/2 log det(A)
  }
  return g;
}

Vec4 beta_coefficient(const GpExpert& e, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("beta_coefficient: delta must be in (0, 1)");
  }
  const double M = e.dataset().size();
  const Vec4 g = information_gain(e);
  return Vec4::Constant(2.0 * std::log(M * M_PI * M_PI / (6.0 * delta))) +
         2.0 * g;
}

Vec4 error_radius(const GpExpert& e, double delta, const Vec4& x_star) {
  const Vec4 beta = beta_coefficient(e, delta);
  const Prediction p = e.predict(x_star);
  return beta.cwiseSqrt().cwiseProduct(p.var.cwiseSqrt());
}

std::vector<Vec4> RegionGrid::points() const {
  std::vector<Vec4> pts;
  const int n = points_per_dim;
  pts.reserve(static_cast<size_t>(n) * n * n * n);
  auto coord = [&](int d, int k) {
    return n == 1 ? 0.5 * (lo[d] + hi[d])
                  : lo[d] + (hi[d] - lo[d]) * k / (n - 1);
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int t = 0; t < n; ++t)
          pts.emplace_back(coord(0, a), coord(1, b), coord(2, c), coord(3, t));
  return pts;
}

Vec4 delta_bar(const GpExpert& e, double delta, const RegionGrid& grid) {
  const Vec4 beta = beta_coefficient(e, delta);
  Vec4 sup = Vec4::Zero();
  for (const Vec4& x : grid.points()) {
    const Prediction p = e.predict(x);
    sup = sup.cwiseMax(beta.cwiseSqrt().cwiseProduct(p.var.cwiseSqrt()));
  }
  return sup;
}

LipschitzEstimate lipschitz_of_mean(const GpExpert& e, const RegionGrid& grid) {
  LipschitzEstimate out;
  const Dataset& d = e.dataset();
  const int M = d.size();
  for (int j = 0; j < kNumChannels; ++j) {
    const ChannelHyperParams& h = e.hyperparams()[j];
    const double sf2 = h.sigma_f * h.sigma_f;
    // one SE-ARD section has |d k / d x_d| <= sigma_f^2 e^{-1/2} / l_d
    const double max_slope =
        sf2 * std::exp(-0.5) / h.lengthscales.minCoeff();
    out.bound[j] = e.alpha(j).lpNorm<1>() * max_slope;

    double emp = 0.0;
    for (const Vec4& x : grid.points()) {
      Vec4 grad = Vec4::Zero();
      for (int l = 0; l < M; ++l) {
        const Vec4 xl = d.X.row(l);
        const double k = kernel(x, xl, h);
        grad += e.alpha(j)[l] * k *
                (xl - x).cwiseQuotient(h.lengthscales.cwiseAbs2());
      }
      emp = std::max(emp, grad.norm());
    }
    out.empirical[j] = emp;
  }
  return out;
}

BoundReport bound_report(const GpExpert& e, double delta,
                         const RegionGrid& grid) {
  BoundReport r;
  r.gamma_sq = information_gain(e);
  r.beta = beta_coefficient(e, delta);
  r.delta_bar = delta_bar(e, delta, grid);
  const LipschitzEstimate lip = lipschitz_of_mean(e, grid);
  r.l_mu = lip.bound;
  r.l_mu_empirical = lip.empirical;
  return r;
}

}  // namespace dgp
