#include "dgp/fusion.hpp"

#include <stdexcept>

namespace dgp {

FusedPrediction fuse(const std::vector<FusionMember>& members) {
  if (members.empty()) {
    throw std::invalid_argument("fuse: empty member list");
  }
  FusedPrediction out;
  if (members.size() == 1) {
    out.mu_poe = members[0].prediction.mu;
    out.var_poe = members[0].prediction.var;
    for (int j = 0; j < kNumChannels; ++j) out.weights[j] = {1.0};
    return out;
  }
  for (int j = 0; j < kNumChannels; ++j) {
    double precision = 0.0;
    for (const FusionMember& m : members) {
      precision += 1.0 / m.prediction.var[j];
    }
    const double var_poe = 1.0 / precision;
    double mu = 0.0;
    out.weights[j].reserve(members.size());
    for (const FusionMember& m : members) {
      const double w = var_poe / m.prediction.var[j];
      out.weights[j].push_back(w);
      mu += w * m.prediction.mu[j];
    }
    out.var_poe[j] = var_poe;
    out.mu_poe[j] = mu;
  }
  return out;
}

Vec4 fused_error_radius(const std::vector<BoundMember>& members,
                        const Vec4& self_query) {
  if (members.empty()) {
    throw std::invalid_argument("fused_error_radius: empty member list");
  }
  Vec4 delta_bar = Vec4::Zero();
  Vec4 l_mu = Vec4::Zero();
  double dispersion = 0.0;
  for (const BoundMember& m : members) {
    delta_bar = delta_bar.cwiseMax(m.report.delta_bar);
    l_mu = l_mu.cwiseMax(m.report.l_mu);
    dispersion = std::max(dispersion, (m.query - self_query).norm());
  }
  return delta_bar + l_mu * dispersion;
}

std::pair<double, double> aggregate_norms(const Vec4& l_mu_per_channel,
                                          const Vec4& delta_bar_per_channel) {
  return {l_mu_per_channel.norm(), delta_bar_per_channel.norm()};
}

}  // namespace dgp
