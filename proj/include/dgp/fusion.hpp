#pragma once

#include <vector>

#include "dgp/geometry.hpp"
#include "dgp/gp.hpp"

// Product-of-GP-experts fusion of neighborhood predictions and the fused
// error-bound diagnostics. Each member's prediction was evaluated at that
// member's own pose estimate; the fusion consumes heterogeneous query
// points by construction.

namespace dgp {

struct FusionMember {
  Prediction prediction;
  Vec4 query;  // flattened pose estimate the member evaluated its GP at
};

struct FusedPrediction {
  Vec4 mu_poe = Vec4::Zero();
  Vec4 var_poe = Vec4::Zero();
  // weights[j][k]: weight of member k in channel j
  std::array<std::vector<double>, kNumChannels> weights;
};

// Per channel: var_poe = (sum_k 1/var_k)^{-1}, w_k = var_poe/var_k,
// mu_poe = sum_k w_k mu_k. A single member is returned unchanged so a
// self-only neighborhood is bitwise identical to no fusion. Throws
// std::invalid_argument on an empty member list.
FusedPrediction fuse(const std::vector<FusionMember>& members);

struct BoundMember {
  BoundReport report;
  Vec4 query;  // flattened pose estimate of the member
};

// Surrogate fused radius: Delta_bar_j + L_mu_j * max_k ||q_k - q_self||
// per channel, with Delta_bar_j and L_mu_j the maxima over the members.
Vec4 fused_error_radius(const std::vector<BoundMember>& members,
                        const Vec4& self_query);

// Euclidean norms of the per-channel vectors: (L_mu, Delta_bar) scalars.
std::pair<double, double> aggregate_norms(const Vec4& l_mu_per_channel,
                                          const Vec4& delta_bar_per_channel);

}  // namespace dgp
