#include <doctest.h>

#include <random>

#include "dgp/fusion.hpp"

using namespace dgp;

namespace {

FusionMember member(const Vec4& mu, const Vec4& var,
                    const Vec4& q = Vec4::Zero()) {
  return FusionMember{Prediction{mu, var}, q};
}

}  // namespace

TEST_CASE("single member passes through unchanged") {
  const FusionMember m =
      member(Vec4(0.1, -2.0, 3.5, 0.0), Vec4(0.3, 1.0, 2.0, 0.5));
  const FusedPrediction f = fuse({m});
  // bitwise pass-through
  CHECK((f.mu_poe - m.prediction.mu).cwiseAbs().maxCoeff() == 0.0);
  CHECK((f.var_poe - m.prediction.var).cwiseAbs().maxCoeff() == 0.0);
  for (int c = 0; c < kNumChannels; ++c) {
    REQUIRE(f.weights[c].size() == 1);
    CHECK(f.weights[c][0] == 1.0);
  }
}

TEST_CASE("equal-variance pair averages") {
  const FusedPrediction f = fuse({member(Vec4::Constant(1.0), Vec4::Ones()),
                                  member(Vec4::Constant(3.0), Vec4::Ones())});
  for (int c = 0; c < kNumChannels; ++c) {
    CHECK(f.mu_poe[c] == doctest::Approx(2.0));
    CHECK(f.var_poe[c] == doctest::Approx(0.5));
  }
}

TEST_CASE("confident member dominates") {
  const FusedPrediction f =
      fuse({member(Vec4::Zero(), Vec4::Constant(0.1)),
            member(Vec4::Constant(10.0), Vec4::Constant(10.0))});
  for (int c = 0; c < kNumChannels; ++c) {
    CHECK(f.var_poe[c] == doctest::Approx(1.0 / 10.1).epsilon(1e-12));
    CHECK(f.mu_poe[c] == doctest::Approx(0.09901).epsilon(1e-3));
  }
}

TEST_CASE("fusion invariants on random instances") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> um(-5.0, 5.0);
  std::uniform_real_distribution<double> uv(1e-3, 10.0);
  std::uniform_int_distribution<int> un(2, 6);
  for (int k = 0; k < 200; ++k) {
    std::vector<FusionMember> ms;
    const int n = un(rng);
    for (int i = 0; i < n; ++i) {
      Vec4 mu, var;
      for (int c = 0; c < 4; ++c) {
        mu[c] = um(rng);
        var[c] = uv(rng);
      }
      ms.push_back(member(mu, var));
    }
    const FusedPrediction f = fuse(ms);
    for (int c = 0; c < 4; ++c) {
      double precision = 0.0, wsum = 0.0;
      for (size_t i = 0; i < ms.size(); ++i) {
        precision += 1.0 / ms[i].prediction.var[c];
        wsum += f.weights[c][i];
      }
      CHECK(std::abs(1.0 / f.var_poe[c] - precision) <=
            1e-12 * std::max(1.0, precision));
      CHECK(std::abs(wsum - 1.0) <= 1e-12);
      CHECK(f.var_poe[c] <= ms[0].prediction.var[c] + 1e-15);
    }
    // duplicating one member halves its variance, keeps its mean
    const FusedPrediction dup = fuse({ms[0], ms[0]});
    for (int c = 0; c < 4; ++c) {
      CHECK(std::abs(dup.var_poe[c] - 0.5 * ms[0].prediction.var[c]) <=
            1e-12);
      CHECK(std::abs(dup.mu_poe[c] - ms[0].prediction.mu[c]) <= 1e-12);
    }
  }
}

TEST_CASE("empty member list rejected") {
  CHECK_THROWS_AS(fuse({}), std::invalid_argument);
  CHECK_THROWS_AS(fused_error_radius({}, Vec4::Zero()),
                  std::invalid_argument);
}

TEST_CASE("fused error radius") {
  BoundReport r1, r2;
  r1.delta_bar = Vec4::Constant(0.2);
  r1.l_mu = Vec4::Constant(1.0);
  r2.delta_bar = Vec4::Constant(0.5);
  r2.l_mu = Vec4::Constant(0.4);

  // identical poses: no dispersion term, max of the member radii
  const Vec4 q = Vec4(1.0, 0.0, 0.0, 0.0);
  Vec4 rad = fused_error_radius({{r1, q}, {r2, q}}, q);
  for (int c = 0; c < 4; ++c) CHECK(rad[c] == doctest::Approx(0.5));

  // dispersion of 2 adds L_mu * 2
  const Vec4 q2 = Vec4(3.0, 0.0, 0.0, 0.0);
  rad = fused_error_radius({{r1, q}, {r2, q2}}, q);
  for (int c = 0; c < 4; ++c) CHECK(rad[c] == doctest::Approx(0.5 + 2.0));
}

TEST_CASE("aggregate norms") {
  CHECK(aggregate_norms(Vec4::Zero(), Vec4::Zero()).first == 0.0);
  const auto [l, d] =
      aggregate_norms(Vec4(3, 0, 4, 0), Vec4(0, 5, 0, 12));
  CHECK(l == doctest::Approx(5.0));
  CHECK(d == doctest::Approx(13.0));
}
