#include <doctest.h>

#include <random>
#include <variant>

#include "dgp/vision.hpp"

using namespace dgp;

TEST_CASE("pinhole projection") {
  CameraModel cam;
  auto r = project(Vec3(0.1, 0.2, 1.0), cam);
  REQUIRE(std::holds_alternative<Eigen::Vector2d>(r));
  CHECK(std::get<Eigen::Vector2d>(r).x() == doctest::Approx(0.1));
  CHECK(std::get<Eigen::Vector2d>(r).y() == doctest::Approx(0.2));

  r = project(Vec3(0.2, 0.4, 2.0), cam);
  REQUIRE(std::holds_alternative<Eigen::Vector2d>(r));
  CHECK(std::get<Eigen::Vector2d>(r).x() == doctest::Approx(0.1));
  CHECK(std::get<Eigen::Vector2d>(r).y() == doctest::Approx(0.2));

  cam.z_min = 0.01;
  r = project(Vec3(0.1, 0.2, 0.0001), cam);
  CHECK(std::holds_alternative<DepthError>(r));
}

TEST_CASE("feature vector of the square target") {
  const CameraModel cam;
  const FeatureSet fs = FeatureSet::default_square();
  REQUIRE_NOTHROW(fs.validate());

  // target 2 m directly ahead, facing the camera
  auto fv = feature_vector(Pose(Vec3(0, 0, 2.0), 0.0), fs, cam);
  REQUIRE(std::holds_alternative<Eigen::VectorXd>(fv));
  const Eigen::VectorXd f = std::get<Eigen::VectorXd>(fv);
  REQUIRE(f.size() == 8);
  CHECK(f.cwiseAbs().maxCoeff() == doctest::Approx(0.05));
  // opposing feature pairs land on symmetric image points
  CHECK(f.segment<2>(0).isApprox(-f.segment<2>(4), 1e-12));
  CHECK(f.segment<2>(2).isApprox(-f.segment<2>(6), 1e-12));

  // target behind the camera
  auto bad = feature_vector(Pose(Vec3(0, 0, -2.0), 0.0), fs, cam);
  CHECK(std::holds_alternative<VisibilityFailure>(bad));

  // target far off-axis: in front but outside the image bounds
  auto off = feature_vector(Pose(Vec3(5.0, 0, 2.0), 0.0), fs, cam);
  REQUIRE(std::holds_alternative<VisibilityFailure>(off));
  CHECK(std::get<VisibilityFailure>(off).reason == "outside image bounds");

  CHECK_THROWS_AS(FeatureSet{{Vec3::Zero()}}.validate(),
                  std::invalid_argument);
}

TEST_CASE("estimation error channel") {
  const Pose g(Vec3(0.3, 0.1, 1.2), 0.4);
  CHECK(estimation_error(g, g).cwiseAbs().maxCoeff() <= 1e-15);

  const Vec4 e = estimation_error(Pose::identity(), Pose(Vec3(0.1, 0, 0), 0.0));
  CHECK(e[0] == doctest::Approx(0.1));
  CHECK(e.tail<3>().cwiseAbs().maxCoeff() <= 1e-15);

  // generic matrix oracle on random pairs
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const Pose gbar(Vec3(u(rng), u(rng), u(rng)), u(rng));
    const Pose gi(Vec3(u(rng), u(rng), u(rng)), u(rng));
    const Mat4 rel = gbar.matrix().inverse() * gi.matrix();
    Vec4 oracle;
    oracle << rel.topRightCorner<3, 1>(), rel(1, 0);
    CHECK((estimation_error(gbar, gi) - oracle).cwiseAbs().maxCoeff() <=
          1e-12);
  }
}

TEST_CASE("noisy estimation error") {
  const CameraModel clean;
  const FeatureSet fs = FeatureSet::default_square();
  const Pose gbar(Vec3(0.02, -0.01, 1.5), 0.05);
  const Pose gi(Vec3(0.0, 0.0, 1.5), 0.0);
  std::mt19937_64 rng(22);

  // zero pixel noise: identical to the exact channel
  const Vec4 exact = estimation_error(gbar, gi);
  CHECK((estimation_error_noisy(gbar, gi, fs, clean, rng) - exact)
            .cwiseAbs()
            .maxCoeff() == 0.0);

  CameraModel noisy = clean;
  noisy.pixel_noise_std = 1e-3;
  double max_dev = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Vec4 e = estimation_error_noisy(gbar, gi, fs, noisy, rng);
    max_dev = std::max(max_dev, (e - exact).norm());
  }
  CHECK(max_dev > 0.0);
  CHECK(max_dev < 0.5);  // small pixel noise stays a small pose perturbation
}

TEST_CASE("feature residual") {
  Eigen::VectorXd f(4), fb(4);
  f << 1, 2, 3, 4;
  fb = f;
  CHECK(feature_residual(f, fb).cwiseAbs().maxCoeff() == 0.0);
  fb[1] = 1.5;
  CHECK(feature_residual(f, fb)[1] == doctest::Approx(0.5));
  Eigen::VectorXd shorter(3);
  CHECK_THROWS_AS(feature_residual(f, shorter), std::invalid_argument);
}

TEST_CASE("residual shrinks linearly with the pose perturbation") {
  const CameraModel cam;
  const FeatureSet fs = FeatureSet::default_square();
  const Pose g(Vec3(0, 0, 1.5), 0.0);
  const Eigen::VectorXd f0 =
      std::get<Eigen::VectorXd>(feature_vector(g, fs, cam));
  double prev = -1.0;
  for (double d : {1e-2, 1e-3, 1e-4}) {
    const Pose gp(Vec3(d, 0, 1.5), 0.0);
    const Eigen::VectorXd f =
        std::get<Eigen::VectorXd>(feature_vector(gp, fs, cam));
    const double norm = feature_residual(f, f0).norm();
    if (prev > 0.0) {
      CHECK(norm == doctest::Approx(prev / 10.0).epsilon(0.05));
    }
    prev = norm;
  }
}
