#include <doctest.h>

#include "dgp/dataset.hpp"

using namespace dgp;

TEST_CASE("sector membership") {
  const ExpertRegions r;  // boundaries 90 / 210 / 330
  CHECK(r.count() == 3);
  CHECK(r.sector_of(0.0, 1.0) == 0);    // 90 deg
  CHECK(r.sector_of(-1.0, 0.3) == 0);   // ~163 deg
  CHECK(r.sector_of(-1.0, -1.0) == 1);  // 225 deg
  CHECK(r.sector_of(0.3, -1.0) == 1);   // ~287 deg
  CHECK(r.sector_of(1.0, -0.01) == 2);  // just below 360
  CHECK(r.sector_of(1.0, 0.0) == 2);    // 0 deg wraps into the last sector
  CHECK(r.sector_of(1.0, 1.0) == 2);    // 45 deg
}

TEST_CASE("region validation") {
  ExpertRegions r;
  CHECK_NOTHROW(r.validate());
  r.boundaries_deg = {};
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
  r.boundaries_deg = {200.0, 100.0};
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
  r.boundaries_deg = {0.0, 400.0};
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
  r = ExpertRegions{};
  r.samples_per_drone = 0;
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
}

TEST_CASE("target rollout") {
  TargetMotion m;
  m.kind = TargetKind::kConstant;
  m.constant = BodyVelocity{Vec3(1, 0, 0), 0.0};
  m.initial = Pose();
  const auto traj = rollout_target(m, 1.0, 0.1);
  REQUIRE(traj.size() == 11);
  CHECK(traj.front().g.p().x() == doctest::Approx(0.0));
  CHECK(traj.back().g.p().x() == doctest::Approx(1.0));
  CHECK(traj[5].V.v.x() == doctest::Approx(1.0));
}

TEST_CASE("dataset generation on the default scenario") {
  const TargetMotion m;  // duffing, default initial pose
  const auto traj = rollout_target(m, 100.0, 0.01);
  const ExpertRegions r;

  // every sector has coverage
  std::vector<int> counts(3, 0);
  for (const auto& s : traj) {
    ++counts[r.sector_of(s.g.p().x(), s.g.p().y())];
  }
  for (int c : counts) CHECK(c > 0);

  const auto d = generate_datasets(traj, r, 0.01, 0);
  REQUIRE(d.size() == 3);
  for (const Dataset& ds : d) {
    CHECK(ds.size() == 10);
    CHECK(ds.sigma_n[0] == doctest::Approx(0.1));
    CHECK_NOTHROW(ds.validate());
  }

  // identical seed: identical datasets
  const auto d2 = generate_datasets(traj, r, 0.01, 0);
  for (int i = 0; i < 3; ++i) {
    CHECK((d[i].X - d2[i].X).cwiseAbs().maxCoeff() == 0.0);
    CHECK((d[i].Y - d2[i].Y).cwiseAbs().maxCoeff() == 0.0);
  }
  // different seed: different noise draws
  const auto d3 = generate_datasets(traj, r, 0.01, 1);
  CHECK((d[0].Y - d3[0].Y).cwiseAbs().maxCoeff() > 0.0);

  // zero noise: observations equal the true body velocities
  const auto clean = generate_datasets(traj, r, 0.0, 0);
  for (const Dataset& ds : clean) {
    for (int m2 = 0; m2 < ds.size(); ++m2) {
      bool found = false;
      for (const auto& s : traj) {
        if ((s.g.flatten() - ds.X.row(m2).transpose()).norm() < 1e-14) {
          found = true;
          CHECK((s.V.as_vec4() - ds.Y.row(m2).transpose()).cwiseAbs()
                    .maxCoeff() <= 1e-15);
          break;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("empty sector names the drone") {
  // all samples on the positive x-axis fall in the wrap-around sector 3
  TargetMotion m;
  m.kind = TargetKind::kConstant;
  m.constant = BodyVelocity{Vec3(1, 0, 0), 0.0};
  m.initial = Pose(Vec3(1.0, 0.0, 0.0), 0.0);
  const auto traj = rollout_target(m, 1.0, 0.1);
  try {
    generate_datasets(traj, ExpertRegions{}, 0.01, 0);
    FAIL("expected an empty-sector error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("drone 1") != std::string::npos);
  }
}
