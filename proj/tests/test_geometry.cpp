#include <doctest.h>

#include <cmath>
#include <random>

#include "dgp/geometry.hpp"

using namespace dgp;

namespace {

bool pose_near(const Pose& a, const Pose& b, double tol) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff() <= tol;
}

// Reference RK4 on the matrix ODE g' = g * hat(V), used as the independent
// oracle for the closed-form exponential.
Mat4 rk4_matrix_flow(const Mat4& g0, const BodyVelocity& V, double T,
                     double dt) {
  const Mat4 Vh = hat(V);
  Mat4 g = g0;
  const int steps = static_cast<int>(std::llround(T / dt));
  for (int k = 0; k < steps; ++k) {
    const Mat4 k1 = g * Vh;
    const Mat4 k2 = (g + 0.5 * dt * k1) * Vh;
    const Mat4 k3 = (g + 0.5 * dt * k2) * Vh;
    const Mat4 k4 = (g + dt * k3) * Vh;
    g += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return g;
}

}  // namespace

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(0.0) == doctest::Approx(0.0));
  CHECK(wrap_angle(M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_angle(-M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_angle(3.0 * M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_angle(2.5 * M_PI) == doctest::Approx(0.5 * M_PI));
  CHECK(wrap_angle(-0.5 * M_PI) == doctest::Approx(-0.5 * M_PI));
}

TEST_CASE("compose identity and inverse cases") {
  const Pose g(Vec3(0.3, -0.7, 1.2), 0.8);
  CHECK(pose_near(compose(Pose::identity(), g), g, 1e-15));
  CHECK(pose_near(compose(g, Pose::identity()), g, 1e-15));
  CHECK(pose_near(compose(g, inverse(g)), Pose::identity(), 1e-14));
  CHECK(pose_near(compose(inverse(g), g), Pose::identity(), 1e-14));
}

TEST_CASE("compose worked example") {
  const Pose a(Vec3(1, 0, 0), M_PI / 2.0);
  const Pose b(Vec3(1, 0, 0), 0.0);
  const Pose c = compose(a, b);
  CHECK(c.p().x() == doctest::Approx(1.0));
  CHECK(c.p().y() == doctest::Approx(1.0));
  CHECK(c.p().z() == doctest::Approx(0.0));
  CHECK(c.theta() == doctest::Approx(M_PI / 2.0));
}

TEST_CASE("compose matches the generic 4x4 matrix product") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const Pose a(Vec3(u(rng), u(rng), u(rng)), u(rng));
    const Pose b(Vec3(u(rng), u(rng), u(rng)), u(rng));
    const Mat4 prod = a.matrix() * b.matrix();
    CHECK((compose(a, b).matrix() - prod).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("inverse examples") {
  CHECK(pose_near(inverse(Pose::identity()), Pose::identity(), 1e-15));
  const Pose t(Vec3(1, 2, 3), 0.0);
  CHECK(pose_near(inverse(t), Pose(Vec3(-1, -2, -3), 0.0), 1e-15));
  const Pose r(Vec3(1, 0, 0), M_PI / 2.0);
  const Pose ri = inverse(r);
  CHECK(ri.p().x() == doctest::Approx(0.0));
  CHECK(ri.p().y() == doctest::Approx(1.0));
  CHECK(ri.theta() == doctest::Approx(-M_PI / 2.0));
  // numerical 4x4 inverse oracle
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const Pose g(Vec3(u(rng), u(rng), u(rng)), u(rng));
    const Mat4 gi = g.matrix().inverse();
    CHECK((inverse(g).matrix() - gi).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("hat structure and vee round trip") {
  CHECK(hat(BodyVelocity{}).cwiseAbs().maxCoeff() == 0.0);
  const Mat4 M = hat(BodyVelocity{Vec3(1, 2, 3), 0.5});
  CHECK(M(0, 1) == doctest::Approx(-0.5));
  CHECK(M(1, 0) == doctest::Approx(0.5));
  CHECK(M(0, 3) == doctest::Approx(1.0));
  CHECK(M(1, 3) == doctest::Approx(2.0));
  CHECK(M(2, 3) == doctest::Approx(3.0));
  CHECK(M.row(3).cwiseAbs().maxCoeff() == 0.0);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    const BodyVelocity V{Vec3(u(rng), u(rng), u(rng)), u(rng)};
    const BodyVelocity W = vee(hat(V));
    CHECK((W.as_vec4() - V.as_vec4()).cwiseAbs().maxCoeff() <= 1e-15);
  }
  Mat4 bad = Mat4::Zero();
  bad(2, 0) = 1.0;
  CHECK_THROWS_AS(vee(bad), std::invalid_argument);
}

TEST_CASE("integrate closed-form cases") {
  const Pose a = integrate(Pose::identity(), BodyVelocity{Vec3(1, 0, 0), 0.0},
                           1.0);
  CHECK(pose_near(a, Pose(Vec3(1, 0, 0), 0.0), 1e-15));

  const Pose b = integrate(Pose::identity(), BodyVelocity{Vec3::Zero(), M_PI},
                           1.0);
  CHECK(b.p().norm() == doctest::Approx(0.0));
  CHECK(b.theta() == doctest::Approx(M_PI));

  const Pose c = integrate(Pose::identity(),
                           BodyVelocity{Vec3(1, 0, 0), M_PI / 2.0}, 1.0);
  CHECK(c.p().x() == doctest::Approx(2.0 / M_PI));
  CHECK(c.p().y() == doctest::Approx(2.0 / M_PI));
  CHECK(c.p().z() == doctest::Approx(0.0));
  CHECK(c.theta() == doctest::Approx(M_PI / 2.0));
}

TEST_CASE("integrate matches the RK4 matrix oracle") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const BodyVelocity V{Vec3(u(rng), u(rng), u(rng)), 2.0 * u(rng)};
    const Pose g0(Vec3(u(rng), u(rng), u(rng)), u(rng));
    const Mat4 ref = rk4_matrix_flow(g0.matrix(), V, 1.0, 1e-3);
    const Mat4 got = integrate(g0, V, 1.0).matrix();
    CHECK((got - ref).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("vec_of coordinates") {
  CHECK(vec_of(Pose::identity()).cwiseAbs().maxCoeff() == 0.0);
  const Vec4 v = vec_of(Pose(Vec3(1, 2, 3), M_PI / 2.0));
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[1] == doctest::Approx(2.0));
  CHECK(v[2] == doctest::Approx(3.0));
  CHECK(v[3] == doctest::Approx(1.0));
  CHECK(vec_of(Pose(Vec3::Zero(), M_PI)).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("adjoint action and orthogonality") {
  CHECK((adjoint(0.0) - Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);
  const Vec4 e1(1, 0, 0, 0);
  const Vec4 r = adjoint(M_PI / 2.0) * e1;
  CHECK(r[0] == doctest::Approx(0.0));
  CHECK(r[1] == doctest::Approx(1.0));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int k = 0; k < 50; ++k) {
    const double th = u(rng);
    CHECK((adjoint(th).transpose() - adjoint(-th)).cwiseAbs().maxCoeff() <=
          1e-15);
  }
}

TEST_CASE("phi closed form") {
  CHECK(phi(0.0) == doctest::Approx(0.0));
  CHECK(phi(M_PI) == doctest::Approx(4.0));
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int k = 0; k < 50; ++k) {
    const double th = u(rng);
    const Mat3 D = Mat3::Identity() - rot_z(th);
    CHECK(phi(th) == doctest::Approx(0.5 * D.squaredNorm()).epsilon(1e-12));
  }
}

TEST_CASE("project recovers the nearest group element") {
  const Pose g(Vec3(0.4, -0.2, 0.9), 1.1);
  CHECK(pose_near(Pose::project(g.matrix()), g, 1e-14));
}
