#include <catch2/catch_amalgamated.hpp>

#include "tlab/actions.hpp"
#include "tlab/rng.hpp"

using namespace tlab;
using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

namespace {
CVec domain_point(int n, rng::CounterRng& gen) {
  for (;;) {
    CVec z(n);
    for (int j = 0; j < n; ++j)
      z[j] = 0.35 * cplx(gen.uniform() - 0.5, gen.uniform() - 0.5);
    if (geometry::in_domain(z)) return z;
  }
}
}  // namespace

TEST_CASE("rotation block convention", "[actions]") {
  const auto r = actions::rotation2(M_PI / 2.0);
  REQUIRE(r(0, 0) == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(r(0, 1) == Catch::Approx(1.0));
  REQUIRE(r(1, 0) == Catch::Approx(-1.0));
  REQUIRE(r(1, 1) == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("group element validation", "[actions]") {
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(3, 3);
  bad(0, 1) = 0.1;
  REQUIRE_THROWS_AS(actions::GroupElement(bad, cplx(1.0, 0.0)), tlab::Error);
  REQUIRE_THROWS_AS(
      actions::GroupElement(Eigen::MatrixXd::Identity(3, 3), cplx(2.0, 0.0)),
      tlab::Error);
  // reflection: orthogonal but det -1
  Eigen::MatrixXd refl = Eigen::MatrixXd::Identity(3, 3);
  refl(0, 0) = -1.0;
  REQUIRE_THROWS_AS(actions::GroupElement(refl, cplx(1.0, 0.0)), tlab::Error);
}

TEST_CASE("action preserves the domain and z^T z up to phase", "[actions]") {
  rng::CounterRng gen(7, 0);
  for (int n : {3, 4, 5}) {
    for (int t = 0; t < 20; ++t) {
      const CVec z = domain_point(n, gen);
      const auto g = actions::random_group_element(n, gen);
      const CVec gz = actions::act(g, z);
      REQUIRE(geometry::in_domain(gz));
      // (tAz)^T (tAz) = t^2 z^T z
      REQUIRE(std::abs(geometry::z_top_z(gz) - g.t * g.t * geometry::z_top_z(z)) <
              1e-12);
      REQUIRE(std::abs(geometry::delta(gz) - geometry::delta(z)) < 1e-12);
    }
  }
}

TEST_CASE("moment map values", "[actions]") {
  CVec z(3);
  z << 0.5, 0.0, 0.0;
  const RVec mu = actions::moment_map_torus(z);
  REQUIRE(mu.size() == 2);
  REQUIRE(mu[0] == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(mu[1] == Catch::Approx(-1.0 / 3.0));
  REQUIRE(actions::moment_map_so2(z) == Catch::Approx(-1.0 / 3.0));

  CVec origin = CVec::Zero(3);
  REQUIRE(actions::moment_map_so2(origin) == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("moment map is nonpositive for the scalar circle", "[actions]") {
  rng::CounterRng gen(9, 0);
  for (int t = 0; t < 200; ++t)
    REQUIRE(actions::moment_map_so2(domain_point(3, gen)) <= 0.0);
}

TEST_CASE("infinitesimal fields generate the torus action", "[actions]") {
  rng::CounterRng gen(11, 0);
  const int n = 4;
  const CVec z = domain_point(n, gen);
  const double h = 1e-6;
  for (int j = 1; j <= actions::torus_rank(n); ++j) {
    RVec theta = RVec::Zero(actions::torus_rank(n));
    theta[j - 1] = h;
    const CVec moved = actions::act(actions::torus_element(theta, n), z);
    const CVec field = actions::infinitesimal_field(j, z);
    for (int k = 0; k < n; ++k)
      REQUIRE(std::abs((moved[k] - z[k]) / h - field[k]) < 1e-5);
  }
  // scalar circle: t = e^{ih}
  const actions::GroupElement rot(Eigen::MatrixXd::Identity(n, n),
                                  std::polar(1.0, h));
  const CVec moved = actions::act(rot, z);
  const CVec field = actions::infinitesimal_field(actions::torus_rank(n) + 1, z);
  for (int k = 0; k < n; ++k)
    REQUIRE(std::abs((moved[k] - z[k]) / h - field[k]) < 1e-5);
}

TEST_CASE("Hamiltonian residual is small at interior points", "[actions]") {
  rng::CounterRng gen(13, 0);
  for (int n : {3, 4}) {
    for (int t = 0; t < 10; ++t) {
      const CVec z = domain_point(n, gen);
      for (int j = 1; j <= actions::torus_rank(n) + 1; ++j) {
        CVec u(n);
        for (int k = 0; k < n; ++k) u[k] = cplx(gen.normal(), gen.normal());
        u /= std::sqrt(u.squaredNorm());
        const double omega =
            geometry::symplectic_form(z, actions::infinitesimal_field(j, z), u);
        const double res = actions::hamiltonian_residual(j, z, u, 1e-5);
        REQUIRE(res < 1e-6 * (1.0 + std::abs(omega)));
      }
    }
  }
}

TEST_CASE("finite difference step must stay inside", "[actions]") {
  CVec z(3);
  z << 0.999, 0.0, 0.0;  // within the ball but close to the edge
  CVec u(3);
  u << 1.0, 0.0, 0.0;
  try {
    actions::hamiltonian_residual(1, z, u, 0.1);
    FAIL("expected throw");
  } catch (const tlab::Error& e) {
    REQUIRE(e.code() == ErrorCode::StepExitsDomain);
  }
}

TEST_CASE("random rotations are special orthogonal", "[actions]") {
  rng::CounterRng gen(15, 0);
  for (int n : {3, 5, 8}) {
    const auto q = actions::random_rotation(n, gen);
    REQUIRE((q.transpose() * q - Eigen::MatrixXd::Identity(n, n))
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    REQUIRE(q.determinant() == Catch::Approx(1.0));
  }
}
