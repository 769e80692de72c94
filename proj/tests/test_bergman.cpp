#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "tlab/bergman.hpp"
#include "tlab/verify.hpp"

using namespace tlab;
using bergman::MCParams;
using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;

TEST_CASE("parameter guards", "[bergman]") {
  REQUIRE_NOTHROW(MCParams(3, 4.0, 100, 1));
  // lambda <= n-1 is out of range entirely
  REQUIRE_THROWS_AS(MCParams(3, 2.0, 100, 1), tlab::Error);
  // n-1 < lambda <= n-1/2 has infinite estimator variance without force
  REQUIRE_THROWS_AS(MCParams(3, 2.3, 100, 1), tlab::Error);
  REQUIRE_NOTHROW(MCParams(3, 2.3, 100, 1, 1 << 16, true));
  REQUIRE_THROWS_AS(MCParams(11, 12.0, 100, 1), tlab::Error);
  REQUIRE_THROWS_AS(MCParams(3, 4.0, 0, 1), tlab::Error);
}

TEST_CASE("samples lie in the domain and are reproducible", "[bergman]") {
  const MCParams p(3, 4.0, 5000, 42);
  const auto pts = bergman::sample_domain(p);
  REQUIRE(pts.size() == 5000);
  for (const auto& z : pts) REQUIRE(geometry::in_domain(z));
  const auto again = bergman::sample_domain(p);
  for (size_t i = 0; i < pts.size(); ++i)
    for (int j = 0; j < 3; ++j) REQUIRE(pts[i][j] == again[i][j]);
  // a different seed gives a different stream
  const auto other = bergman::sample_domain(MCParams(3, 4.0, 5000, 43));
  REQUIRE(pts[0][0] != other[0][0]);
}

TEST_CASE("weighted mean basics", "[bergman]") {
  const MCParams p(3, 4.0, 100000, 7);
  const auto set = bergman::make_samples(p);

  const auto one = bergman::weighted_mean_on(set, [](const CVec&) { return cplx(1.0); });
  REQUIRE(one.value.real() == 1.0);
  REQUIRE(one.value.imag() == 0.0);
  REQUIRE(one.stderr_ == 0.0);

  const auto z1 = bergman::weighted_mean_on(set, [](const CVec& z) { return z[0]; });
  REQUIRE(std::abs(z1.value) < 3.0 * z1.stderr_);

  const auto mu = bergman::weighted_mean_on(
      set, [](const CVec& z) { return cplx(actions::moment_map_so2(z)); });
  REQUIRE(mu.value.real() < 0.0);
  REQUIRE(std::abs(mu.value) > 3.0 * mu.stderr_);
}

TEST_CASE("inner products", "[bergman]") {
  const MCParams p(3, 4.0, 100000, 11);
  const int n = 3;
  const auto one = poly::NumPoly::constant(n, cplx(1.0));
  const auto r = bergman::inner_product(one, one, p);
  REQUIRE(r.value.real() == 1.0);

  // distinct torus weights: z1 - i z2 against z1 + i z2
  poly::NumPoly qm(n), qp(n);
  qm.add_term({1, 0, 0}, cplx(1.0, 0.0));
  qm.add_term({0, 1, 0}, cplx(0.0, -1.0));
  qp.add_term({1, 0, 0}, cplx(1.0, 0.0));
  qp.add_term({0, 1, 0}, cplx(0.0, 1.0));
  const auto cross = bergman::inner_product(qm, qp, p);
  REQUIRE(std::abs(cross.value) < 3.0 * cross.stderr_);

  const auto z1 = poly::NumPoly::variable(n, 0);
  const auto norm = bergman::inner_product(z1, z1, p);
  REQUIRE(norm.value.real() > 0.0);
  REQUIRE(std::abs(norm.value) > 10.0 * norm.stderr_);
}

TEST_CASE("gram blocks by weight class", "[bergman]") {
  const MCParams p(3, 4.0, 50000, 13);
  const auto table = bergman::gram_blocks(2, p);
  // the constant polynomial is alone in its class
  const polyspaces::WeightLabel const_class{{-0}, 0};
  bool found_const = false;
  for (const auto& [wl, m] : table.matrices) {
    if (wl.so2_weight == 0) {
      found_const = true;
      REQUIRE(m.rows() == 1);
      REQUIRE(m(0, 0).real() == 1.0);
    }
    REQUIRE((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
    const auto& err = table.errors.at(wl);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      REQUIRE(m(i, i).real() > 0.0);
      if (err(i, i) > 0.0) REQUIRE(m(i, i).real() > 5.0 * err(i, i));
    }
  }
  REQUIRE(found_const);
}

TEST_CASE("gram cache round trip", "[bergman]") {
  const auto dir = std::filesystem::temp_directory_path() / "tlab-cache-test";
  std::filesystem::remove_all(dir);
  const MCParams p(3, 4.0, 20000, 17);
  const auto fresh = bergman::gram_blocks(2, p, dir.string());
  REQUIRE(!std::filesystem::is_empty(dir));
  const auto cached = bergman::gram_blocks(2, p, dir.string());
  REQUIRE(fresh.matrices.size() == cached.matrices.size());
  for (const auto& [wl, m] : fresh.matrices) {
    const auto& c = cached.matrices.at(wl);
    REQUIRE((m - c).cwiseAbs().maxCoeff() == 0.0);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("unit symbol truncates to the identity", "[bergman]") {
  const MCParams p(3, 4.0, 100000, 19);
  const auto op =
      bergman::toeplitz_truncation(symbols::parse_symbol("moment: 1"), 2, p);
  const Eigen::Index k = op.entries.rows();
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      const cplx expect = i == j ? cplx(1.0) : cplx(0.0);
      if (op.err(i, j) > 0.0)
        REQUIRE(std::abs(op.entries(i, j) - expect) < 5.0 * op.err(i, j));
      else
        REQUIRE(std::abs(op.entries(i, j) - expect) < 1e-12);
    }
}

TEST_CASE("real symbols give Hermitian truncations", "[bergman]") {
  const MCParams p(3, 4.0, 100000, 23);
  const auto op =
      bergman::toeplitz_truncation(symbols::parse_symbol("moment: exp(s)"), 2, p);
  const Eigen::Index k = op.entries.rows();
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      REQUIRE(std::abs(op.entries(i, j) - std::conj(op.entries(j, i))) <
              5.0 * (op.err(i, j) + op.err(j, i)));
}

TEST_CASE("operator JSON serialization round trips", "[bergman]") {
  const MCParams p(3, 4.0, 20000, 29);
  const auto op =
      bergman::toeplitz_truncation(symbols::parse_symbol("moment: exp(s)"), 2, p);
  const auto j = bergman::operator_to_json(op);
  const auto j2 = nlohmann::json::parse(j.dump());
  const auto entries = bergman::detail::cmat_from_json(j2.at("entries"));
  REQUIRE(entries.rows() == op.entries.rows());
  for (Eigen::Index i = 0; i < entries.rows(); ++i)
    for (Eigen::Index jx = 0; jx < entries.cols(); ++jx)
      REQUIRE(entries(i, jx) == op.entries(i, jx));
}

TEST_CASE("self commutator vanishes exactly", "[bergman]") {
  const MCParams p(3, 4.0, 20000, 31);
  const auto op =
      bergman::toeplitz_truncation(symbols::parse_symbol("moment: exp(s)"), 2, p);
  const auto r = bergman::commutator_of(op, op);
  REQUIRE(r.value == 0.0);
}

TEST_CASE("Rayleigh quotient basics", "[bergman]") {
  const MCParams p(3, 4.0, 50000, 37);
  const auto set = bergman::make_samples(p);
  const auto unit = symbols::parse_symbol("moment: 1");
  const auto r = bergman::rayleigh_eigenvalue_on(unit, 1, 1, p, set);
  REQUIRE(r.value == 1.0);

  // (0,0) block: the Rayleigh quotient is the plain weighted mean
  const auto f = symbols::parse_symbol("moment: exp(s)");
  const auto r00 = bergman::rayleigh_eigenvalue_on(f, 0, 0, p, set);
  const auto wm = bergman::weighted_mean_on(set, [&](const CVec& z) {
    return symbols::eval_symbol(f, z);
  });
  REQUIRE(r00.value == Catch::Approx(wm.value.real()).epsilon(1e-12));

  const auto phase = symbols::parse_symbol(
      R"(phase: [{"alpha":[1,0,0],"beta":[1,0,0],"coef":[1,0]}])");
  REQUIRE_THROWS_AS(bergman::rayleigh_eigenvalue_on(phase, 0, 0, p, set),
                    tlab::Error);
}

TEST_CASE("equivariance of the truncation", "[bergman]") {
  const MCParams p(3, 4.0, 50000, 41);
  const auto f = symbols::parse_symbol("moment: exp(s)");
  const auto id = actions::GroupElement::identity(3);
  REQUIRE(bergman::equivariance_check(f, id, 2, p) < 1e-10);

  rng::CounterRng gen(43, 0);
  const auto g = actions::random_group_element(3, gen);
  // invariant symbol: the operator commutes with the representation up to
  // Monte Carlo noise in the Gram factors
  REQUIRE(bergman::equivariance_check(f, g, 2, p) < 0.1);
}
