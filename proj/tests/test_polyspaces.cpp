#include <catch2/catch_amalgamated.hpp>

#include "tlab/polyspaces.hpp"
#include "tlab/rng.hpp"

using namespace tlab;
using exact::GaussianRational;
using poly::ExactPoly;
using poly::MultiIndex;
using cplx = std::complex<double>;

namespace {
ExactPoly monomial(int n, MultiIndex a) {
  ExactPoly p(n);
  p.add_term(a, GaussianRational(1));
  return p;
}
}  // namespace

TEST_CASE("harmonic dimensions", "[polyspaces]") {
  REQUIRE(polyspaces::harmonic_dim(3, 0) == 1);
  REQUIRE(polyspaces::harmonic_dim(3, 1) == 3);
  REQUIRE(polyspaces::harmonic_dim(3, 2) == 5);
  REQUIRE(polyspaces::harmonic_dim(3, 3) == 7);
  REQUIRE(polyspaces::harmonic_dim(4, 2) == 9);
  REQUIRE(polyspaces::harmonic_dim(5, 3) == 30);
}

TEST_CASE("harmonic basis is harmonic and has the right size", "[polyspaces]") {
  for (int n : {3, 4}) {
    for (int m = 0; m <= 4; ++m) {
      const auto basis = polyspaces::harmonic_basis(n, m);
      REQUIRE(static_cast<long long>(basis.size()) == polyspaces::harmonic_dim(n, m));
      for (const auto& h : basis)
        REQUIRE(polyspaces::holomorphic_laplacian(h).is_zero());
    }
  }
}

TEST_CASE("decompose known cases", "[polyspaces]") {
  const int n = 3;
  const auto ztz = poly::z_top_z_poly(n);

  // z^T z itself lives in the (0,1) block
  auto parts = polyspaces::decompose(ztz);
  REQUIRE(parts.size() == 1);
  REQUIRE(parts.count({0, 1}) == 1);

  // z1^2 = (z1^2 - ztz/3) + (1/3) ztz
  auto p = monomial(n, {2, 0, 0});
  parts = polyspaces::decompose(p);
  REQUIRE(parts.size() == 2);
  const auto& h = parts.at({2, 0});
  REQUIRE(polyspaces::holomorphic_laplacian(h).is_zero());
  const auto& c = parts.at({0, 1});
  REQUIRE(c == ExactPoly::constant(n, GaussianRational(mpq_class(1, 3))));
  ExactPoly rebuilt = h + ztz * c;
  REQUIRE(rebuilt == p);
}

TEST_CASE("decompose random polynomials exactly", "[polyspaces]") {
  rng::CounterRng gen(17, 0);
  for (int n : {3, 4}) {
    for (int m = 2; m <= 5; ++m) {
      ExactPoly p(n);
      for (const auto& a : poly::monomials(n, m)) {
        const long re = static_cast<long>(gen.next_u64() % 7) - 3;
        const long im = static_cast<long>(gen.next_u64() % 7) - 3;
        p.add_term(a, GaussianRational(mpq_class(re), mpq_class(im)));
      }
      const auto parts = polyspaces::decompose(p);
      ExactPoly rebuilt(n);
      const auto ztz = poly::z_top_z_poly(n);
      for (const auto& [label, h] : parts) {
        REQUIRE(polyspaces::holomorphic_laplacian(h).is_zero());
        REQUIRE(h.homogeneous_degree() == label.k1);
        rebuilt += h * ztz.pow(label.k2);
      }
      REQUIRE(rebuilt == p);
    }
  }
}

TEST_CASE("highest weight vectors", "[polyspaces]") {
  const int n = 4;
  for (int k1 : {0, 1, 2})
    for (int k2 : {0, 1}) {
      const auto h = polyspaces::highest_weight_vector(n, k1, k2);
      REQUIRE(h.homogeneous_degree() == k1 + 2 * k2);
      const auto wl = polyspaces::weight_of(h);
      REQUIRE(wl.so2_weight == -(k1 + 2 * k2));
      REQUIRE(wl.torus_weight[0] == -k1);
      for (size_t j = 1; j < wl.torus_weight.size(); ++j)
        REQUIRE(wl.torus_weight[j] == 0);
    }
}

TEST_CASE("weight_of rejects mixed weights", "[polyspaces]") {
  try {
    polyspaces::weight_of(monomial(4, {1, 0, 0, 0}));  // z1 mixes v1 and v2
    FAIL("expected throw");
  } catch (const tlab::Error& e) {
    REQUIRE(e.code() == ErrorCode::NotAWeightVector);
  }
}

TEST_CASE("q basis spans with torus eigenvalues", "[polyspaces]") {
  const int n = 4;
  const int m = 2;
  const auto basis = polyspaces::q_basis(n, m);
  // counts the monomials of P^m
  REQUIRE(basis.size() == poly::monomials(n, m).size());

  Eigen::VectorXd theta(2);
  theta << 0.7, -0.3;
  const auto g = actions::torus_element(theta, n);
  rng::CounterRng gen(19, 0);
  std::vector<cplx> z(4);
  for (auto& v : z) v = 0.2 * cplx(gen.uniform() - 0.5, gen.uniform() - 0.5);
  for (const auto& [q, wl] : basis) {
    REQUIRE(polyspaces::weight_of(q) == wl);
    const auto moved = polyspaces::act_on_poly(g, q);
    double phase = 0.0;
    for (size_t j = 0; j < wl.torus_weight.size(); ++j)
      phase += wl.torus_weight[j] * theta[static_cast<Eigen::Index>(j)];
    const cplx expect = std::polar(1.0, phase) * poly::evaluate(q, z);
    REQUIRE(std::abs(poly::evaluate(moved, z) - expect) < 1e-12);
  }
}

TEST_CASE("action on polynomials is substitution", "[polyspaces]") {
  const int n = 3;
  rng::CounterRng gen(21, 0);
  const auto g = actions::random_group_element(n, gen);
  const auto p = poly::to_numeric(polyspaces::highest_weight_vector(n, 2, 1));
  std::vector<cplx> z(3);
  for (auto& v : z) v = 0.2 * cplx(gen.uniform() - 0.5, gen.uniform() - 0.5);
  Eigen::VectorXcd zv(3);
  for (int j = 0; j < 3; ++j) zv[j] = z[static_cast<size_t>(j)];
  // (pi(g) p)(z) = p(conj(t) A^{-1} z)
  const Eigen::VectorXcd arg = std::conj(g.t) * (g.A.transpose() * zv);
  std::vector<cplx> argv(arg.data(), arg.data() + 3);
  const auto moved = polyspaces::act_on_poly(g, p);
  REQUIRE(std::abs(poly::evaluate(moved, z) - poly::evaluate(p, argv)) < 1e-12);

  // identity acts trivially
  const auto id = actions::GroupElement::identity(n);
  REQUIRE(std::abs(poly::evaluate(polyspaces::act_on_poly(id, p), z) -
                   poly::evaluate(p, z)) < 1e-14);
}

TEST_CASE("branching multiplicities", "[polyspaces]") {
  REQUIRE(polyspaces::branching_multiplicity(4, 2, 0) == 2);
  REQUIRE(polyspaces::branching_multiplicity(4, 2, 1) == 1);
  REQUIRE(polyspaces::branching_multiplicity(4, 2, 2) == 1);
  REQUIRE(polyspaces::branching_multiplicity(5, 3, 1) == 2);
  for (int m = 0; m <= 6; ++m)
    for (int r = 0; r <= m; ++r) {
      const int oracle = polyspaces::branching_count_oracle(m, r);
      if (oracle > 0)
        REQUIRE(polyspaces::branching_multiplicity(5, m, r) == oracle);
    }
  REQUIRE_THROWS_AS(polyspaces::branching_multiplicity(3, 2, 0), tlab::Error);
}
