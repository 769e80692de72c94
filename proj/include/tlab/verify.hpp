#pragma once

// Self-check suites.  Each check returns pass/fail plus the measured worst
// case, so failures report how far off the computation was.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "tlab/actions.hpp"
#include "tlab/bergman.hpp"
#include "tlab/geometry.hpp"
#include "tlab/jordan.hpp"
#include "tlab/polyspaces.hpp"
#include "tlab/rng.hpp"
#include "tlab/spectral.hpp"
#include "tlab/symbols.hpp"

namespace tlab::verify {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  // worst measured value over its threshold; < 1 means pass, so a scaled
  // tolerance can re-judge the same measurements
  double ratio = 0.0;
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// random interior point, kept away from the boundary by the given margin
inline CVec random_domain_point(int n, rng::CounterRng& gen, double margin = 0.0) {
  for (;;) {
    CVec z(n);
    double norm2 = 0.0;
    for (int j = 0; j < 2 * n; j += 2) {
      const double a = gen.normal(), b = gen.normal();
      z[j / 2] = cplx(a, b);
      norm2 += a * a + b * b;
    }
    const double u = gen.uniform();
    z *= std::pow(u, 1.0 / (2.0 * n)) / std::sqrt(std::max(norm2, 1e-300));
    const double zn2 = z.squaredNorm();
    const double w = std::norm(geometry::z_top_z(z));
    if (zn2 < 1.0 - margin && 2.0 * zn2 < (1.0 - margin) * (1.0 + w)) return z;
  }
}

inline jordan::SpinElement random_order_interval(int n, rng::CounterRng& gen) {
  for (;;) {
    jordan::SpinElement x;
    x.x1 = gen.uniform();
    const double radius = std::min(x.x1, 1.0 - x.x1);
    x.xprime.resize(static_cast<size_t>(n - 1));
    double norm2 = 0.0;
    for (auto& v : x.xprime) {
      v = gen.normal();
      norm2 += v * v;
    }
    const double u = gen.uniform();
    const double scale = radius * std::pow(u, 1.0 / (n - 1)) /
                         std::sqrt(std::max(norm2, 1e-300));
    for (auto& v : x.xprime) v *= scale;
    if (jordan::in_order_interval(x)) return x;
  }
}

inline CVec to_cvec(const jordan::ComplexSpinElement& e) {
  CVec z(e.dim());
  for (int j = 0; j < e.dim(); ++j) z[j] = e.z[static_cast<size_t>(j)];
  return z;
}

}  // namespace detail

// sqrt(x) o sqrt(x) = x and sqrt(x) in the cone, over the order interval
inline Check jordan_roundtrip(long long trials = 10000) {
  double worst = 0.0;
  bool cone_ok = true;
  for (int n : {3, 5, 8}) {
    rng::CounterRng gen(11, static_cast<std::uint64_t>(n));
    for (long long t = 0; t < trials; ++t) {
      const auto x = detail::random_order_interval(n, gen);
      const auto y = jordan::jordan_sqrt(x);
      cone_ok = cone_ok && jordan::in_cone(y);
      const auto back = jordan::jordan_product(y, y);
      worst = std::max(worst, std::abs(back.x1 - x.x1));
      for (size_t j = 0; j < x.xprime.size(); ++j)
        worst = std::max(worst, std::abs(back.xprime[j] - x.xprime[j]));
    }
  }
  return {"jordan square-root round trip", worst < 1e-12 && cone_ok,
          "max deviation " + detail::fmt(worst) + " (threshold 1e-12)",
          cone_ok ? worst / 1e-12 : std::numeric_limits<double>::infinity()};
}

// d mu_j(u) = omega(X_j, u) by central differences
inline Check hamiltonian_identity(int points = 100, int dirs = 4, double h = 1e-5) {
  double worst_ratio = 0.0;
  for (int n : {3, 4, 5}) {
    rng::CounterRng gen(22, static_cast<std::uint64_t>(n));
    const int ell = actions::torus_rank(n);
    for (int p = 0; p < points; ++p) {
      // the moment map blows up like 1/Delta at the boundary, so the
      // central-difference truncation error (~ h^2 / Delta^4) only meets an
      // absolute 1e-6 budget on points kept a fixed distance inside
      const CVec z = detail::random_domain_point(n, gen, 0.05);
      for (int j = 1; j <= ell + 1; ++j)
        for (int d = 0; d < dirs; ++d) {
          CVec u(n);
          for (int k = 0; k < n; ++k) u[k] = cplx(gen.normal(), gen.normal());
          u /= std::sqrt(u.squaredNorm());
          const double omega =
              geometry::symplectic_form(z, actions::infinitesimal_field(j, z), u);
          const double res = actions::hamiltonian_residual(j, z, u, h);
          worst_ratio = std::max(worst_ratio, res / (1e-6 * (1.0 + std::abs(omega))));
        }
    }
  }
  return {"Hamiltonian identity", worst_ratio < 1.0,
          "worst residual at " + detail::fmt(worst_ratio) + "x threshold",
          worst_ratio};
}

inline Check moment_invariance(long long trials = 10000) {
  double worst = 0.0;
  const int n = 4;
  rng::CounterRng gen(33, 0);
  for (long long t = 0; t < trials; ++t) {
    // invariance holds exactly, but the value itself grows like 1/Delta, so
    // an absolute 1e-12 comparison needs points away from the boundary
    const CVec z = detail::random_domain_point(n, gen, 0.05);
    const auto g = actions::random_group_element(n, gen);
    worst = std::max(worst, std::abs(actions::moment_map_so2(actions::act(g, z)) -
                                     actions::moment_map_so2(z)));
  }
  return {"moment map invariance", worst < 1e-12,
          "max deviation " + detail::fmt(worst) + " (threshold 1e-12)", worst / 1e-12};
}

inline Check harmonic_exactness(int nmax = 5, int mmax = 6, int reps = 2) {
  using polyspaces::BlockLabel;
  for (int n = 3; n <= nmax; ++n) {
    for (int m = 0; m <= mmax; ++m) {
      // dimension identity
      long long sum = 0;
      for (int k1 = m; k1 >= 0; k1 -= 2) sum += polyspaces::harmonic_dim(n, k1);
      long long dim = 1;
      for (int i = 1; i <= n - 1; ++i) dim = dim * (m + i) / i;
      if (sum != dim)
        return {"harmonic decomposition", false,
                "dimension identity fails at n=" + std::to_string(n) +
                    " m=" + std::to_string(m),
                std::numeric_limits<double>::infinity()};

      rng::CounterRng gen(44, static_cast<std::uint64_t>(100 * n + m));
      for (int rep = 0; rep < reps; ++rep) {
        poly::ExactPoly p(n);
        for (const auto& a : poly::monomials(n, m)) {
          const long re = static_cast<long>(gen.next_u64() % 7) - 3;
          const long im = static_cast<long>(gen.next_u64() % 7) - 3;
          p.add_term(a, exact::GaussianRational(mpq_class(re), mpq_class(im)));
        }
        if (p.is_zero()) continue;
        const auto parts = polyspaces::decompose(p);
        poly::ExactPoly rebuilt(n);
        const auto ztz = poly::z_top_z_poly(n);
        for (const auto& [label, h] : parts) {
          if (!polyspaces::holomorphic_laplacian(h).is_zero())
            return {"harmonic decomposition", false,
                    "component not exactly harmonic at n=" + std::to_string(n) +
                        " m=" + std::to_string(m),
                    std::numeric_limits<double>::infinity()};
          rebuilt += h * ztz.pow(label.k2);
        }
        if (!(rebuilt == p))
          return {"harmonic decomposition", false,
                  "reconstruction differs at n=" + std::to_string(n) +
                      " m=" + std::to_string(m),
                  std::numeric_limits<double>::infinity()};
      }
    }
  }
  return {"harmonic decomposition", true, "exact for n<=5, m<=6", 0.0};
}

inline Check branching_consistency() {
  using polyspaces::branching_count_oracle;
  using polyspaces::branching_multiplicity;
  using polyspaces::harmonic_dim;
  for (int n : {4, 5, 6})
    for (int m = 0; m <= 6; ++m) {
      long long total = 0;
      for (int r = 0; r <= m; ++r) {
        const int oracle = branching_count_oracle(m, r);
        const int mult = branching_multiplicity(n, m, r);
        if (oracle > 0 && mult != oracle)
          return {"branching multiplicities", false,
                  "formula and counting oracle differ at m=" + std::to_string(m) +
                      " r=" + std::to_string(r),
                  std::numeric_limits<double>::infinity()};
        if (oracle > 0) total += static_cast<long long>(oracle) * harmonic_dim(n - 1, r);
      }
      long long dim = 1;
      for (int i = 1; i <= n - 1; ++i) dim = dim * (m + i) / i;
      if (total != dim)
        return {"branching multiplicities", false,
                "dimension sum fails at n=" + std::to_string(n) +
                    " m=" + std::to_string(m),
                std::numeric_limits<double>::infinity()};
    }
  return {"branching multiplicities", true, "n in {4,5,6}, m <= 6", 0.0};
}

namespace detail {

inline std::vector<std::pair<int, int>> k_grid() {
  std::vector<std::pair<int, int>> ks;
  for (int k1 = 0; k1 <= 2; ++k1)
    for (int k2 = 0; k2 <= 2; ++k2) ks.emplace_back(k1, k2);
  return ks;
}

}  // namespace detail

// quadrature eigenvalue vs direct Bergman-space Rayleigh quotient
inline Check two_oracle_agreement(long long samples = 1000000) {
  double worst_sigma = 0.0;
  double worst_rel_se = 0.0;
  const auto f1 = symbols::parse_symbol("moment: exp(s)");
  const auto f2 = symbols::parse_symbol("moment: 1/(1 - s)");
  for (int n : {3, 4})
    for (double lambda : {n + 1.0, n + 2.5}) {
      const bergman::MCParams params(n, lambda, samples, 7);
      const bergman::SampleSet set = bergman::make_samples(params);
      for (const auto* f : {&f1, &f2})
        for (auto [k1, k2] : detail::k_grid()) {
          const double q = spectral::eigenvalue_quad(*f, n, lambda, k1, k2);
          const auto r = bergman::rayleigh_eigenvalue_on(*f, k1, k2, params, set);
          worst_sigma = std::max(worst_sigma, std::abs(q - r.value) / r.stderr_);
          worst_rel_se = std::max(worst_rel_se, r.stderr_ / std::abs(r.value));
        }
    }
  return {"two-oracle eigenvalue agreement", worst_sigma < 3.0,
          "worst deviation " + detail::fmt(worst_sigma) + " sigma, max rel stderr " +
              detail::fmt(worst_rel_se),
          worst_sigma / 3.0};
}

inline Check quadrature_anchors() {
  double worst_unit = 0.0, worst_lin = 0.0, worst_stab = 0.0;
  const auto unit = symbols::parse_symbol("moment: 1");
  const auto f = symbols::parse_symbol("moment: exp(s)");
  const auto g = symbols::parse_symbol("moment: 1/(1 - s)");
  const auto combo = symbols::parse_symbol("moment: 2*exp(s) + 3/(1 - s)");
  spectral::QuadSpec fine{128, 128, 128};
  for (int n : {3, 4})
    for (double lambda : {n + 1.0, n + 2.5})
      for (auto [k1, k2] : detail::k_grid()) {
        worst_unit = std::max(
            worst_unit,
            std::abs(spectral::eigenvalue_quad(unit, n, lambda, k1, k2) - 1.0));
        const double cf = spectral::eigenvalue_quad(f, n, lambda, k1, k2);
        const double cg = spectral::eigenvalue_quad(g, n, lambda, k1, k2);
        const double cc = spectral::eigenvalue_quad(combo, n, lambda, k1, k2);
        worst_lin = std::max(worst_lin, std::abs(cc - (2.0 * cf + 3.0 * cg)));
        const double cf2 = spectral::eigenvalue_quad(f, n, lambda, k1, k2, fine);
        worst_stab = std::max(worst_stab, std::abs(cf2 - cf) / std::abs(cf2));
      }
  const bool pass = worst_unit < 1e-12 && worst_lin < 1e-12 && worst_stab < 1e-8;
  return {"quadrature anchors", pass,
          "unit " + detail::fmt(worst_unit) + ", linearity " + detail::fmt(worst_lin) +
              ", order doubling " + detail::fmt(worst_stab),
          std::max({worst_unit / 1e-12, worst_lin / 1e-12, worst_stab / 1e-8})};
}

// 3D reduction vs direct n-dimensional cone Monte Carlo
inline Check cone_reduction(long long samples = 1000000) {
  double worst_sigma = 0.0;
  const auto f1 = symbols::parse_symbol("moment: exp(s)");
  const auto f2 = symbols::parse_symbol("moment: 1/(1 - s)");
  for (int n : {3, 4})
    for (double lambda : {n + 1.0, n + 2.5})
      for (const auto* f : {&f1, &f2})
        for (auto [k1, k2] : detail::k_grid()) {
          const double q = spectral::eigenvalue_quad(*f, n, lambda, k1, k2);
          const auto mc =
              spectral::eigenvalue_mc_cone(*f, n, lambda, k1, k2, samples, 13);
          worst_sigma = std::max(worst_sigma, std::abs(q - mc.value) / mc.stderr_);
        }
  return {"cone reduction validation", worst_sigma < 3.0,
          "worst deviation " + detail::fmt(worst_sigma) + " sigma", worst_sigma / 3.0};
}

inline Check diagonality_commutativity(long long samples = 1000000) {
  const bergman::MCParams params(3, 4.0, samples, 17);
  const bergman::SampleSet set = bergman::make_samples(params);
  const auto blocks = bergman::basis_blocks(3, 4);
  const auto fa = symbols::parse_symbol("moment: exp(s)");
  const auto fb = symbols::parse_symbol("moment: 1/(1 - s)");
  const auto ta = bergman::detail::truncation_impl(
      bergman::detail::symbol_fn(fa), "moment: exp(s)", blocks, set, params);
  const auto tb = bergman::detail::truncation_impl(
      bergman::detail::symbol_fn(fb), "moment: 1/(1 - s)", blocks, set, params);

  // off-block entries of T_{exp(s)} below 5 stderr
  double worst_off = 0.0;
  Eigen::Index ri = 0;
  for (const auto& bi : ta.blocks) {
    const Eigen::Index szi = static_cast<Eigen::Index>(bi.polynomials.size());
    Eigen::Index cj = 0;
    for (const auto& bj : ta.blocks) {
      const Eigen::Index szj = static_cast<Eigen::Index>(bj.polynomials.size());
      if (!(bi.label == bj.label))
        for (Eigen::Index i = 0; i < szi; ++i)
          for (Eigen::Index j = 0; j < szj; ++j)
            worst_off = std::max(worst_off, std::abs(ta.entries(ri + i, cj + j)) /
                                                ta.err(ri + i, cj + j));
      cj += szj;
    }
    ri += szi;
  }
  const auto comm = bergman::commutator_of(ta, tb);
  const bool pass = worst_off < 5.0 && comm.value < 5.0 * comm.noise;
  return {"diagonality and moment-symbol commutativity", pass,
          "max off-block " + detail::fmt(worst_off) + " stderr, commutator " +
              detail::fmt(comm.value) + " vs noise " + detail::fmt(comm.noise),
          std::max(worst_off / 5.0, comm.value / (5.0 * comm.noise))};
}

// the frozen non-commuting pair: |z1|^2 and Re(z1 conj(z2))
inline std::pair<symbols::SymbolSpec, symbols::SymbolSpec> witness_pair(int n) {
  std::vector<int> e1(static_cast<size_t>(n), 0), e2(static_cast<size_t>(n), 0);
  e1[0] = 1;
  e2[1] = 1;
  symbols::SymbolSpec a, b;
  a.kind = symbols::SymbolKind::Phase;
  a.phase.push_back({e1, e1, cplx(1.0, 0.0)});
  b.kind = symbols::SymbolKind::Phase;
  b.phase.push_back({e1, e2, cplx(0.5, 0.0)});
  b.phase.push_back({e2, e1, cplx(0.5, 0.0)});
  return {a, b};
}

inline Check noncommutativity_witness(long long samples = 1000000) {
  const bergman::MCParams params(3, 4.0, samples, 19);
  const auto [a, b] = witness_pair(3);
  const auto comm = bergman::commutator_norm(a, b, 4, params);
  return {"non-commutativity witness", comm.value > 10.0 * comm.noise,
          "commutator " + detail::fmt(comm.value) + " vs 10x noise " +
              detail::fmt(10.0 * comm.noise),
          10.0 * comm.noise / comm.value};
}

inline Check jordan_pair_coeffs() {
  double worst = 0.0;
  const int n = 3;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l) {
          const double numeric = geometry::jordan_pair_coeff_numeric(j, k, m, l, n);
          const double closed = geometry::jordan_pair_coeff(j, k, m, l);
          worst = std::max(worst, std::abs(numeric - closed));
        }
  return {"Jordan pair coefficients", worst < 1e-4,
          "max deviation " + detail::fmt(worst) + " (threshold 1e-4)", worst / 1e-4};
}

inline Check isotypic_orthogonality(long long samples = 200000) {
  const int n = 3;
  const bergman::MCParams params(n, 4.0, samples, 23);
  const bergman::SampleSet set = bergman::make_samples(params);
  std::vector<std::pair<int, int>> blocks;
  for (int deg = 0; deg <= 4; ++deg)
    for (int k2 = 0; 2 * k2 <= deg; ++k2) blocks.emplace_back(deg - 2 * k2, k2);
  double worst = 0.0;
  for (size_t i = 0; i < blocks.size(); ++i)
    for (size_t j = i + 1; j < blocks.size(); ++j) {
      const auto hi = poly::to_numeric(
          polyspaces::highest_weight_vector(n, blocks[i].first, blocks[i].second));
      const auto hj = poly::to_numeric(
          polyspaces::highest_weight_vector(n, blocks[j].first, blocks[j].second));
      const auto ip = bergman::weighted_mean_on(set, [&](const CVec& z) {
        std::vector<cplx> pt(z.data(), z.data() + z.size());
        return poly::evaluate(hi, pt) * std::conj(poly::evaluate(hj, pt));
      });
      if (ip.stderr_ > 0.0)
        worst = std::max(worst, std::abs(ip.value) / ip.stderr_);
    }
  return {"isotypic orthogonality", worst < 5.0,
          "max cross inner product " + detail::fmt(worst) + " stderr", worst / 5.0};
}

struct SuiteScale {
  long long small_trials = 10000;
  int points = 100;
  long long mc_samples = 1000000;
  long long light_samples = 200000;
  // scales every pass threshold; 0 demands exact measurements and fails any
  // check with a nonzero worst case
  double tolerance_scale = 1.0;
};

inline std::vector<Check> run_suite(const std::string& suite, const SuiteScale& s) {
  std::vector<Check> out;
  const bool all = suite == "all";
  if (all || suite == "jordan") {
    out.push_back(jordan_roundtrip(s.small_trials));
    out.push_back(jordan_pair_coeffs());
  }
  if (all || suite == "geometry") out.push_back(jordan_pair_coeffs());
  if (all || suite == "moment") {
    out.push_back(hamiltonian_identity(s.points));
    out.push_back(moment_invariance(s.small_trials));
  }
  if (all || suite == "harmonic") out.push_back(harmonic_exactness());
  if (all || suite == "branching") out.push_back(branching_consistency());
  if (all || suite == "gram") {
    out.push_back(isotypic_orthogonality(s.light_samples));
    out.push_back(diagonality_commutativity(s.mc_samples));
    out.push_back(noncommutativity_witness(s.mc_samples));
  }
  if (all || suite == "spectral") {
    out.push_back(quadrature_anchors());
    out.push_back(two_oracle_agreement(s.mc_samples));
    out.push_back(cone_reduction(s.mc_samples));
  }
  if (out.empty())
    throw Error(ErrorCode::ConfigError, "unknown verify suite '" + suite + "'");
  if (s.tolerance_scale != 1.0)
    for (auto& c : out) c.pass = c.ratio < s.tolerance_scale;
  return out;
}

}  // namespace tlab::verify
