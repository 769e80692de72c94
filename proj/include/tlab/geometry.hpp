#pragma once

// The Lie ball D^IV_n: defining inequalities, the function Delta, weighted
// Bergman kernels, the Bergman metric and symplectic form, and the
// fourth-derivative coefficients of the associated Jordan pair.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "tlab/errors.hpp"

namespace tlab::geometry {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline cplx z_top_z(const CVec& z) {
  cplx s = 0.0;
  for (Eigen::Index j = 0; j < z.size(); ++j) s += z[j] * z[j];
  return s;
}

// Delta(z) = 1 - 2|z|^2 + |z^T z|^2
inline double delta(const CVec& z) {
  return 1.0 - 2.0 * z.squaredNorm() + std::norm(z_top_z(z));
}

// z in D^IV_n iff |z| < 1 and 2|z|^2 < 1 + |z^T z|^2, both strict.
inline bool in_domain(const CVec& z) {
  return z.squaredNorm() < 1.0 &&
         2.0 * z.squaredNorm() < 1.0 + std::norm(z_top_z(z));
}

struct WeightParam {
  double lambda;

  WeightParam(double lam, int n) : lambda(lam) {
    if (!(lam > n - 1))
      throw Error(ErrorCode::UnsupportedLambda,
                  "weight parameter requires lambda > n-1");
  }
};

// K_lambda(z,w) = (1 - 2 z^T conj(w) + (z^T z) conj(w^T w))^(-lambda),
// principal branch.  The base has positive real part on the domain; a base
// on the closed negative real axis is an internal error, not a user one.
inline cplx bergman_kernel(const CVec& z, const CVec& w, double lambda) {
  cplx ztw = 0.0;  // z^T conj(w), no conjugation on z
  for (Eigen::Index j = 0; j < z.size(); ++j) ztw += z[j] * std::conj(w[j]);
  const cplx base = 1.0 - 2.0 * ztw + z_top_z(z) * std::conj(z_top_z(w));
  if (base.real() <= 0.0 && std::abs(base.imag()) == 0.0)
    throw Error(ErrorCode::BranchFailure,
                "kernel base on the closed negative real axis");
  return std::pow(base, cplx(-lambda, 0.0));
}

// Bergman metric g_jk(z) = [Delta (d_jk - 2 z_j conj(z_k))
//   + 2 (conj(z_j) - z_j conj(z^T z)) (z_k - conj(z_k) (z^T z))] / Delta^2.
inline CMat metric(const CVec& z) {
  const Eigen::Index n = z.size();
  const double d = delta(z);
  const cplx ztz = z_top_z(z);
  CMat g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx aj = std::conj(z[j]) - z[j] * std::conj(ztz);
    for (Eigen::Index k = 0; k < n; ++k) {
      const cplx bk = z[k] - std::conj(z[k]) * ztz;
      cplx e = d * ((j == k ? 1.0 : 0.0) - 2.0 * z[j] * std::conj(z[k]));
      e += 2.0 * aj * bk;
      g(j, k) = e / (d * d);
    }
  }
  return g;
}

// omega_z(u,v) = i sum_jk g_jk (u_j conj(v_k) - v_j conj(u_k)).  Real because
// g is Hermitian; a real tangent vector is encoded as the complex vector u
// with dz_j(u) = u_j and dzbar_k(u) = conj(u_k).
inline double symplectic_form(const CVec& z, const CVec& u, const CVec& v) {
  const CMat g = metric(z);
  cplx s = 0.0;
  for (Eigen::Index j = 0; j < z.size(); ++j)
    for (Eigen::Index k = 0; k < z.size(); ++k)
      s += g(j, k) * (u[j] * std::conj(v[k]) - v[j] * std::conj(u[k]));
  return (cplx(0.0, 1.0) * s).real();
}

// C_jkml = 2 (d_jk d_ml - d_jm d_kl + d_km d_jl), indices 1-based in the
// formulas, 0-based here.
inline double jordan_pair_coeff(int j, int k, int m, int l) {
  auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  return 2.0 * (d(j, k) * d(m, l) - d(j, m) * d(k, l) + d(k, m) * d(j, l));
}

namespace detail {

// log of the weightless kernel on the diagonal, as a function of the 2n real
// coordinates (x_1, y_1, ..., x_n, y_n).
inline double log_kernel_diag(const std::vector<double>& xy, int n) {
  CVec z(n);
  for (int j = 0; j < n; ++j) z[j] = cplx(xy[2 * j], xy[2 * j + 1]);
  return -static_cast<double>(n) * std::log(delta(z));
}

// Composition of central differences along real coordinate axes.  Repeated
// axes fall out automatically as the usual wide stencils.
inline double central_diff(const std::vector<int>& axes, std::vector<double> p,
                           double h, int n, size_t depth = 0) {
  if (depth == axes.size()) return log_kernel_diag(p, n);
  const int ax = axes[depth];
  p[ax] += h;
  const double fp = central_diff(axes, p, h, n, depth + 1);
  p[ax] -= 2.0 * h;
  const double fm = central_diff(axes, p, h, n, depth + 1);
  return (fp - fm) / (2.0 * h);
}

}  // namespace detail

// Numeric estimate of (1/2n) d^4 log K(z,z) / dz_j dzbar_k dz_m dzbar_l at
// z = 0 by central differences in the real coordinates, Richardson
// extrapolated once from steps h and h/2.
inline double jordan_pair_coeff_numeric(int j, int k, int m, int l, int n,
                                        double h = 1e-2) {
  // dz_a   = (d/dx_a - i d/dy_a)/2, dzbar_a = (d/dx_a + i d/dy_a)/2.
  // Expand the product over holomorphic slots {j, m} and antiholomorphic
  // slots {k, l} into 16 real mixed partials.
  struct Slot {
    int var;
    double bar_sign;  // -1 for dz, +1 for dzbar
  };
  const Slot slots[4] = {{j, -1.0}, {k, +1.0}, {m, -1.0}, {l, +1.0}};

  auto eval_at = [&](double step) {
    cplx acc = 0.0;
    for (int mask = 0; mask < 16; ++mask) {
      std::vector<int> axes(4);
      cplx coef = 1.0;
      for (int s = 0; s < 4; ++s) {
        const bool imag_part = (mask >> s) & 1;
        axes[s] = 2 * slots[s].var + (imag_part ? 1 : 0);
        coef *= imag_part ? cplx(0.0, slots[s].bar_sign) * 0.5 : cplx(0.5, 0.0);
      }
      std::vector<double> origin(2 * static_cast<size_t>(n), 0.0);
      acc += coef * detail::central_diff(axes, origin, step, n);
    }
    return acc.real() / (2.0 * n);
  };

  const double coarse = eval_at(h);
  const double fine = eval_at(h / 2.0);
  return (4.0 * fine - coarse) / 3.0;  // O(h^4)
}

// Finite-difference check of the metric: (1/2n) dz_j dzbar_k log K(z,z).
inline CMat metric_fd(const CVec& z, double h = 1e-4) {
  const int n = static_cast<int>(z.size());
  std::vector<double> p(2 * static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    p[2 * a] = z[a].real();
    p[2 * a + 1] = z[a].imag();
  }
  CMat g(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      // dz_j dzbar_k = (1/4)(dx_j dx_k + dy_j dy_k + i dx_j dy_k - i dy_j dx_k)
      const double xx = detail::central_diff({2 * j, 2 * k}, p, h, n);
      const double yy = detail::central_diff({2 * j + 1, 2 * k + 1}, p, h, n);
      const double xy = detail::central_diff({2 * j, 2 * k + 1}, p, h, n);
      const double yx = detail::central_diff({2 * j + 1, 2 * k}, p, h, n);
      g(j, k) = cplx(xx + yy, xy - yx) / 4.0 / (2.0 * n);
    }
  return g;
}

}  // namespace tlab::geometry
