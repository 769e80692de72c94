#pragma once

// The linear SO(n) x SO(2) action on D^IV_n, its maximal torus, the
// infinitesimal vector fields of the canonical Lie algebra basis, and the
// moment maps, with a finite-difference check of the Hamiltonian identity.

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "tlab/errors.hpp"
#include "tlab/geometry.hpp"
#include "tlab/rng.hpp"

namespace tlab::actions {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

struct GroupElement {
  RMat A;  // in SO(n)
  cplx t;  // unimodular scalar

  GroupElement(RMat a, cplx scalar) : A(std::move(a)), t(scalar) {
    const double ortho = (A.transpose() * A - RMat::Identity(A.rows(), A.cols()))
                             .cwiseAbs()
                             .maxCoeff();
    if (ortho > 1e-12 || std::abs(A.determinant() - 1.0) > 1e-12)
      throw Error(ErrorCode::ConfigError, "matrix part is not in SO(n)");
    if (std::abs(std::abs(t) - 1.0) > 1e-14)
      throw Error(ErrorCode::ConfigError, "scalar part is not unimodular");
  }

  static GroupElement identity(int n) {
    return GroupElement(RMat::Identity(n, n), cplx(1.0, 0.0));
  }

  GroupElement compose(const GroupElement& other) const {
    return GroupElement(A * other.A, t * other.t);
  }
};

inline int torus_rank(int n) { return n / 2; }

// (A,t) . z = t A z
inline CVec act(const GroupElement& g, const CVec& z) {
  return g.t * (g.A * z);
}

// R(theta) = [[cos, sin], [-sin, cos]]
inline Eigen::Matrix2d rotation2(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return r;
}

// Block-diagonal torus element A(theta), trailing diagonal 1 for n odd.
inline GroupElement torus_element(const RVec& theta, int n) {
  if (theta.size() != torus_rank(n))
    throw Error(ErrorCode::DimensionMismatch, "torus angle vector has wrong length");
  RMat a = RMat::Identity(n, n);
  for (int j = 0; j < torus_rank(n); ++j)
    a.block<2, 2>(2 * j, 2 * j) = rotation2(theta[j]);
  return GroupElement(std::move(a), cplx(1.0, 0.0));
}

// Holomorphic component of the vector field of the j-th canonical basis
// element of t_0 x so(2), 1-based j in 1..l+1.
inline CVec infinitesimal_field(int j, const CVec& z) {
  const int n = static_cast<int>(z.size());
  const int ell = torus_rank(n);
  if (j < 1 || j > ell + 1)
    throw Error(ErrorCode::ConfigError, "Lie basis index out of range");
  if (j == ell + 1) return cplx(0.0, 1.0) * z;
  CVec f = CVec::Zero(n);
  f[2 * j - 2] = z[2 * j - 1];
  f[2 * j - 1] = -z[2 * j - 2];
  return f;
}

// mu_j(z) = i (zbar_{2j-1} z_{2j} - z_{2j-1} zbar_{2j}) / Delta(z), j <= l;
// mu_{l+1}(z) = (|z^T z|^2 - |z|^2) / Delta(z).
inline RVec moment_map_torus(const CVec& z) {
  const int n = static_cast<int>(z.size());
  const int ell = torus_rank(n);
  const double d = geometry::delta(z);
  RVec mu(ell + 1);
  for (int j = 0; j < ell; ++j) {
    const cplx v = std::conj(z[2 * j]) * z[2 * j + 1] - z[2 * j] * std::conj(z[2 * j + 1]);
    mu[j] = (cplx(0.0, 1.0) * v).real() / d;
  }
  mu[ell] = (std::norm(geometry::z_top_z(z)) - z.squaredNorm()) / d;
  return mu;
}

inline double moment_map_so2(const CVec& z) {
  return (std::norm(geometry::z_top_z(z)) - z.squaredNorm()) / geometry::delta(z);
}

// |d mu_j(u) - omega(X_j^sharp, u)| with the differential taken by central
// differences of step h along the real tangent vector u.
inline double hamiltonian_residual(int j, const CVec& z, const CVec& u, double h) {
  const CVec zp = z + h * u;
  const CVec zm = z - h * u;
  if (!geometry::in_domain(zp) || !geometry::in_domain(zm))
    throw Error(ErrorCode::StepExitsDomain,
                "finite-difference step leaves the domain");
  const int idx = j - 1;
  const double fp = moment_map_torus(zp)[idx];
  const double fm = moment_map_torus(zm)[idx];
  const double diff = (fp - fm) / (2.0 * h);
  const double omega = geometry::symplectic_form(z, infinitesimal_field(j, z), u);
  return std::abs(diff - omega);
}

// Random SO(n) element: Gram-Schmidt on a Gaussian matrix, determinant fixed.
inline RMat random_rotation(int n, rng::CounterRng& gen) {
  RMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = gen.normal();
  Eigen::HouseholderQR<RMat> qr(m);
  RMat q = qr.householderQ();
  RMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

inline GroupElement random_group_element(int n, rng::CounterRng& gen) {
  const double phase = 2.0 * M_PI * gen.uniform();
  return GroupElement(random_rotation(n, gen), std::polar(1.0, phase));
}

}  // namespace tlab::actions
