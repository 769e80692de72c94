#pragma once

// Spin-factor Jordan algebra on R^n: product, positive cone, explicit square
// roots, and the complexified algebra with its real-form involution.

#include <cmath>
#include <complex>
#include <vector>

#include "tlab/errors.hpp"

namespace tlab::jordan {

using cplx = std::complex<double>;

// x = x1 * e1 + x', with x' of length n-1 (n >= 3).
struct SpinElement {
  double x1 = 0.0;
  std::vector<double> xprime;

  int dim() const { return static_cast<int>(xprime.size()) + 1; }
};

struct ComplexSpinElement {
  std::vector<cplx> z;

  int dim() const { return static_cast<int>(z.size()); }
};

inline SpinElement unit(int n) {
  return SpinElement{1.0, std::vector<double>(static_cast<size_t>(n - 1), 0.0)};
}

inline double tail_dot(const SpinElement& x, const SpinElement& y) {
  double s = 0.0;
  for (size_t j = 0; j < x.xprime.size(); ++j) s += x.xprime[j] * y.xprime[j];
  return s;
}

inline void check_same_dim(const SpinElement& x, const SpinElement& y) {
  if (x.xprime.size() != y.xprime.size())
    throw Error(ErrorCode::DimensionMismatch,
                "spin elements have different dimensions");
}

// x o y = (x1 y1 + x'.y') e1 + (x1 y' + y1 x')
inline SpinElement jordan_product(const SpinElement& x, const SpinElement& y) {
  check_same_dim(x, y);
  SpinElement r;
  r.x1 = x.x1 * y.x1 + tail_dot(x, y);
  r.xprime.resize(x.xprime.size());
  for (size_t j = 0; j < x.xprime.size(); ++j)
    r.xprime[j] = x.x1 * y.xprime[j] + y.x1 * x.xprime[j];
  return r;
}

inline SpinElement sub(const SpinElement& x, const SpinElement& y) {
  check_same_dim(x, y);
  SpinElement r;
  r.x1 = x.x1 - y.x1;
  r.xprime.resize(x.xprime.size());
  for (size_t j = 0; j < x.xprime.size(); ++j)
    r.xprime[j] = x.xprime[j] - y.xprime[j];
  return r;
}

// Open cone of positive elements: x1 > 0 and x1^2 - x'.x' > 0, both strict.
inline bool in_cone(const SpinElement& x) {
  return x.x1 > 0.0 && x.x1 * x.x1 - tail_dot(x, x) > 0.0;
}

// Order interval 0 < x < e1 (both memberships strict interior).
inline bool in_order_interval(const SpinElement& x) {
  return in_cone(x) && in_cone(sub(unit(x.dim()), x));
}

// Unique square root in the cone.  Conditioning degrades as x1^2 approaches
// x'.x'; callers integrate over the open interval and never hit the boundary.
inline SpinElement jordan_sqrt(const SpinElement& x) {
  const double disc = x.x1 * x.x1 - tail_dot(x, x);
  if (!(x.x1 > 0.0 && disc > 0.0))
    throw Error(ErrorCode::ConeViolation, "jordan_sqrt: argument not in the open cone");
  const double base = x.x1 + std::sqrt(disc);
  SpinElement y;
  y.x1 = std::sqrt(base / 2.0);
  const double denom = std::sqrt(2.0 * base);
  y.xprime.resize(x.xprime.size());
  for (size_t j = 0; j < x.xprime.size(); ++j) y.xprime[j] = x.xprime[j] / denom;
  return y;
}

// Real form embedding E(x) = x1 e1 + i x'.
inline ComplexSpinElement embed_real_form(const SpinElement& x) {
  ComplexSpinElement r;
  r.z.resize(static_cast<size_t>(x.dim()));
  r.z[0] = cplx(x.x1, 0.0);
  for (size_t j = 0; j < x.xprime.size(); ++j) r.z[j + 1] = cplx(0.0, x.xprime[j]);
  return r;
}

// z o w = (z1 w1 - z'.w') e1 + (z1 w' + w1 z'); note the sign flip on the
// tail product relative to the real algebra.
inline ComplexSpinElement complex_jordan_product(const ComplexSpinElement& z,
                                                 const ComplexSpinElement& w) {
  if (z.z.size() != w.z.size())
    throw Error(ErrorCode::DimensionMismatch,
                "complex spin elements have different dimensions");
  ComplexSpinElement r;
  r.z.resize(z.z.size());
  cplx head = z.z[0] * w.z[0];
  for (size_t j = 1; j < z.z.size(); ++j) head -= z.z[j] * w.z[j];
  r.z[0] = head;
  for (size_t j = 1; j < z.z.size(); ++j)
    r.z[j] = z.z[0] * w.z[j] + w.z[0] * z.z[j];
  return r;
}

// Conjugation with respect to the real form E(R^n): z* = conj(z1) e1 - conj(z').
inline ComplexSpinElement involution(const ComplexSpinElement& z) {
  ComplexSpinElement r;
  r.z.resize(z.z.size());
  r.z[0] = std::conj(z.z[0]);
  for (size_t j = 1; j < z.z.size(); ++j) r.z[j] = -std::conj(z.z[j]);
  return r;
}

}  // namespace tlab::jordan
