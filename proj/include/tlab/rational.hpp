#pragma once

// Gaussian rationals: the exact coefficient field for the harmonic
// decompositions.  Backed by GMP rationals, always in lowest terms.

#include <gmpxx.h>

#include <complex>
#include <string>

namespace tlab::exact {

struct GaussianRational {
  mpq_class re = 0;
  mpq_class im = 0;

  GaussianRational() = default;
  GaussianRational(long r) : re(r) {}
  GaussianRational(mpq_class r) : re(std::move(r)) {}
  GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }

  bool is_zero() const { return re == 0 && im == 0; }

  GaussianRational conj() const { return {re, -im}; }

  GaussianRational operator-() const { return {-re, -im}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) {
    return a += b;
  }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) {
    return a -= b;
  }
  friend GaussianRational operator*(const GaussianRational& a,
                                    const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a,
                                    const GaussianRational& b) {
    const mpq_class n2 = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

inline std::string rational_to_string(const mpq_class& q) {
  return q.get_str();
}

inline mpq_class rational_from_string(const std::string& s) {
  mpq_class q(s);
  q.canonicalize();
  return q;
}

}  // namespace tlab::exact
