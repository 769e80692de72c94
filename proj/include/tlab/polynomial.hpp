#pragma once

// Multivariate polynomials keyed by multi-indices under graded-lex order.
// Structural computations run over exact Gaussian rationals; evaluation and
// group substitution produce floating coefficients.

#include <algorithm>
#include <complex>
#include <map>
#include <vector>

#include "tlab/errors.hpp"
#include "tlab/rational.hpp"

namespace tlab::poly {

using cplx = std::complex<double>;
using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& a) {
  int d = 0;
  for (int e : a) d += e;
  return d;
}

struct GradedLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

inline bool coeff_is_zero(const exact::GaussianRational& c) { return c.is_zero(); }
inline bool coeff_is_zero(const cplx& c) { return c == cplx(0.0, 0.0); }

inline cplx coeff_to_complex(const exact::GaussianRational& c) { return c.to_complex(); }
inline cplx coeff_to_complex(const cplx& c) { return c; }

template <class C>
struct Poly {
  int n = 0;
  std::map<MultiIndex, C, GradedLex> terms;

  explicit Poly(int vars = 0) : n(vars) {}

  static Poly constant(int vars, C value) {
    Poly p(vars);
    p.add_term(MultiIndex(static_cast<size_t>(vars), 0), value);
    return p;
  }

  static Poly variable(int vars, int j) {
    Poly p(vars);
    MultiIndex a(static_cast<size_t>(vars), 0);
    a[static_cast<size_t>(j)] = 1;
    p.add_term(a, C(1));
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const MultiIndex& a, const C& c) {
    auto it = terms.find(a);
    if (it == terms.end()) {
      if (!coeff_is_zero(c)) terms.emplace(a, c);
      return;
    }
    it->second += c;
    if (coeff_is_zero(it->second)) terms.erase(it);
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [a, c] : o.terms) add_term(a, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [a, c] : o.terms) add_term(a, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.n);
    for (const auto& [ai, ac] : a.terms)
      for (const auto& [bi, bc] : b.terms) {
        MultiIndex m(ai.size());
        for (size_t k = 0; k < ai.size(); ++k) m[k] = ai[k] + bi[k];
        r.add_term(m, ac * bc);
      }
    return r;
  }

  Poly scaled(const C& s) const {
    Poly r(n);
    for (const auto& [a, c] : terms) r.add_term(a, c * s);
    return r;
  }

  Poly pow(int e) const {
    Poly r = constant(n, C(1));
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
  }

  // d/dz_j
  Poly derivative(int j) const {
    Poly r(n);
    for (const auto& [a, c] : terms) {
      const int e = a[static_cast<size_t>(j)];
      if (e == 0) continue;
      MultiIndex m = a;
      m[static_cast<size_t>(j)] -= 1;
      r.add_term(m, c * C(e));
    }
    return r;
  }

  // -1 for the zero polynomial, -2 if inhomogeneous.
  int homogeneous_degree() const {
    if (terms.empty()) return -1;
    const int d = total_degree(terms.begin()->first);
    for (const auto& [a, c] : terms)
      if (total_degree(a) != d) return -2;
    return d;
  }

  bool operator==(const Poly& o) const { return n == o.n && terms == o.terms; }
};

using ExactPoly = Poly<exact::GaussianRational>;
using NumPoly = Poly<cplx>;

template <class C>
cplx evaluate(const Poly<C>& p, const std::vector<cplx>& z) {
  if (static_cast<int>(z.size()) != p.n)
    throw Error(ErrorCode::DimensionMismatch, "evaluation point has wrong dimension");
  // power table per variable up to the max exponent
  std::vector<std::vector<cplx>> pw(z.size());
  for (size_t j = 0; j < z.size(); ++j) pw[j] = {cplx(1.0, 0.0)};
  cplx acc = 0.0;
  for (const auto& [a, c] : p.terms) {
    cplx t = coeff_to_complex(c);
    for (size_t j = 0; j < a.size(); ++j) {
      auto& col = pw[j];
      while (static_cast<int>(col.size()) <= a[j]) col.push_back(col.back() * z[j]);
      t *= col[static_cast<size_t>(a[j])];
    }
    acc += t;
  }
  return acc;
}

// p(images[0], ..., images[n-1]) for arbitrary polynomial images of the
// variables; used for linear changes of coordinates.
template <class C>
Poly<C> substitute(const Poly<C>& p, const std::vector<Poly<C>>& images) {
  if (images.size() != static_cast<size_t>(p.n))
    throw Error(ErrorCode::DimensionMismatch, "substitution image count mismatch");
  const int out_n = images.empty() ? 0 : images.front().n;
  Poly<C> r(out_n);
  std::vector<std::vector<Poly<C>>> pw(images.size());
  for (size_t j = 0; j < images.size(); ++j)
    pw[j] = {Poly<C>::constant(out_n, C(1))};
  for (const auto& [a, c] : p.terms) {
    Poly<C> t = Poly<C>::constant(out_n, c);
    for (size_t j = 0; j < a.size(); ++j) {
      auto& col = pw[j];
      while (static_cast<int>(col.size()) <= a[j]) col.push_back(col.back() * images[j]);
      t = t * col[static_cast<size_t>(a[j])];
    }
    r += t;
  }
  return r;
}

inline NumPoly to_numeric(const ExactPoly& p) {
  NumPoly r(p.n);
  for (const auto& [a, c] : p.terms) r.add_term(a, c.to_complex());
  return r;
}

// z^T z = z_1^2 + ... + z_n^2
inline ExactPoly z_top_z_poly(int n) {
  ExactPoly r(n);
  for (int j = 0; j < n; ++j) {
    MultiIndex a(static_cast<size_t>(n), 0);
    a[static_cast<size_t>(j)] = 2;
    r.add_term(a, exact::GaussianRational(1));
  }
  return r;
}

// Monomial basis of P^m(C^n) in graded-lex order.
inline std::vector<MultiIndex> monomials(int n, int m) {
  std::vector<MultiIndex> out;
  MultiIndex cur(static_cast<size_t>(n), 0);
  // enumerate recursively, then sort into the canonical order
  auto rec = [&](auto&& self, int var, int rem) -> void {
    if (var == n - 1) {
      cur[static_cast<size_t>(var)] = rem;
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= rem; ++e) {
      cur[static_cast<size_t>(var)] = e;
      self(self, var + 1, rem - e);
    }
    cur[static_cast<size_t>(var)] = 0;
  };
  rec(rec, 0, m);
  std::sort(out.begin(), out.end(), GradedLex());
  return out;
}

}  // namespace tlab::poly
