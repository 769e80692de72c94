#pragma once

// Exact homogeneous polynomial algebra: the holomorphic Laplacian, harmonic
// spaces H^m, the isotypic blocks H^{k1} (z^T z)^{k2}, torus weight bases,
// branching multiplicities, and the group action on polynomials.

#include <map>
#include <optional>
#include <vector>

#include "tlab/actions.hpp"
#include "tlab/errors.hpp"
#include "tlab/polynomial.hpp"

namespace tlab::polyspaces {

using exact::GaussianRational;
using poly::ExactPoly;
using poly::MultiIndex;
using poly::NumPoly;

struct BlockLabel {
  int k1 = 0;
  int k2 = 0;
  friend bool operator<(const BlockLabel& a, const BlockLabel& b) {
    return a.k1 != b.k1 ? a.k1 < b.k1 : a.k2 < b.k2;
  }
  friend bool operator==(const BlockLabel& a, const BlockLabel& b) {
    return a.k1 == b.k1 && a.k2 == b.k2;
  }
};

struct WeightLabel {
  std::vector<int> torus_weight;  // beta - alpha, length floor(n/2)
  int so2_weight = 0;             // -(total degree)
  friend bool operator<(const WeightLabel& a, const WeightLabel& b) {
    if (a.so2_weight != b.so2_weight) return a.so2_weight < b.so2_weight;
    return a.torus_weight < b.torus_weight;
  }
  friend bool operator==(const WeightLabel& a, const WeightLabel& b) {
    return a.so2_weight == b.so2_weight && a.torus_weight == b.torus_weight;
  }
};

// sum_j d^2 p / dz_j^2, exact
inline ExactPoly holomorphic_laplacian(const ExactPoly& p) {
  ExactPoly r(p.n);
  for (int j = 0; j < p.n; ++j) r += p.derivative(j).derivative(j);
  return r;
}

namespace detail {

inline long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

using RatMatrix = std::vector<std::vector<mpq_class>>;

// Solve A x = b exactly; A square over Q, b over Q(i).
inline std::vector<GaussianRational> solve_rational(
    RatMatrix a, std::vector<GaussianRational> b) {
  const size_t n = a.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n)
      throw Error(ErrorCode::SolveFailure, "singular system in exact solve");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const mpq_class inv = 1 / a[col][col];
    for (size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] = GaussianRational(b[col].re * inv, b[col].im * inv);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const mpq_class f = a[r][col];
      for (size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= GaussianRational(b[col].re * f, b[col].im * f);
    }
  }
  return b;
}

}  // namespace detail

// dim H^m(C^n) = C(n+m-1, n-1) - C(n+m-3, n-1)
inline long long harmonic_dim(int n, int m) {
  long long d = detail::binom(n + m - 1, n - 1);
  if (m >= 2) d -= detail::binom(n + m - 3, n - 1);
  return d;
}

// Exact reduced-echelon basis of the nullspace of the Laplacian on P^m.
inline std::vector<ExactPoly> harmonic_basis(int n, int m) {
  const auto cols = poly::monomials(n, m);
  if (m < 2) {
    std::vector<ExactPoly> out;
    for (const auto& a : cols) {
      ExactPoly p(n);
      p.add_term(a, GaussianRational(1));
      out.push_back(std::move(p));
    }
    return out;
  }
  const auto rows = poly::monomials(n, m - 2);
  std::map<MultiIndex, size_t, poly::GradedLex> row_of;
  for (size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = i;

  detail::RatMatrix mat(rows.size(), std::vector<mpq_class>(cols.size(), 0));
  for (size_t c = 0; c < cols.size(); ++c) {
    ExactPoly mono(n);
    mono.add_term(cols[c], GaussianRational(1));
    for (const auto& [a, coef] : holomorphic_laplacian(mono).terms)
      mat[row_of.at(a)][c] = coef.re;
  }

  // row reduce
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols.size() && r < rows.size(); ++c) {
    size_t piv = r;
    while (piv < rows.size() && mat[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(mat[piv], mat[r]);
    const mpq_class inv = 1 / mat[r][c];
    for (size_t j = c; j < cols.size(); ++j) mat[r][j] *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || mat[i][c] == 0) continue;
      const mpq_class f = mat[i][c];
      for (size_t j = c; j < cols.size(); ++j) mat[i][j] -= f * mat[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }

  std::vector<bool> is_pivot(cols.size(), false);
  for (size_t c : pivot_col) is_pivot[c] = true;
  std::vector<ExactPoly> basis;
  for (size_t f = 0; f < cols.size(); ++f) {
    if (is_pivot[f]) continue;
    ExactPoly p(n);
    p.add_term(cols[f], GaussianRational(1));
    for (size_t i = 0; i < pivot_col.size(); ++i)
      if (mat[i][f] != 0) p.add_term(cols[pivot_col[i]], GaussianRational(-mat[i][f]));
    basis.push_back(std::move(p));
  }
  return basis;
}

// Exact components of p = sum h_{k1,k2} (z^T z)^{k2}, h_{k1,k2} harmonic of
// degree k1 = m - 2 k2.  Peels one (z^T z) factor at a time: the map
// g -> laplacian((z^T z) g) is invertible on each P^{m-2}.
inline std::map<BlockLabel, ExactPoly> decompose(const ExactPoly& p) {
  const int m = p.homogeneous_degree();
  if (m == -2)
    throw Error(ErrorCode::ConfigError, "decompose requires a homogeneous polynomial");
  std::map<BlockLabel, ExactPoly> out;
  if (m == -1) return out;

  const int n = p.n;
  const ExactPoly ztz = poly::z_top_z_poly(n);
  ExactPoly cur = p;
  int k2 = 0;
  int deg = m;
  while (true) {
    if (deg < 2) {
      if (!cur.is_zero()) out[{deg, k2}] = cur;
      break;
    }
    const ExactPoly lap = holomorphic_laplacian(cur);
    if (lap.is_zero()) {
      out[{deg, k2}] = cur;
      break;
    }
    // solve laplacian((z^T z) g) = laplacian(cur) for g in P^{deg-2}
    const auto basis = poly::monomials(n, deg - 2);
    std::map<MultiIndex, size_t, poly::GradedLex> idx;
    for (size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = i;
    detail::RatMatrix mat(basis.size(), std::vector<mpq_class>(basis.size(), 0));
    for (size_t c = 0; c < basis.size(); ++c) {
      ExactPoly mono(n);
      mono.add_term(basis[c], GaussianRational(1));
      for (const auto& [a, coef] : holomorphic_laplacian(ztz * mono).terms)
        mat[idx.at(a)][c] = coef.re;
    }
    std::vector<GaussianRational> rhs(basis.size());
    for (const auto& [a, coef] : lap.terms) rhs[idx.at(a)] = coef;
    const auto sol = detail::solve_rational(std::move(mat), std::move(rhs));
    ExactPoly g(n);
    for (size_t i = 0; i < basis.size(); ++i) g.add_term(basis[i], sol[i]);
    const ExactPoly h = cur - ztz * g;
    if (!h.is_zero()) out[{deg, k2}] = h;
    cur = g;
    ++k2;
    deg -= 2;
  }
  return out;
}

// (z_1 - i z_2)^{k1} (z^T z)^{k2}
inline ExactPoly highest_weight_vector(int n, int k1, int k2) {
  ExactPoly lin(n);
  {
    MultiIndex a(static_cast<size_t>(n), 0);
    a[0] = 1;
    lin.add_term(a, GaussianRational(1));
    MultiIndex b(static_cast<size_t>(n), 0);
    b[1] = 1;
    lin.add_term(b, -GaussianRational::i());
  }
  return lin.pow(k1) * poly::z_top_z_poly(n).pow(k2);
}

// Monomial basis of P^m in the rotated coordinates, tagged with torus weight
// beta - alpha and SO(2) weight -m.
inline std::vector<std::pair<ExactPoly, WeightLabel>> q_basis(int n, int m) {
  const int ell = n / 2;
  const bool odd = (n % 2) == 1;
  const int nv = 2 * ell + (odd ? 1 : 0);

  std::vector<ExactPoly> factors_minus(ell), factors_plus(ell);
  for (int j = 0; j < ell; ++j) {
    ExactPoly pm(n), pp(n);
    MultiIndex a(static_cast<size_t>(n), 0);
    a[static_cast<size_t>(2 * j)] = 1;
    MultiIndex b(static_cast<size_t>(n), 0);
    b[static_cast<size_t>(2 * j + 1)] = 1;
    pm.add_term(a, GaussianRational(1));
    pm.add_term(b, -GaussianRational::i());
    pp.add_term(a, GaussianRational(1));
    pp.add_term(b, GaussianRational::i());
    factors_minus[static_cast<size_t>(j)] = pm;
    factors_plus[static_cast<size_t>(j)] = pp;
  }

  std::vector<std::pair<ExactPoly, WeightLabel>> out;
  for (const auto& exps : poly::monomials(nv, m)) {
    ExactPoly q = ExactPoly::constant(n, GaussianRational(1));
    std::vector<int> weight(static_cast<size_t>(ell), 0);
    for (int j = 0; j < ell; ++j) {
      const int aj = exps[static_cast<size_t>(j)];
      const int bj = exps[static_cast<size_t>(ell + j)];
      if (aj > 0) q = q * factors_minus[static_cast<size_t>(j)].pow(aj);
      if (bj > 0) q = q * factors_plus[static_cast<size_t>(j)].pow(bj);
      weight[static_cast<size_t>(j)] = bj - aj;
    }
    if (odd) {
      const int g = exps[static_cast<size_t>(2 * ell)];
      if (g > 0) {
        ExactPoly zl(n);
        MultiIndex a(static_cast<size_t>(n), 0);
        a[static_cast<size_t>(n - 1)] = g;
        zl.add_term(a, GaussianRational(1));
        q = q * zl;
      }
    }
    out.emplace_back(std::move(q), WeightLabel{std::move(weight), -m});
  }
  return out;
}

// Weight label of p if it lies in a single weight class of the q basis.
inline WeightLabel weight_of(const ExactPoly& p) {
  const int m = p.homogeneous_degree();
  if (m < 0)
    throw Error(ErrorCode::NotAWeightVector,
                "weight_of requires a nonzero homogeneous polynomial");
  const int n = p.n;
  const int ell = n / 2;
  const bool odd = (n % 2) == 1;
  const int nv = 2 * ell + (odd ? 1 : 0);

  // express p in the rotated coordinates v:
  //   z_{2j-1} = (v_{2j-1} + v_{2j}) / 2,  z_{2j} = i (v_{2j-1} - v_{2j}) / 2
  const GaussianRational half(mpq_class(1, 2));
  const GaussianRational ihalf(mpq_class(0), mpq_class(1, 2));
  std::vector<ExactPoly> images;
  for (int j = 0; j < ell; ++j) {
    const ExactPoly va = ExactPoly::variable(nv, 2 * j);
    const ExactPoly vb = ExactPoly::variable(nv, 2 * j + 1);
    images.push_back((va + vb).scaled(half));
    images.push_back((va - vb).scaled(ihalf));
  }
  if (odd) images.push_back(ExactPoly::variable(nv, nv - 1));
  const ExactPoly pv = poly::substitute(p, images);

  std::optional<std::vector<int>> weight;
  for (const auto& [a, c] : pv.terms) {
    std::vector<int> w(static_cast<size_t>(ell), 0);
    for (int j = 0; j < ell; ++j)
      w[static_cast<size_t>(j)] =
          a[static_cast<size_t>(2 * j + 1)] - a[static_cast<size_t>(2 * j)];
    if (!weight)
      weight = w;
    else if (*weight != w)
      throw Error(ErrorCode::NotAWeightVector, "polynomial mixes torus weights");
  }
  return WeightLabel{*weight, -m};
}

// (pi_lambda(g) p)(z) = p(conj(t) A^{-1} z); degree-preserving, floating.
inline NumPoly act_on_poly(const actions::GroupElement& g, const NumPoly& p) {
  const int n = p.n;
  std::vector<NumPoly> images;
  const std::complex<double> tbar = std::conj(g.t);
  for (int j = 0; j < n; ++j) {
    NumPoly img(n);
    for (int k = 0; k < n; ++k) {
      const std::complex<double> c = tbar * g.A(k, j);  // (A^{-1})_{jk} = A_{kj}
      if (c != std::complex<double>(0.0, 0.0)) {
        MultiIndex a(static_cast<size_t>(n), 0);
        a[static_cast<size_t>(k)] = 1;
        img.add_term(a, c);
      }
    }
    images.push_back(std::move(img));
  }
  return poly::substitute(p, images);
}

inline NumPoly act_on_poly(const actions::GroupElement& g, const ExactPoly& p) {
  return act_on_poly(g, poly::to_numeric(p));
}

// Multiplicity of H^r(C^{n-1}) x C_m inside P^m(C^n) under
// SO(n-1) x SO(2); requires n >= 4.
inline int branching_multiplicity(int n, int m, int r) {
  if (n < 4)
    throw Error(ErrorCode::ConfigError,
                "branching multiplicity formula requires n >= 4");
  if (r < 0 || r > m)
    throw Error(ErrorCode::ConfigError, "branching index out of range");
  const int parity_m_plus_1 = (m + 1) % 2;
  return m / 2 - (r + parity_m_plus_1) / 2 + 1;
}

// Independent counting oracle: follow P^m -> (+) H^{m-2k} -> (+)(+) H^r(C^{n-1})
// and count copies of H^r directly.
inline int branching_count_oracle(int m, int r) {
  int count = 0;
  for (int k = 0; 2 * k <= m; ++k)
    if (r <= m - 2 * k) ++count;
  return count;
}

}  // namespace tlab::polyspaces
