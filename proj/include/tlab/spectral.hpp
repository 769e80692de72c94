#pragma once

// Deterministic eigenvalue oracle: the eigenvalue of a Toeplitz operator with
// an invariant symbol on the block H^{k1} (z^T z)^{k2} equals a ratio of
// integrals over the Jordan order interval 0 < x < e1,
//
//   c_{k1,k2} = I(a) / I(1),
//   I(a) = int a(E(sqrt(x))) (x1+x2)^{k1} (x1^2-x'.x')^{k2}
//              ((1-x1)^2 - x'.x')^{lambda-n} dx.
//
// The n-dimensional integral reduces to three variables (x1, r = |x'|,
// t = x2/r) with weight r^{n-2} (1-t^2)^{(n-4)/2}; the constant sphere factor
// cancels in the ratio and is omitted.  An independent n-dimensional Monte
// Carlo over the same region cross-checks the reduction.

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tlab/bergman.hpp"
#include "tlab/errors.hpp"
#include "tlab/quadrature.hpp"
#include "tlab/rng.hpp"
#include "tlab/symbols.hpp"

namespace tlab::spectral {

struct QuadSpec {
  int order_x1 = 64;
  int order_r = 64;
  int order_t = 64;
  // the x1 range always splits at 1/2, where the singular boundary
  // r = 1 - x1 starts to clip the r range
};

namespace detail {

// symbol value at the cone point with u = x1, w = x1^2 - r^2; unit symbol
// when spec is null
inline double symbol_at(const symbols::SymbolSpec* spec, double x1, double r,
                        int n) {
  if (!spec) return 1.0;
  jordan::SpinElement x;
  x.x1 = x1;
  x.xprime.assign(static_cast<size_t>(n - 1), 0.0);
  x.xprime[0] = r;
  return symbols::eval_invariant_at_cone_point(*spec, x);
}

struct Kahan {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace detail

inline double cone_integral(const symbols::SymbolSpec* spec, int n, double lambda,
                            int k1, int k2, const QuadSpec& quad = {}) {
  if (n < 3) throw Error(ErrorCode::ConfigError, "cone integral needs n >= 3");
  if (!(lambda > n - 1))
    throw Error(ErrorCode::UnsupportedLambda, "cone integral needs lambda > n-1");
  if (quad.order_x1 < 1 || quad.order_r < 1 || quad.order_t < 1)
    throw Error(ErrorCode::ConfigError, "quadrature orders must be positive");

  const double a = lambda - n;
  const double te = (n - 4) / 2.0;
  const auto t_rule = quadrature::gauss_jacobi_nodes(quad.order_t, te, te);

  // t average of (x1 + r t)^{k1} against (1-t^2)^((n-4)/2)
  auto t_factor = [&](double x1, double r) {
    if (k1 == 0) {
      double s = 0.0;
      for (double w : t_rule.weights) s += w;
      return s;
    }
    detail::Kahan acc;
    for (size_t i = 0; i < t_rule.nodes.size(); ++i)
      acc.add(t_rule.weights[i] * std::pow(x1 + r * t_rule.nodes[i], k1));
    return acc.sum;
  };

  auto inner = [&](double x1, double r) {
    const double w = x1 * x1 - r * r;
    return detail::symbol_at(spec, x1, r, n) * std::pow(w, k2) *
           std::pow(r, n - 2) * t_factor(x1, r);
  };

  detail::Kahan total;

  // left piece: x1 in [0, 1/2], r = x1 rho with rho in [0, 1]; the factor
  // ((1-x1)^2 - r^2)^a stays smooth here
  {
    const auto x_rule = quadrature::legendre_on(quad.order_x1, 0.0, 0.5);
    const auto rho_rule = quadrature::legendre_on(quad.order_r, 0.0, 1.0);
    for (size_t i = 0; i < x_rule.nodes.size(); ++i) {
      const double x1 = x_rule.nodes[i];
      detail::Kahan rsum;
      for (size_t j = 0; j < rho_rule.nodes.size(); ++j) {
        const double r = x1 * rho_rule.nodes[j];
        const double sing = std::pow((1.0 - x1) * (1.0 - x1) - r * r, a);
        rsum.add(rho_rule.weights[j] * inner(x1, r) * sing);
      }
      total.add(x_rule.weights[i] * x1 * rsum.sum);
    }
  }

  // right piece: x1 in [1/2, 1], r = (1-x1) sigma; Gauss-Jacobi in sigma
  // absorbs (1-sigma)^a, which is singular for lambda < n
  {
    const auto x_rule = quadrature::legendre_on(quad.order_x1, 0.5, 1.0);
    const auto sig_rule = quadrature::gauss_jacobi_nodes(quad.order_r, a, 0.0);
    const double half_scale = std::pow(2.0, -a - 1.0);
    for (size_t i = 0; i < x_rule.nodes.size(); ++i) {
      const double x1 = x_rule.nodes[i];
      const double q = 1.0 - x1;
      detail::Kahan rsum;
      for (size_t j = 0; j < sig_rule.nodes.size(); ++j) {
        const double sigma = 0.5 * (sig_rule.nodes[j] + 1.0);
        const double r = q * sigma;
        // ((1-x1)^2 - r^2)^a = q^{2a} (1-sigma)^a (1+sigma)^a, with the
        // (1-sigma)^a factor inside the quadrature weight
        rsum.add(sig_rule.weights[j] * inner(x1, r) * std::pow(1.0 + sigma, a));
      }
      total.add(x_rule.weights[i] * q * std::pow(q, 2.0 * a) * half_scale *
                rsum.sum);
    }
  }
  return total.sum;
}

inline double eigenvalue_quad(const symbols::SymbolSpec& spec, int n, double lambda,
                              int k1, int k2, const QuadSpec& quad = {}) {
  const double num = cone_integral(&spec, n, lambda, k1, k2, quad);
  const double den = cone_integral(nullptr, n, lambda, k1, k2, quad);
  return num / den;
}

struct ConeMCResult {
  double value;
  double stderr_;
};

// Independent n-dimensional oracle: x1 ~ U(0,1), x' uniform in the
// (n-1)-ball of radius min(x1, 1-x1), with the radius^{n-1} volume factor in
// both weights.  Does not use the 3D reduction.
inline ConeMCResult eigenvalue_mc_cone(const symbols::SymbolSpec& spec, int n,
                                       double lambda, int k1, int k2,
                                       long long samples, std::uint64_t seed) {
  if (!(lambda > n - 1))
    throw Error(ErrorCode::UnsupportedLambda, "cone MC needs lambda > n-1");
  const double a = lambda - n;
  const int d = n - 1;
  rng::CounterRng gen(seed, 0);
  double sa = 0.0, sb = 0.0, saa = 0.0, sab = 0.0, sbb = 0.0;
  std::vector<double> g(static_cast<size_t>(d));
  for (long long s = 0; s < samples; ++s) {
    const double x1 = gen.uniform();
    const double radius = std::min(x1, 1.0 - x1);
    double norm2 = 0.0;
    for (auto& v : g) {
      v = gen.normal();
      norm2 += v * v;
    }
    const double u = gen.uniform();
    const double scale =
        radius * std::pow(u, 1.0 / d) / std::sqrt(std::max(norm2, 1e-300));
    double rr = 0.0;
    for (double v : g) rr += (scale * v) * (scale * v);
    const double x2 = scale * g[0];
    const double vol = std::pow(radius, d);  // ball volume factor, constants cancel
    const double weight = vol * std::pow(x1 + x2, k1) *
                          std::pow(x1 * x1 - rr, k2) *
                          std::pow((1.0 - x1) * (1.0 - x1) - rr, a);
    jordan::SpinElement x;
    x.x1 = x1;
    x.xprime.assign(static_cast<size_t>(d), 0.0);
    x.xprime[0] = std::sqrt(rr);
    const double av = symbols::eval_invariant_at_cone_point(spec, x);
    const double num = weight * av;
    sa += num;
    sb += weight;
    saa += num * num;
    sab += num * weight;
    sbb += weight * weight;
  }
  const double r = sa / sb;
  const double var = (saa - 2.0 * r * sab + r * r * sbb) / (sb * sb);
  return {r, std::sqrt(std::max(var, 0.0))};
}

enum class Method { quad, mc_cone, bergman_mc };

inline std::string method_name(Method m) {
  switch (m) {
    case Method::quad: return "quad";
    case Method::mc_cone: return "mc_cone";
    case Method::bergman_mc: return "bergman_mc";
  }
  return "?";
}

struct EigenvalueRow {
  int k1 = 0;
  int k2 = 0;
  double value = 0.0;
  Method method = Method::quad;
  double error = 0.0;  // 0 for converged quadrature
};

inline std::vector<EigenvalueRow> eigenvalue_table(const symbols::SymbolSpec& spec,
                                                   int n, double lambda, int kmax,
                                                   Method method,
                                                   long long samples = 1000000,
                                                   std::uint64_t seed = 1,
                                                   const QuadSpec& quad = {}) {
  std::vector<std::pair<int, int>> ks;
  for (int deg = 0; deg <= kmax; ++deg)
    for (int k2 = 0; 2 * k2 <= deg; ++k2) ks.emplace_back(deg - 2 * k2, k2);
  std::sort(ks.begin(), ks.end(), [](auto a, auto b) {
    const int da = a.first + 2 * a.second, db = b.first + 2 * b.second;
    return da != db ? da < db : a.first < b.first;
  });

  std::vector<EigenvalueRow> rows;
  if (method == Method::bergman_mc) {
    const bergman::MCParams params(n, lambda, samples, seed);
    const bergman::SampleSet set = bergman::make_samples(params);
    for (auto [k1, k2] : ks) {
      const auto r = bergman::rayleigh_eigenvalue_on(spec, k1, k2, params, set);
      rows.push_back({k1, k2, r.value, method, r.stderr_});
    }
    return rows;
  }
  for (auto [k1, k2] : ks) {
    if (method == Method::quad)
      rows.push_back({k1, k2, eigenvalue_quad(spec, n, lambda, k1, k2, quad),
                      method, 0.0});
    else {
      const auto r = eigenvalue_mc_cone(spec, n, lambda, k1, k2, samples, seed);
      rows.push_back({k1, k2, r.value, method, r.stderr_});
    }
  }
  return rows;
}

inline std::string table_to_csv(const std::vector<EigenvalueRow>& rows, int n,
                                double lambda, long long samples,
                                std::uint64_t seed) {
  std::ostringstream os;
  os.precision(17);
  os << "n,lambda,k1,k2,method,value,error,samples,seed\n";
  for (const auto& r : rows) {
    const bool mc = r.method != Method::quad;
    os << n << "," << lambda << "," << r.k1 << "," << r.k2 << ","
       << method_name(r.method) << "," << r.value << "," << r.error << ","
       << (mc ? samples : 0) << "," << (mc ? seed : 0) << "\n";
  }
  return os.str();
}

inline nlohmann::json table_to_json(const std::vector<EigenvalueRow>& rows, int n,
                                    double lambda, long long samples,
                                    std::uint64_t seed) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    const bool mc = r.method != Method::quad;
    arr.push_back({{"n", n},
                   {"lambda", lambda},
                   {"k1", r.k1},
                   {"k2", r.k2},
                   {"method", method_name(r.method)},
                   {"value", r.value},
                   {"error", r.error},
                   {"samples", mc ? samples : 0},
                   {"seed", mc ? seed : 0}});
  }
  return arr;
}

}  // namespace tlab::spectral
