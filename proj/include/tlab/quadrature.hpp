#pragma once

// Gauss-Jacobi rules for the weight (1-t)^a (1+t)^b on [-1,1], computed by
// the Golub-Welsch eigenvalue method from the three-term recurrence.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "tlab/errors.hpp"

namespace tlab::quadrature {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline Rule gauss_jacobi_nodes(int order, double a, double b) {
  if (order < 1)
    throw Error(ErrorCode::ConfigError, "quadrature order must be positive");
  if (a <= -1.0 || b <= -1.0)
    throw Error(ErrorCode::ExponentRange,
                "Jacobi exponents must exceed -1 for an integrable weight");

  // total mass of the weight
  const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));

  Eigen::VectorXd diag(order), sub(std::max(order - 1, 0));
  for (int k = 0; k < order; ++k) {
    if (k == 0)
      diag[0] = (b - a) / (a + b + 2.0);
    else {
      const double s = 2.0 * k + a + b;
      diag[k] = (b * b - a * a) / (s * (s + 2.0));
    }
  }
  for (int k = 1; k < order; ++k) {
    double b2;
    if (k == 1)
      b2 = 4.0 * (a + 1.0) * (b + 1.0) /
           ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
    else {
      const double s = 2.0 * k + a + b;
      b2 = 4.0 * k * (k + a) * (k + b) * (k + a + b) /
           (s * s * (s + 1.0) * (s - 1.0));
    }
    sub[k - 1] = std::sqrt(b2);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub);
  Rule rule;
  rule.nodes.resize(static_cast<size_t>(order));
  rule.weights.resize(static_cast<size_t>(order));
  for (int i = 0; i < order; ++i) {
    rule.nodes[static_cast<size_t>(i)] = es.eigenvalues()[i];
    const double v = es.eigenvectors()(0, i);
    rule.weights[static_cast<size_t>(i)] = mu0 * v * v;
  }
  return rule;
}

// Gauss-Legendre on [lo, hi]
inline Rule legendre_on(int order, double lo, double hi) {
  Rule r = gauss_jacobi_nodes(order, 0.0, 0.0);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (size_t i = 0; i < r.nodes.size(); ++i) {
    r.nodes[i] = mid + half * r.nodes[i];
    r.weights[i] *= half;
  }
  return r;
}

}  // namespace tlab::quadrature
