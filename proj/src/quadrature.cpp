#include "ppmhd/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "ppmhd/state.hpp"

namespace ppmhd {

void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = p1;
  // Derivative from the standard recurrence; endpoints handled separately.
  if (std::abs(1.0 - x * x) < 1e-300) {
    dp = 0.5 * n * (n + 1.0) * (x > 0 ? 1.0 : (n % 2 == 0 ? -1.0 : 1.0));
  } else {
    dp = n * (x * p1 - p0) / (x * x - 1.0);
  }
}

QuadratureSet gauss_legendre(int Q) {
  if (Q < 1 || Q > 10) throw Error("gauss_legendre: Q must be in [1, 10]");
  QuadratureSet rule;
  rule.nodes.resize(Q);
  rule.weights.resize(Q);
  for (int i = 0; i < Q; ++i) {
    // Chebyshev initial guess, descending roots.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (Q + 0.5));
    double p = 0.0;
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(Q, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(Q, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[Q - 1 - i] = 0.5 * x;
    rule.weights[Q - 1 - i] = 0.5 * w;
  }
  // Exact symmetry.
  for (int i = 0; i < Q / 2; ++i) {
    const double x = 0.5 * (rule.nodes[Q - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[Q - 1 - i] + rule.weights[i]);
    rule.nodes[i] = -x;
    rule.nodes[Q - 1 - i] = x;
    rule.weights[i] = rule.weights[Q - 1 - i] = w;
  }
  if (Q % 2 == 1) rule.nodes[Q / 2] = 0.0;
  return rule;
}

QuadratureSet gauss_lobatto(int L) {
  if (L < 2 || L > 10) throw Error("gauss_lobatto: L must be in [2, 10]");
  const int n = L - 1;  // interior nodes are roots of P_n'
  QuadratureSet rule;
  rule.nodes.resize(L);
  rule.weights.resize(L);
  rule.nodes[0] = -0.5;
  rule.nodes[L - 1] = 0.5;
  const double end_w = 1.0 / (L * (L - 1.0));
  rule.weights[0] = rule.weights[L - 1] = end_w;
  for (int i = 1; i < L - 1; ++i) {
    double x = -std::cos(std::numbers::pi * i / n);
    for (int it = 0; it < 100; ++it) {
      // Newton on q(x) = P_n'(x): q' = (2x P_n' - n(n+1) P_n) / (1 - x^2).
      double p = 0.0;
      double dp = 0.0;
      legendre(n, x, p, dp);
      const double d2p = (2.0 * x * dp - n * (n + 1.0) * p) / (1.0 - x * x);
      const double dx = dp / d2p;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p = 0.0;
    double dp = 0.0;
    legendre(n, x, p, dp);
    rule.nodes[i] = 0.5 * x;
    rule.weights[i] = 1.0 / (n * (n + 1.0) * p * p);  // 2/(n(n+1)P^2) halved
  }
  for (int i = 0; i < L / 2; ++i) {
    const double x = 0.5 * (rule.nodes[L - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[L - 1 - i] + rule.weights[i]);
    rule.nodes[i] = -x;
    rule.nodes[L - 1 - i] = x;
    rule.weights[i] = rule.weights[L - 1 - i] = w;
  }
  if (L % 2 == 1) rule.nodes[L / 2] = 0.0;
  return rule;
}

}  // namespace ppmhd
