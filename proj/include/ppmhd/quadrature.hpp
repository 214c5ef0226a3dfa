/// @file quadrature.hpp
/// @brief Gauss-Legendre and Gauss-Lobatto rules on the half-unit interval
///        [-1/2, 1/2], with weights normalized to sum to one.
#pragma once

#include <vector>

namespace ppmhd {

struct QuadratureSet {
  std::vector<double> nodes;    // strictly increasing, symmetric about 0
  std::vector<double> weights;  // positive, sum to 1

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Q-point Gauss-Legendre rule, exact for degree <= 2Q-1. 1 <= Q <= 10.
QuadratureSet gauss_legendre(int Q);

/// L-point Gauss-Lobatto rule including the endpoints +-1/2, exact for degree
/// <= 2L-3; endpoint weight 1/(L(L-1)). 2 <= L <= 10.
QuadratureSet gauss_lobatto(int L);

/// Legendre polynomial P_n(x) on [-1, 1] and its derivative.
void legendre(int n, double x, double& p, double& dp);

}  // namespace ppmhd
