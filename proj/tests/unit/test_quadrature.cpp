#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ppmhd/quadrature.hpp"
#include "ppmhd/state.hpp"

using namespace ppmhd;
using doctest::Approx;

namespace {

double integrate(const QuadratureSet& q, int power) {
  double s = 0.0;
  for (int k = 0; k < q.size(); ++k) s += q.weights[static_cast<std::size_t>(k)] * std::pow(q.nodes[static_cast<std::size_t>(k)], power);
  return s;
}

// Integral of x^n over [-1/2, 1/2].
double exact_moment(int n) { return n % 2 ? 0.0 : 2.0 * std::pow(0.5, n + 1) / (n + 1); }

void check_structure(const QuadratureSet& q) {
  CHECK(std::accumulate(q.weights.begin(), q.weights.end(), 0.0) == Approx(1.0).epsilon(1e-15));
  for (int k = 0; k < q.size(); ++k) {
    CHECK(q.weights[static_cast<std::size_t>(k)] > 0.0);
    CHECK(q.nodes[static_cast<std::size_t>(k)] >= -0.5);
    CHECK(q.nodes[static_cast<std::size_t>(k)] <= 0.5);
    CHECK(q.nodes[static_cast<std::size_t>(k)] == Approx(-q.nodes[static_cast<std::size_t>(q.size() - 1 - k)]).scale(1.0).epsilon(1e-15));
    if (k > 0) CHECK(q.nodes[static_cast<std::size_t>(k)] > q.nodes[static_cast<std::size_t>(k - 1)]);
  }
}

}  // namespace

TEST_CASE("gauss-legendre examples") {
  const QuadratureSet q1 = gauss_legendre(1);
  CHECK(q1.size() == 1);
  CHECK(q1.nodes[0] == Approx(0.0).scale(1.0));
  CHECK(q1.weights[0] == Approx(1.0));

  const QuadratureSet q2 = gauss_legendre(2);
  CHECK(q2.nodes[0] == Approx(-1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-15));
  CHECK(q2.nodes[1] == Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-15));
  CHECK(q2.weights[0] == Approx(0.5).epsilon(1e-15));
  CHECK(q2.weights[1] == Approx(0.5).epsilon(1e-15));

  CHECK(integrate(gauss_legendre(3), 4) == Approx(1.0 / 80.0).epsilon(1e-15));

  // Hard-coded 3-point table.
  const QuadratureSet q3 = gauss_legendre(3);
  CHECK(q3.nodes[2] == Approx(0.5 * std::sqrt(0.6)).epsilon(1e-15));
  CHECK(q3.weights[0] == Approx(5.0 / 18.0).epsilon(1e-15));
  CHECK(q3.weights[1] == Approx(8.0 / 18.0).epsilon(1e-15));
}

TEST_CASE("gauss-legendre structure and exactness") {
  for (int Q = 1; Q <= 10; ++Q) {
    CAPTURE(Q);
    const QuadratureSet q = gauss_legendre(Q);
    CHECK(q.size() == Q);
    check_structure(q);
    for (int n = 0; n <= 2 * Q - 1; ++n) CHECK(integrate(q, n) == Approx(exact_moment(n)).scale(1.0).epsilon(1e-15));
    // Not exact one degree higher.
    CHECK(std::abs(integrate(q, 2 * Q) - exact_moment(2 * Q)) > 1e-16);
  }
  CHECK_THROWS_AS(gauss_legendre(0), Error);
  CHECK_THROWS_AS(gauss_legendre(11), Error);
}

TEST_CASE("gauss-lobatto examples") {
  const QuadratureSet l2 = gauss_lobatto(2);
  CHECK(l2.nodes[0] == -0.5);
  CHECK(l2.nodes[1] == 0.5);
  CHECK(l2.weights[0] == Approx(0.5));
  CHECK(l2.weights[1] == Approx(0.5));

  const QuadratureSet l3 = gauss_lobatto(3);
  CHECK(l3.nodes[1] == Approx(0.0).scale(1.0));
  CHECK(l3.weights[0] == Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(l3.weights[1] == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(integrate(l3, 2) == Approx(1.0 / 12.0).epsilon(1e-15));

  const QuadratureSet l4 = gauss_lobatto(4);
  CHECK(l4.nodes[2] == Approx(0.5 / std::sqrt(5.0)).epsilon(1e-15));
  CHECK(l4.weights[0] == Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(l4.weights[1] == Approx(5.0 / 12.0).epsilon(1e-15));
}

TEST_CASE("gauss-lobatto structure and exactness") {
  for (int L = 2; L <= 10; ++L) {
    CAPTURE(L);
    const QuadratureSet q = gauss_lobatto(L);
    CHECK(q.size() == L);
    check_structure(q);
    CHECK(q.nodes.front() == -0.5);
    CHECK(q.nodes.back() == 0.5);
    CHECK(q.weights.front() == Approx(1.0 / (L * (L - 1))).epsilon(1e-15));
    CHECK(q.weights.back() == Approx(1.0 / (L * (L - 1))).epsilon(1e-15));
    for (int n = 0; n <= 2 * L - 3; ++n) CHECK(integrate(q, n) == Approx(exact_moment(n)).scale(1.0).epsilon(1e-15));
  }
  CHECK_THROWS_AS(gauss_lobatto(1), Error);
  CHECK_THROWS_AS(gauss_lobatto(11), Error);
}
