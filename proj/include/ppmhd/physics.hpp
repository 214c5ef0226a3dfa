/// @file physics.hpp
/// @brief Pointwise ideal-MHD physics for the Godunov-Powell form of the
///        equations: conversions, fluxes, the Powell source vector, wave speeds,
///        admissibility functionals and the positivity-preserving LF bound.
///
/// All functions are pure. The `kernel` namespace holds unchecked inline
/// versions used in the hot loops of the DG operator; the public functions
/// validate their preconditions and throw ppmhd::Error on violation.
#pragma once

#include <algorithm>
#include <cmath>

#include "ppmhd/state.hpp"

namespace ppmhd {

namespace kernel {

inline double internal_energy(const StateArray& u) {
  const double m2 = u[kMx] * u[kMx] + u[kMy] * u[kMy] + u[kMz] * u[kMz];
  const double b2 = u[kBx] * u[kBx] + u[kBy] * u[kBy] + u[kBz] * u[kBz];
  return u[kEnergy] - 0.5 * (m2 / u[kRho] + b2);
}

inline double pressure(const StateArray& u, double gamma) { return (gamma - 1.0) * internal_energy(u); }

/// F_dir(U) with no density check. dir is 0 (x), 1 (y) or 2 (z).
inline void flux(const StateArray& u, int dir, double gamma, StateArray& f) {
  const double inv_rho = 1.0 / u[kRho];
  const double v[3] = {u[kMx] * inv_rho, u[kMy] * inv_rho, u[kMz] * inv_rho};
  const double* B = &u[kBx];
  const double pb = 0.5 * (B[0] * B[0] + B[1] * B[1] + B[2] * B[2]);
  const double p = (gamma - 1.0) * (u[kEnergy] - 0.5 * (u[kMx] * v[0] + u[kMy] * v[1] + u[kMz] * v[2]) - pb);
  const double ptot = p + pb;
  const double vB = v[0] * B[0] + v[1] * B[1] + v[2] * B[2];
  const double vn = v[dir];
  const double Bn = B[dir];
  f[kRho] = u[kRho] * vn;
  for (int k = 0; k < 3; ++k) {
    f[kMx + k] = u[kMx + k] * vn - Bn * B[k];
    f[kBx + k] = vn * B[k] - Bn * v[k];
  }
  f[kMx + dir] += ptot;
  f[kBx + dir] = 0.0;
  f[kEnergy] = vn * (u[kEnergy] + ptot) - Bn * vB;
}

/// S(U) = (0, B, v, v.B).
inline void godunov_source(const StateArray& u, StateArray& s) {
  const double inv_rho = 1.0 / u[kRho];
  const double v[3] = {u[kMx] * inv_rho, u[kMy] * inv_rho, u[kMz] * inv_rho};
  s[kRho] = 0.0;
  s[kMx] = u[kBx];
  s[kMy] = u[kBy];
  s[kMz] = u[kBz];
  s[kBx] = v[0];
  s[kBy] = v[1];
  s[kBz] = v[2];
  s[kEnergy] = v[0] * u[kBx] + v[1] * u[kBy] + v[2] * u[kBz];
}

/// Fast magnetosonic speed in direction dir for a given squared "sound"
/// speed cs2; shared by the spectral radius and the PP bound.
inline double fast_speed(double cs2, double rho, const double* B, int dir) {
  const double b2 = (B[0] * B[0] + B[1] * B[1] + B[2] * B[2]) / rho;
  const double a = cs2 + b2;
  const double disc = a * a - 4.0 * cs2 * B[dir] * B[dir] / rho;
  return std::sqrt(0.5 * (a + std::sqrt(std::max(disc, 0.0))));
}

inline bool is_admissible(const StateArray& u) {
  if (!(u[kRho] > 0.0)) return false;
  const double e = internal_energy(u);
  return e > 0.0;  // NaN compares false
}

inline double spectral_radius(const StateArray& u, int dir, double gamma) {
  const double p = (gamma - 1.0) * internal_energy(u);
  return std::abs(u[kMx + dir] / u[kRho]) + fast_speed(gamma * p / u[kRho], u[kRho], &u[kBx], dir);
}

/// |v_dir| and the C_dir radical built on C_s = p / (rho sqrt(2e)).
inline void pp_bound_speeds(const StateArray& u, int dir, double gamma, double& v, double& c) {
  const double rho_e = internal_energy(u);
  const double e = rho_e / u[kRho];
  const double cs = (gamma - 1.0) * rho_e / (u[kRho] * std::sqrt(2.0 * e));
  v = u[kMx + dir] / u[kRho];
  c = fast_speed(cs * cs, u[kRho], &u[kBx], dir);
}

/// Min over the two closed-form splitting weights of alpha_dir(U, Ut; sigma),
/// given the pp_bound_speeds of both states.
inline double pp_viscosity_alpha(const StateArray& u, const StateArray& ut, double va, double ca, double vb,
                                 double cb) {
  const double rho = u[kRho];
  const double rho_t = ut[kRho];
  const double cmax = std::max(ca, cb);
  const double base = std::max(std::abs(va) + ca, std::abs(vb) + cb);
  double dB2 = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double db = ut[kBx + k] - u[kBx + k];
    dB2 += db * db;
  }
  const double dB = std::sqrt(dB2);
  // sigma = rho / (rho + rho~) minimizes the f term.
  const double mixed1 = std::abs(rho * va + rho_t * vb) / (rho + rho_t) + cmax;
  const double alpha1 = std::max(base, mixed1) + dB / std::sqrt(2.0 * (rho + rho_t));
  // sigma = sqrt(rho) / (sqrt(rho) + sqrt(rho~)).
  const double sr = std::sqrt(rho);
  const double srt = std::sqrt(rho_t);
  const double mixed2 = std::abs(sr * va + srt * vb) / (sr + srt) + cmax;
  const double alpha2 = std::max(base, mixed2) + dB / (sr + srt);
  return std::min(alpha1, alpha2);
}

inline double pp_viscosity_alpha(const StateArray& u, const StateArray& ut, int dir, double gamma) {
  double va = 0.0, ca = 0.0, vb = 0.0, cb = 0.0;
  pp_bound_speeds(u, dir, gamma, va, ca);
  pp_bound_speeds(ut, dir, gamma, vb, cb);
  return pp_viscosity_alpha(u, ut, va, ca, vb, cb);
}

}  // namespace kernel

/// Recover (rho, v, B, p). Throws on nonpositive density or non-finite input.
PrimitiveState to_primitive(const ConservedState& U, const EosIdeal& eos);

/// Inverse of to_primitive.
ConservedState to_conserved(const PrimitiveState& W, const EosIdeal& eos);

/// Internal energy density rho*e = E - (|m|^2/rho + |B|^2)/2.
double internal_energy(const ConservedState& U);

/// True iff rho > 0 and internal energy > 0 (strict; NaN gives false).
bool is_admissible(const ConservedState& U);

/// Admissibility with absolute floors, used as the PP limiter target.
inline constexpr double kDefaultFloor = 1e-13;
bool is_numerically_admissible(const ConservedState& U, double floor = kDefaultFloor);

/// U . n* + |B*|^2 / 2 where n* = (|v*|^2/2, -v*, -B*, 1).
double nstar_functional(const ConservedState& U, const StarDirection& s);

/// Physical flux F_dir(U).
StateArray flux(const ConservedState& U, Axis dir, const EosIdeal& eos);

/// Powell source vector S(U) = (0, B, v, v.B).
StateArray godunov_source(const ConservedState& U);

/// |v_dir| + fast magnetosonic speed built on sqrt(gamma p / rho).
double spectral_radius(const ConservedState& U, Axis dir, const EosIdeal& eos);

/// alpha_dir(U, Ut; sigma): the LF viscosity bound for one splitting weight.
double pp_viscosity_alpha_sigma(const ConservedState& U, const ConservedState& Ut, Axis dir, const EosIdeal& eos,
                                double sigma);

/// Minimum of alpha_dir(U, Ut; sigma) over sigma = rho/(rho+rho~) and
/// sigma = sqrt(rho)/(sqrt(rho)+sqrt(rho~)). Any LF parameter strictly above
/// this value satisfies the two-state positivity inequality.
double pp_viscosity_alpha(const ConservedState& U, const ConservedState& Ut, Axis dir, const EosIdeal& eos);

/// Left-hand side of the two-state LF splitting inequality:
/// (U - F(U)/a + Ut + F(Ut)/a) . n* + |B*|^2 + ((B_dir - Bt_dir)/a)(v*.B*).
double split_lhs(const ConservedState& U, const ConservedState& Ut, const StarDirection& s, double alpha, Axis dir,
                 const EosIdeal& eos);

}  // namespace ppmhd
