#include "ppmhd/physics.hpp"

#include <algorithm>
#include <cmath>

namespace ppmhd {

namespace {

void require_positive_density(const ConservedState& U, const char* where) {
  if (!all_finite(U.data())) throw Error(std::string(where) + ": non-finite state");
  if (!(U.rho() > 0.0)) throw Error(std::string(where) + ": nonpositive density");
}

void require_admissible(const ConservedState& U, const char* where) {
  if (!is_admissible(U)) throw Error(std::string(where) + ": inadmissible state");
}

int axis_index(Axis dir) { return static_cast<int>(dir); }

}  // namespace

PrimitiveState to_primitive(const ConservedState& U, const EosIdeal& eos) {
  require_positive_density(U, "to_primitive");
  const double rho = U.rho();
  const Vec3 m = U.m();
  const Vec3 v{m[0] / rho, m[1] / rho, m[2] / rho};
  const double p = eos.pressure(internal_energy(U));
  return PrimitiveState(rho, v, U.B(), p);
}

ConservedState to_conserved(const PrimitiveState& W, const EosIdeal& eos) {
  const Vec3 m{W.rho * W.v[0], W.rho * W.v[1], W.rho * W.v[2]};
  const double E = eos.internal_energy(W.p) + 0.5 * (W.rho * norm2(W.v) + norm2(W.B));
  return ConservedState(W.rho, m, W.B, E);
}

double internal_energy(const ConservedState& U) {
  require_positive_density(U, "internal_energy");
  return kernel::internal_energy(U.data());
}

bool is_admissible(const ConservedState& U) { return kernel::is_admissible(U.data()); }

bool is_numerically_admissible(const ConservedState& U, double floor) {
  const StateArray& u = U.data();
  if (!(u[kRho] >= floor)) return false;
  return kernel::internal_energy(u) >= floor;
}

double nstar_functional(const ConservedState& U, const StarDirection& s) {
  const Vec3 m = U.m();
  const Vec3 B = U.B();
  return 0.5 * U.rho() * norm2(s.v_star) - dot(m, s.v_star) - dot(B, s.B_star) + U.E() + 0.5 * norm2(s.B_star);
}

StateArray flux(const ConservedState& U, Axis dir, const EosIdeal& eos) {
  require_positive_density(U, "flux");
  StateArray f{};
  kernel::flux(U.data(), axis_index(dir), eos.gamma(), f);
  return f;
}

StateArray godunov_source(const ConservedState& U) {
  require_positive_density(U, "godunov_source");
  StateArray s{};
  kernel::godunov_source(U.data(), s);
  return s;
}

double spectral_radius(const ConservedState& U, Axis dir, const EosIdeal& eos) {
  require_admissible(U, "spectral_radius");
  return kernel::spectral_radius(U.data(), axis_index(dir), eos.gamma());
}

double pp_viscosity_alpha_sigma(const ConservedState& U, const ConservedState& Ut, Axis dir, const EosIdeal& eos,
                                double sigma) {
  require_admissible(U, "pp_viscosity_alpha");
  require_admissible(Ut, "pp_viscosity_alpha");
  const int d = axis_index(dir);
  double va = 0.0, ca = 0.0, vb = 0.0, cb = 0.0;
  kernel::pp_bound_speeds(U.data(), d, eos.gamma(), va, ca);
  kernel::pp_bound_speeds(Ut.data(), d, eos.gamma(), vb, cb);
  const double mixed = std::abs(sigma * va + (1.0 - sigma) * vb) + std::max(ca, cb);
  const double base = std::max({std::abs(va) + ca, std::abs(vb) + cb, mixed});
  Vec3 dB{};
  for (int k = 0; k < 3; ++k) dB[k] = Ut[kBx + k] - U[kBx + k];
  const double f =
      std::sqrt(norm2(dB)) / std::sqrt(2.0) * std::sqrt(sigma * sigma / U.rho() + (1.0 - sigma) * (1.0 - sigma) / Ut.rho());
  return base + f;
}

double pp_viscosity_alpha(const ConservedState& U, const ConservedState& Ut, Axis dir, const EosIdeal& eos) {
  require_admissible(U, "pp_viscosity_alpha");
  require_admissible(Ut, "pp_viscosity_alpha");
  return kernel::pp_viscosity_alpha(U.data(), Ut.data(), axis_index(dir), eos.gamma());
}

double split_lhs(const ConservedState& U, const ConservedState& Ut, const StarDirection& s, double alpha, Axis dir,
                 const EosIdeal& eos) {
  if (alpha == 0.0) throw Error("split_lhs: alpha must be nonzero");
  const StateArray f = flux(U, dir, eos);
  const StateArray ft = flux(Ut, dir, eos);
  StateArray w{};
  for (int k = 0; k < kNumVars; ++k) w[k] = U[k] - f[k] / alpha + Ut[k] + ft[k] / alpha;
  const ConservedState W = ConservedState::unchecked(w);
  const int d = axis_index(dir);
  // W . n* + |B*|^2 equals nstar_functional(W) + |B*|^2 / 2.
  return nstar_functional(W, s) + 0.5 * norm2(s.B_star) +
         (U[kBx + d] - Ut[kBx + d]) / alpha * dot(s.v_star, s.B_star);
}

}  // namespace ppmhd
