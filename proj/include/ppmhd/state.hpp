/// @file state.hpp
/// @brief Conserved and primitive MHD states, the ideal-gas EOS and the
///        auxiliary (v*, B*) direction used by the admissibility functional.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ppmhd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state or polynomial left the admissible set where the scheme requires it.
class PositivityError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kNumVars = 8;
using StateArray = std::array<double, kNumVars>;
using Vec3 = std::array<double, 3>;

/// Component slots of the 8-vector U = (rho, m, B, E).
enum Var : int { kRho = 0, kMx = 1, kMy = 2, kMz = 3, kBx = 4, kBy = 5, kBz = 6, kEnergy = 7 };

/// Coordinate direction. Only X and Y carry cell faces; Z is kept for the
/// pointwise physics which is genuinely three-component.
enum class Axis : int { X = 0, Y = 1, Z = 2 };

inline constexpr double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline constexpr double norm2(const Vec3& a) { return dot(a, a); }

inline bool all_finite(const StateArray& u) {
  for (double x : u) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

/// U = (rho, m1, m2, m3, B1, B2, B3, E). Finite on construction; admissibility
/// is a property checked by operations, not a class invariant.
class ConservedState {
 public:
  ConservedState() : u_{} {}
  explicit ConservedState(const StateArray& u) : u_(u) {
    if (!all_finite(u_)) throw Error("ConservedState: non-finite entry");
  }
  ConservedState(double rho, const Vec3& m, const Vec3& B, double E)
      : ConservedState(StateArray{rho, m[0], m[1], m[2], B[0], B[1], B[2], E}) {}

  /// Skips the finiteness check; for kernels that validate elsewhere.
  static ConservedState unchecked(const StateArray& u) {
    ConservedState s;
    s.u_ = u;
    return s;
  }

  double rho() const { return u_[kRho]; }
  Vec3 m() const { return {u_[kMx], u_[kMy], u_[kMz]}; }
  Vec3 B() const { return {u_[kBx], u_[kBy], u_[kBz]}; }
  double E() const { return u_[kEnergy]; }

  double operator[](int k) const { return u_[static_cast<std::size_t>(k)]; }
  const StateArray& data() const { return u_; }

  friend bool operator==(const ConservedState&, const ConservedState&) = default;

 private:
  StateArray u_;
};

/// Ideal gamma-law equation of state p = (gamma - 1) rho e.
class EosIdeal {
 public:
  explicit EosIdeal(double gamma = 5.0 / 3.0) : gamma_(gamma) {
    if (!(gamma > 1.0) || !std::isfinite(gamma)) throw Error("EosIdeal: gamma must be > 1");
  }
  double gamma() const { return gamma_; }
  /// Pressure from the internal energy density rho*e.
  double pressure(double rho_e) const { return (gamma_ - 1.0) * rho_e; }
  /// Internal energy density rho*e from pressure.
  double internal_energy(double p) const { return p / (gamma_ - 1.0); }
  double sound_speed_sq(double rho, double p) const { return gamma_ * p / rho; }

 private:
  double gamma_;
};

/// (rho, v, B, p). Density must be positive; pressure is unconstrained so that
/// diagnostic states with p <= 0 can be represented.
struct PrimitiveState {
  double rho;
  Vec3 v;
  Vec3 B;
  double p;

  PrimitiveState(double rho_, const Vec3& v_, const Vec3& B_, double p_) : rho(rho_), v(v_), B(B_), p(p_) {
    if (!(rho > 0.0)) throw Error("PrimitiveState: nonpositive density");
  }
  double total_pressure() const { return p + 0.5 * norm2(B); }
};

/// Auxiliary vectors (v*, B*) defining n* = (|v*|^2/2, -v*, -B*, 1).
struct StarDirection {
  Vec3 v_star{};
  Vec3 B_star{};

  StarDirection() = default;
  StarDirection(const Vec3& v, const Vec3& B) : v_star(v), B_star(B) {
    for (int k = 0; k < 3; ++k) {
      if (!std::isfinite(v[k]) || !std::isfinite(B[k])) throw Error("StarDirection: non-finite entry");
    }
  }
};

}  // namespace ppmhd
