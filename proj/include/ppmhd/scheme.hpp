/// @file scheme.hpp
/// @brief Spatial discretization: the Lax-Friedrichs flux, normal-field jump
///        coefficients, discrete divergences, the first-order PP update and
///        the locally divergence-free DG residual with the Godunov-Powell
///        source discretized on cell faces.
#pragma once

#include <memory>
#include <vector>

#include "ppmhd/basis.hpp"
#include "ppmhd/mesh.hpp"
#include "ppmhd/physics.hpp"

namespace ppmhd {

/// Left and right states at one face node.
struct InterfaceTrace {
  ConservedState left;
  ConservedState right;
  Axis axis = Axis::X;
};

/// How the LF viscosity is chosen from the computed bounds.
enum class AlphaRule {
  Positivity,             // margin * positivity bound
  Spectral,               // margin * max spectral radius
  PositivityAndSpectral,  // margin * max of both
};

struct SchemeParams {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double margin = 1.0001;
  /// Godunov-Powell source: face B-jump terms for DG, the penalty term for
  /// the first-order update.
  bool include_source = true;
};

/// 0.5 (F(U-) + F(U+) - alpha (U+ - U-)).
StateArray lf_flux(const InterfaceTrace& trace, double alpha, const EosIdeal& eos);

/// 0.5 (B_n(right) - B_n(left)) for the face normal.
double interface_b_jump(const InterfaceTrace& trace);

/// Central-difference divergence of cell-average B.
double discrete_divergence_fo(double b1_right, double b1_left, double b2_top, double b2_bottom, double dx, double dy);

// ------------------------------------------------------------- first order

/// A cell average and its four face neighbours.
struct Neighborhood {
  StateArray center{};
  StateArray left{}, right{}, bottom{}, top{};
};

/// Right-hand side L with U^{n+1} = U^n + dt L. No checks.
StateArray first_order_rhs(const Neighborhood& nb, double dx, double dy, double alpha1, double alpha2, double gamma,
                           bool include_penalty);

/// One step of the first-order scheme on a single cell. No checks.
StateArray first_order_update(const Neighborhood& nb, double dx, double dy, double alpha1, double alpha2, double dt,
                              double gamma, bool include_penalty);

/// Positivity bounds for the first-order scheme: alpha_l^PP over cell pairs
/// two apart, spectral radii, and vartheta = max |div| / sqrt(rho).
struct FirstOrderBounds {
  double alpha1_pp = 0.0, alpha2_pp = 0.0;
  double alpha1_std = 0.0, alpha2_std = 0.0;
  double vartheta = 0.0;
  double max_div = 0.0;
};

/// For a K = 0 field with ghosts filled. Throws on an inadmissible average.
FirstOrderBounds first_order_bounds(const DGField& avgs, const Mesh& mesh, const EosIdeal& eos);

SchemeParams select_alpha(double a1_pp, double a2_pp, double a1_std, double a2_std, double margin, AlphaRule rule,
                          bool include_source = true);

/// Divergence at cell (i, j) of a K = 0 field with ghosts filled.
double discrete_divergence_fo(const DGField& avgs, const Mesh& mesh, int i, int j);

/// Advance cell averages (a K = 0 field with ghosts filled). With validate,
/// the alpha and time-step conditions of the positivity theorem are checked
/// first and every output average is asserted admissible.
DGField first_order_step(const DGField& avgs, const Mesh& mesh, const SchemeParams& params, double dt,
                         const EosIdeal& eos, bool validate = true);

// -------------------------------------------------------------------- DG

/// Positivity bounds from the face traces of a (limited) DG field.
struct DgBounds {
  double alpha1_pp = 0.0, alpha2_pp = 0.0;
  double alpha1_std = 0.0, alpha2_std = 0.0;
  double vartheta1 = 0.0, vartheta2 = 0.0;
  double max_div = 0.0;  // max |discrete_divergence_ho| over interior cells
};

/// Residual operator with cached traces and face fluxes.
class DgOperator {
 public:
  DgOperator(const Mesh& mesh, std::shared_ptr<const DgSpace> space, const EosIdeal& eos, int threads = 1);

  /// Evaluate the face traces of all cells including ghosts. Ghosts must be filled.
  void update_traces(const DGField& u);
  /// Bounds from the current traces. Throws PositivityError naming the cell,
  /// face and node of an inadmissible trace.
  DgBounds bounds() const;
  /// dc/dt for every interior cell from the current traces.
  void residual(const DGField& u, const SchemeParams& params, DGField& out);

  /// Face-average divergence with arithmetic-mean traces.
  double divergence_ho(int i, int j) const;
  /// Trace of cell (i, j) at node mu of face f.
  const StateArray& trace(int i, int j, int f, int mu) const {
    return traces_[(cell_index(i, j) * 4 + static_cast<std::size_t>(f)) * static_cast<std::size_t>(q_) +
                   static_cast<std::size_t>(mu)];
  }

  const Mesh& mesh() const { return mesh_; }
  const DgSpace& space() const { return *space_; }
  int threads() const { return threads_; }

 private:
  std::size_t cell_index(int i, int j) const {
    return static_cast<std::size_t>(j + 1) * static_cast<std::size_t>(mesh_.nx() + 2) + static_cast<std::size_t>(i + 1);
  }

  Mesh mesh_;
  std::shared_ptr<const DgSpace> space_;
  EosIdeal eos_;
  int threads_;
  int q_;
  struct TraceSpeeds {
    double v = 0.0, c = 0.0, radius = 0.0;
  };
  std::vector<StateArray> traces_;
  std::vector<TraceSpeeds> speeds_;
  // Per face node: contribution to the cell on the low side, then the high side.
  std::vector<StateArray> xflux_, yflux_;
};

/// One-shot residual. Fills nothing: ghosts of `field` must be current.
DGField dg_residual(const DGField& field, const Mesh& mesh, const SchemeParams& params, const EosIdeal& eos);

/// Face-average discrete divergence of cell (i, j); ghosts must be current.
double discrete_divergence_ho(const DGField& field, const Mesh& mesh, int i, int j);

}  // namespace ppmhd
