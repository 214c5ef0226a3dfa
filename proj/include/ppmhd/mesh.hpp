/// @file mesh.hpp
/// @brief Uniform Cartesian grid, boundary descriptors and ghost filling.
#pragma once

#include <array>
#include <functional>
#include <string>

#include "ppmhd/basis.hpp"

namespace ppmhd {

/// Boundary condition on one side of the domain.
struct BoundaryKind {
  enum class Tag { Periodic, ShiftedPeriodic, Outflow, Inflow, Reflect };

  /// Predicate on the ghost-cell centre (x, y) and time t.
  using Mask = std::function<bool(double x, double y, double t)>;

  Tag tag = Tag::Outflow;
  int shift = 0;            // ShiftedPeriodic: cells in x
  StateArray state{};       // Inflow: constant conserved state
  Mask mask;                // Inflow: where the state applies; elsewhere outflow

  static BoundaryKind periodic() { return {Tag::Periodic, 0, {}, {}}; }
  static BoundaryKind shifted_periodic(int shift) { return {Tag::ShiftedPeriodic, shift, {}, {}}; }
  static BoundaryKind outflow() { return {Tag::Outflow, 0, {}, {}}; }
  static BoundaryKind inflow(const ConservedState& u, Mask m = {}) { return {Tag::Inflow, 0, u.data(), std::move(m)}; }
  static BoundaryKind reflect() { return {Tag::Reflect, 0, {}, {}}; }
};

enum Side : int { kSideLeft = 0, kSideRight = 1, kSideBottom = 2, kSideTop = 3 };

struct MeshConfig {
  int nx = 0;
  int ny = 0;
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  std::array<BoundaryKind, 4> bc{};  // left, right, bottom, top
};

class Mesh {
 public:
  explicit Mesh(const MeshConfig& cfg);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double xmin() const { return xmin_; }
  double xmax() const { return xmax_; }
  double ymin() const { return ymin_; }
  double ymax() const { return ymax_; }
  /// Valid for ghost indices too.
  double xc(int i) const { return xmin_ + (i + 0.5) * dx_; }
  double yc(int j) const { return ymin_ + (j + 0.5) * dy_; }
  double xface(int i) const { return xmin_ + i * dx_; }
  double yface(int j) const { return ymin_ + j * dy_; }
  double aspect() const { return dx_ / dy_; }
  const BoundaryKind& boundary(int side) const { return bc_[static_cast<std::size_t>(side)]; }

 private:
  int nx_, ny_;
  double xmin_, xmax_, ymin_, ymax_;
  double dx_, dy_;
  std::array<BoundaryKind, 4> bc_;
};

Mesh build_mesh(const MeshConfig& cfg);

/// Set one cell's coefficients to a constant state.
void set_constant(const DgSpace& space, const StateArray& u, double* c);

/// L2-project a pointwise function of physical (x, y) onto cell (i, j).
void project_cell(const std::function<StateArray(double, double)>& f, const Mesh& mesh, int i, int j,
                  const DgSpace& space, double* c);

/// Project onto every interior cell.
void project(const std::function<StateArray(double, double)>& f, const Mesh& mesh, DGField& field);

/// Fill the ghost layer: x-boundary columns for interior rows first, then the
/// full y-boundary rows (corners included).
void fill_ghosts(DGField& field, const Mesh& mesh, double t);

}  // namespace ppmhd
