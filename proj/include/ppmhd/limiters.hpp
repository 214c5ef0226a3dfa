/// @file limiters.hpp
/// @brief The positivity-preserving scaling limiter and a TVB minmod limiter
///        for discontinuous problems.
#pragma once

#include <array>
#include <vector>

#include "ppmhd/basis.hpp"
#include "ppmhd/mesh.hpp"
#include "ppmhd/physics.hpp"

namespace ppmhd {

/// Reference points where admissibility is enforced:
/// (Lobatto x Gauss) union (Gauss x Lobatto). Contains every face node.
struct PPPointSet {
  std::vector<std::array<double, 2>> points;
};

PPPointSet pp_point_set(const DgSpace& space);

struct PpLimitResult {
  bool changed = false;
  double theta1 = 1.0;  // density stage
  double theta2 = 1.0;  // internal-energy stage
};

/// Two-stage scaling of one cell toward its average so that the density and
/// internal energy at every PP point are at least min(eps, value at the
/// average). Throws PositivityError if the average itself is inadmissible.
PpLimitResult pp_limit_cell(const DgSpace& space, double* c, double eps_rho = kDefaultFloor,
                            double eps_e = kDefaultFloor);

/// Limit every interior cell. Returns the number of modified cells.
int pp_limit(DGField& field, double eps_rho = kDefaultFloor, double eps_e = kDefaultFloor, int threads = 1);

/// Minimum density and pressure over the PP points of all interior cells.
struct PointMinima {
  double rho = 0.0;
  double p = 0.0;
};
PointMinima pp_point_minima(const DGField& field, const EosIdeal& eos);

struct TvbResult {
  int troubled = 0;
  std::vector<char> trouble;  // nx * ny, row-major in j

  bool flagged(int i, int j, int nx) const { return trouble[static_cast<std::size_t>(j * nx + i)] != 0; }
};

/// Component-wise TVB minmod limiter on conserved variables. A cell is
/// troubled when the modified minmod (tolerance M dx^2) changes any face
/// deviation; its non-constant modes are replaced by the limited linear
/// reconstruction, with (B1, B2) projected back onto the divergence-free
/// block. M < 0 disables the limiter. Ghosts must be filled.
TvbResult tvb_limit(DGField& field, const Mesh& mesh, double M, int threads = 1);

}  // namespace ppmhd
