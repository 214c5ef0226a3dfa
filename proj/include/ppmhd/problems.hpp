/// @file problems.hpp
/// @brief Initial and boundary data for the benchmark problems.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ppmhd/mesh.hpp"
#include "ppmhd/state.hpp"

namespace ppmhd {

/// Named numeric parameters that adjust a problem, e.g. {"jet_case", 3}.
/// "nx" and "ny" are accepted by every problem and set the mesh.
using ProblemOverrides = std::map<std::string, double>;

struct ProblemSpec {
  std::string id;
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  int nx = 64;
  int ny = 64;
  double gamma = 5.0 / 3.0;
  double t_end = 0.0;
  std::array<BoundaryKind, 4> bc{};
  std::function<StateArray(double x, double y)> initial;
  /// Empty when no exact solution is known.
  std::function<StateArray(double x, double y, double t)> exact;
  double tvb_m = -1.0;  // recommended TVB constant, < 0 for none
  int degree = 2;
  bool pp_limiter = true;

  MeshConfig mesh_config() const;
};

/// Ids accepted by make_problem.
const std::vector<std::string>& problem_ids();

/// Throws Error listing the valid ids for an unknown id, and for unknown
/// override keys.
ProblemSpec make_problem(const std::string& id, const ProblemOverrides& overrides = {});

/// Pointwise exact state where one is defined (smooth_sine, smooth_vortex,
/// constant).
StateArray exact_solution(const std::string& id, double x, double y, double t);

/// Conserved state from primitive (rho, v, B, p).
StateArray conserved_from_primitive(double rho, const Vec3& v, const Vec3& B, double p, double gamma);

}  // namespace ppmhd
