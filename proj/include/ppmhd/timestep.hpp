/// @file timestep.hpp
/// @brief Time-step restrictions for the first-order and DG schemes and the
///        SSP-RK3 driver with limiting before every stage residual.
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ppmhd/basis.hpp"
#include "ppmhd/limiters.hpp"
#include "ppmhd/mesh.hpp"
#include "ppmhd/scheme.hpp"

namespace ppmhd {

struct CflReport {
  double dt = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double vartheta = 0.0;  // first order: max |div| / sqrt(rho)
  double theta = 1.0;     // DG
  double vartheta1 = 0.0;
  double vartheta2 = 0.0;
  double limit = 1.0;     // largest admissible dt (alpha1/dx + alpha2/dy [+ vartheta]) product
  std::string binding;    // "first_order" or "dg"
};

/// fraction / (alpha1/dx + alpha2/dy + vartheta).
double first_order_dt(double alpha1, double alpha2, double dx, double dy, double vartheta, double fraction);
/// 1 / (1 + max(vartheta1/alpha1, vartheta2/alpha2)).
double dg_theta(double vartheta1, double vartheta2, double alpha1, double alpha2);
/// fraction * theta * omega_hat / (alpha1/dx + alpha2/dy).
double dg_dt(double alpha1, double alpha2, double dx, double dy, double theta, double omega_hat, double fraction);

/// For a K = 0 field with ghosts filled and the alphas in params.
CflReport cfl_first_order(const DGField& avgs, const Mesh& mesh, const SchemeParams& params, const EosIdeal& eos,
                          double fraction);
/// For a limited field with ghosts filled and the alphas in params.
CflReport cfl_dg(const DGField& field, const Mesh& mesh, const SchemeParams& params, const EosIdeal& eos,
                 double fraction);

/// Generic SSP-RK3 on a flat vector: stage weights (1; 3/4, 1/4; 1/3, 2/3),
/// with `limit` applied to each stage output.
void ssp_rk3(std::vector<double>& u, double dt, const std::function<void(const std::vector<double>&, std::vector<double>&)>& rhs,
             const std::function<void(std::vector<double>&)>& limit = {});

struct SolverOptions {
  double cfl = 0.9;              // multiplies the theoretical time-step limit
  bool pp_limiter = true;
  double tvb_m = -1.0;           // < 0 disables
  double eps = kDefaultFloor;
  double margin = 1.0001;
  AlphaRule alpha_rule = AlphaRule::PositivityAndSpectral;
  bool include_source = true;
  double fixed_dt = 0.0;         // > 0 caps dt at this value
  int threads = 1;
};

/// One row of the run report.
struct StepRecord {
  double t = 0.0;
  double dt = 0.0;
  double theta = 1.0;
  double vartheta1_ratio = 0.0;
  double vartheta2_ratio = 0.0;
  double max_div = 0.0;
  int limited_cells = 0;
  double min_rho = 0.0;
  double min_p = 0.0;
};

/// Owns the solution and advances it with SSP-RK3. Between steps the field
/// is limited and its ghosts are current.
class Solver {
 public:
  Solver(const Mesh& mesh, DGField initial, const EosIdeal& eos, const SolverOptions& opt, double t0 = 0.0);

  /// Advance one step, never past t_end. Throws PositivityError if the
  /// solution leaves the admissible set.
  StepRecord step(double t_end);
  /// Step until t_end; calls on_step after each step if given.
  void run(double t_end, const std::function<void(const StepRecord&)>& on_step = {});

  const DGField& field() const { return u_; }
  double time() const { return t_; }
  long steps() const { return steps_; }
  int initial_limited_cells() const { return initial_limited_; }
  const Mesh& mesh() const { return mesh_; }
  const EosIdeal& eos() const { return eos_; }
  const SolverOptions& options() const { return opt_; }

 private:
  struct StageInfo {
    SchemeParams params;
    double limit = 0.0;  // largest admissible dt for this stage
    double theta = 1.0;
    double r1 = 0.0, r2 = 0.0;
    double max_div = 0.0;
  };

  StageInfo analyze(const DGField& u);
  int limit_stage(DGField& u, double t);
  void check_averages(const DGField& u, int stage) const;

  Mesh mesh_;
  EosIdeal eos_;
  SolverOptions opt_;
  std::shared_ptr<const DgSpace> space_;
  DgOperator op_;
  DGField u_, u1_, u2_, res_;
  double t_;
  long steps_ = 0;
  int initial_limited_ = 0;
  StageInfo current_;
};

}  // namespace ppmhd
