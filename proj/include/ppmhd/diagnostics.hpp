/// @file diagnostics.hpp
/// @brief Error norms, convergence rates, run reports, schlieren fields and the
///        randomized checks of the admissible-set inequalities.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ppmhd/basis.hpp"
#include "ppmhd/mesh.hpp"
#include "ppmhd/timestep.hpp"

namespace ppmhd {

/// Discrete norms per conserved component.
struct ErrorNorms {
  StateArray l1{};
  StateArray l2{};
  StateArray linf{};
};

using ExactFunction = std::function<StateArray(double x, double y)>;

/// Norms of (numeric - exact) sampled at an n x n Gauss rule in each cell
/// (n = K + 3 when points <= 0). l1 and l2 are normalized by the domain area.
ErrorNorms error_norms(const DGField& field, const Mesh& mesh, const ExactFunction& exact, int points = 0);

/// rate_k = log2(e_k / e_{k+1}) for consecutive levels refined by 2.
/// nullopt where either error is zero or not finite.
std::vector<std::optional<double>> convergence_rates(const std::vector<double>& errors);

/// Per-step records of a solver run.
class RunReport {
 public:
  static constexpr const char* kCsvHeader = "t,dt,theta,vartheta1_ratio,vartheta2_ratio,max_div,limited_cells,min_rho,min_p";

  /// Throws Error unless r.t is strictly larger than the last recorded t.
  void add(const StepRecord& r);
  const std::vector<StepRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }

  void set_errors(const ErrorNorms& e) { errors_ = e; }
  const std::optional<ErrorNorms>& errors() const { return errors_; }

  double min_theta() const;
  double max_vartheta_ratio() const;
  double min_rho() const;
  double min_p() const;

  void write_csv(std::ostream& os) const;
  /// Throws Error on I/O failure.
  void write_csv(const std::string& path) const;

 private:
  std::vector<StepRecord> records_;
  std::optional<ErrorNorms> errors_;
};

/// exp(-c |grad rho| / max |grad rho|) on an nx x ny grid stored row by row
/// (index j * nx + i). Central differences inside, one-sided at the edges.
/// A grid with zero gradient maps to 1 everywhere.
std::vector<double> schlieren(const std::vector<double>& rho, int nx, int ny, double dx, double dy, double c = 10.0);

/// One failed check with its inputs printed to full precision.
struct Counterexample {
  std::string check;
  std::uint64_t seed = 0;
  long trial = 0;
  std::string inputs;
};

struct TheoryCheckOptions {
  std::uint64_t seed = 42;
  long trials = 100000;
  /// The LF parameter in the splitting inequality is
  /// alpha_factor * pp_viscosity_alpha.
  double alpha_factor = 1.0001;
  /// Counterexamples kept in the report; all are counted.
  int max_examples = 20;
};

struct TheoryCheckReport {
  std::uint64_t seed = 0;
  long trials = 0;
  /// (check name, violation count) in a fixed order.
  std::vector<std::pair<std::string, long>> counts;
  std::vector<Counterexample> examples;
  /// Whether the search with the (B_dir - Bt_dir)(v*.B*)/alpha term removed
  /// found a negative left-hand side.
  bool dropped_term_negative = false;
  std::string dropped_term_example;

  long violations() const;
  long violations(const std::string& check) const;
  bool passed() const { return violations() == 0; }
  std::string summary() const;
};

/// Checks run per trial on random admissible states and auxiliary vectors:
/// "gstar_positive", "gstar_negative", "convexity", "lf_density",
/// "source_identity", "source_bound", "split_positive", "alpha_bound_2a",
/// "alpha_bound_jump".
TheoryCheckReport theory_check_suite(const TheoryCheckOptions& opt);

struct AppendixAProbe {
  double dpdt = 0.0;          // estimate at the origin
  std::vector<double> times;  // sampled times
  std::vector<double> pressures;
};

/// Advance the 2D pressure-probe problem with K = 2 on an n x n mesh of
/// [-1, 1]^2 (n odd) for `steps` steps of size dt and fit a quadratic in t to
/// the pressure of the centre-cell average; the linear coefficient estimates
/// dp/dt at the origin. with_source toggles the non-conservative source term.
AppendixAProbe appendixA_probe(double epsilon, int n, double gamma, bool with_source, int steps = 6,
                               double dt = 2e-4);

}  // namespace ppmhd
