/// @file run.hpp
/// @brief Run configuration, orchestration and snapshot output.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppmhd/basis.hpp"
#include "ppmhd/diagnostics.hpp"
#include "ppmhd/mesh.hpp"

namespace ppmhd {

/// Bad command line or configuration file. Maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Output failure. Maps to exit code 4.
class IoError : public Error {
 public:
  using Error::Error;
};

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitPositivity = 3, kExitIo = 4 };

struct RunConfig {
  std::string problem;
  std::optional<int> nx;      // problem default when empty
  std::optional<int> ny;
  int degree = 2;
  double cfl = 0.9;
  std::optional<double> t_end;
  bool pp_limiter = true;
  std::optional<double> tvb_m;  // problem default when empty, < 0 disables
  std::string out = "out";
  int dump_every = 0;  // 0: initial and final snapshots only
  std::uint64_t seed = 0;
  int threads = 1;
  std::map<std::string, double> params;  // problem parameters, e.g. jet_case

  bool operator==(const RunConfig&) const = default;
};

/// Check ranges and the problem id. Throws UsageError.
void validate(const RunConfig& cfg);

/// Flat key=value text with '#' comments. Keys: problem, nx, ny, degree, cfl,
/// tend, pp_limiter, tvb_m, out, dump_every, seed, threads, and param.<name>.
/// Unknown keys throw UsageError.
RunConfig parse_config_text(const std::string& text, const RunConfig& base = {});

/// Command line with an optional --config file; flags override file values.
/// Throws UsageError; `help` is set when --help was requested.
RunConfig parse_config(int argc, const char* const* argv, bool* help = nullptr, std::string* help_text = nullptr);

struct RunResult {
  int exit_code = kExitOk;
  RunReport report;
  std::string message;
  double t_final = 0.0;
  std::vector<std::string> files;
};

/// Initialize, advance with SSP-RK3 and write snapshots, the run report and
/// (when the problem has an exact solution) the final error norms into
/// cfg.out. Progress lines go to `log` when given.
RunResult run(const RunConfig& cfg, std::ostream* log = nullptr);

enum class SnapshotFormat { Csv, Vtk };

/// Cell-average grid. CSV header "x,y,rho,mx,my,mz,Bx,By,Bz,E,p"; legacy VTK
/// structured points with the same nine fields. Throws IoError.
void write_snapshot(const DGField& field, const Mesh& mesh, double gamma, double t, const std::string& path,
                    SnapshotFormat format);

/// Cell averages along row j with the magnetic field components parallel and
/// normal to the 45 degree diagonal. Header "x,y,rho,p,B_par,B_perp".
void write_row_cut(const DGField& field, const Mesh& mesh, double gamma, int j, const std::string& path);

/// "<stem>_<index padded to 6 digits>.<ext>".
std::string snapshot_name(const std::string& stem, long index, const std::string& ext);

}  // namespace ppmhd
