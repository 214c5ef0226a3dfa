#include "ppmhd/run.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ppmhd/physics.hpp"
#include "ppmhd/problems.hpp"
#include "ppmhd/timestep.hpp"

namespace ppmhd {

namespace fs = std::filesystem;

// ---------------------------------------------------------------- configuration

void validate(const RunConfig& cfg) {
  if (cfg.problem.empty()) throw UsageError("no problem given (--problem)");
  const auto& ids = problem_ids();
  if (std::find(ids.begin(), ids.end(), cfg.problem) == ids.end()) {
    std::string list;
    for (const auto& id : ids) list += (list.empty() ? "" : ", ") + id;
    throw UsageError("unknown problem '" + cfg.problem + "'; valid ids: " + list);
  }
  if (cfg.degree < 0 || cfg.degree > 2) throw UsageError("degree must be 0, 1 or 2");
  if (!(cfg.cfl > 0.0) || cfg.cfl > 1.0) throw UsageError("cfl must lie in (0, 1]");
  // Meshes thinner than four cells are allowed only where the problem itself
  // defaults to fewer (the N x 2 strip of the rotated tube).
  const ProblemSpec spec = make_problem(cfg.problem);
  const int min_nx = std::min(4, spec.nx);
  const int min_ny = std::min(4, spec.ny);
  if (cfg.nx && *cfg.nx < min_nx) throw UsageError("nx must be at least " + std::to_string(min_nx));
  if (cfg.ny && *cfg.ny < min_ny) throw UsageError("ny must be at least " + std::to_string(min_ny));
  if (cfg.t_end && !(*cfg.t_end > 0.0)) throw UsageError("tend must be positive");
  if (cfg.dump_every < 0) throw UsageError("dump_every must be nonnegative");
  if (cfg.threads < 1) throw UsageError("threads must be at least 1");
  if (cfg.out.empty()) throw UsageError("output directory must not be empty");
  ProblemOverrides o(cfg.params.begin(), cfg.params.end());
  try {
    make_problem(cfg.problem, o);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream is(value);
  T v{};
  is >> v;
  if (!is || !is.eof()) throw UsageError("invalid value for " + key + ": '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "off" || value == "no") return false;
  throw UsageError("invalid value for " + key + ": '" + value + "'");
}

void set_param(RunConfig& cfg, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw UsageError("--param expects key=value, got '" + spec + "'");
  const std::string key = trim(spec.substr(0, eq));
  if (key.empty()) throw UsageError("--param expects key=value, got '" + spec + "'");
  cfg.params[key] = parse_number<double>(key, trim(spec.substr(eq + 1)));
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const RunConfig& base) {
  RunConfig cfg = base;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "problem") cfg.problem = value;
    else if (key == "nx") cfg.nx = parse_number<int>(key, value);
    else if (key == "ny") cfg.ny = parse_number<int>(key, value);
    else if (key == "degree") cfg.degree = parse_number<int>(key, value);
    else if (key == "cfl") cfg.cfl = parse_number<double>(key, value);
    else if (key == "tend") cfg.t_end = parse_number<double>(key, value);
    else if (key == "pp_limiter") cfg.pp_limiter = parse_bool(key, value);
    else if (key == "tvb_m") cfg.tvb_m = parse_number<double>(key, value);
    else if (key == "out") cfg.out = value;
    else if (key == "dump_every") cfg.dump_every = parse_number<int>(key, value);
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "threads") cfg.threads = parse_number<int>(key, value);
    else if (key.rfind("param.", 0) == 0 && key.size() > 6) cfg.params[key.substr(6)] = parse_number<double>(key, value);
    else throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return cfg;
}

RunConfig parse_config(int argc, const char* const* argv, bool* help, std::string* help_text) {
  CLI::App app{"Positivity-preserving DG solver for 2D ideal MHD", "ppmhd"};
  std::string problem, out, config_path;
  int nx = 0, ny = 0, degree = 0, dump_every = 0, threads = 0;
  double cfl = 0.0, tend = 0.0, tvb_m = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> params;
  auto* o_problem = app.add_option("--problem", problem, "problem id");
  auto* o_nx = app.add_option("--nx", nx, "cells in x");
  auto* o_ny = app.add_option("--ny", ny, "cells in y");
  auto* o_degree = app.add_option("--degree", degree, "polynomial degree (0, 1 or 2)");
  auto* o_cfl = app.add_option("--cfl", cfl, "fraction of the admissible time step");
  auto* o_tend = app.add_option("--tend", tend, "end time");
  auto* o_nopp = app.add_flag("--no-pp-limiter", "disable the positivity limiter");
  auto* o_tvb = app.add_option("--tvb-m", tvb_m, "TVB constant M (negative disables)");
  auto* o_out = app.add_option("--out", out, "output directory");
  auto* o_dump = app.add_option("--dump-every", dump_every, "snapshot every N steps (0: first and last)");
  auto* o_seed = app.add_option("--seed", seed, "random seed");
  auto* o_threads = app.add_option("--threads", threads, "worker threads");
  app.add_option("--config", config_path, "key=value configuration file");
  auto* o_param = app.add_option("--param", params, "problem parameter key=value (repeatable)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    if (help) *help = true;
    if (help_text) *help_text = app.help();
    return {};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  if (help) *help = false;

  RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) throw UsageError("cannot read config file " + config_path);
    std::stringstream ss;
    ss << f.rdbuf();
    cfg = parse_config_text(ss.str(), cfg);
  }
  if (o_problem->count()) cfg.problem = problem;
  if (o_nx->count()) cfg.nx = nx;
  if (o_ny->count()) cfg.ny = ny;
  if (o_degree->count()) cfg.degree = degree;
  if (o_cfl->count()) cfg.cfl = cfl;
  if (o_tend->count()) cfg.t_end = tend;
  if (o_nopp->count()) cfg.pp_limiter = false;
  if (o_tvb->count()) cfg.tvb_m = tvb_m;
  if (o_out->count()) cfg.out = out;
  if (o_dump->count()) cfg.dump_every = dump_every;
  if (o_seed->count()) cfg.seed = seed;
  if (o_threads->count()) cfg.threads = threads;
  if (o_param->count()) {
    for (const auto& p : params) set_param(cfg, p);
  }
  validate(cfg);
  return cfg;
}

// ---------------------------------------------------------------------- output

std::string snapshot_name(const std::string& stem, long index, const std::string& ext) {
  std::ostringstream os;
  os << stem << '_' << std::setw(6) << std::setfill('0') << index << '.' << ext;
  return os.str();
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << std::setprecision(17);
  return f;
}

void finish(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoError("write failed: " + path);
}

std::string positivity_message(const std::string& what) {
  const std::string prefix = "positivity failure";
  return what.rfind(prefix, 0) == 0 ? what : prefix + ": " + what;
}

std::array<double, 9> cell_fields(const DGField& field, int i, int j, double gamma) {
  const StateArray a = field.average(i, j);
  std::array<double, 9> v{};
  for (int k = 0; k < kNumVars; ++k) v[static_cast<std::size_t>(k)] = a[k];
  v[8] = (gamma - 1.0) * kernel::internal_energy(a);
  return v;
}

}  // namespace

void write_snapshot(const DGField& field, const Mesh& mesh, double gamma, double t, const std::string& path,
                    SnapshotFormat format) {
  std::ofstream f = open_out(path);
  const int nx = mesh.nx();
  const int ny = mesh.ny();
  if (format == SnapshotFormat::Csv) {
    f << "x,y,rho,mx,my,mz,Bx,By,Bz,E,p\n";
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        f << mesh.xc(i) << ',' << mesh.yc(j);
        for (double v : cell_fields(field, i, j, gamma)) f << ',' << v;
        f << '\n';
      }
    }
  } else {
    static const char* const names[9] = {"rho", "mx", "my", "mz", "Bx", "By", "Bz", "E", "p"};
    f << "# vtk DataFile Version 3.0\n";
    f << "ppmhd cell averages t=" << t << "\n";
    f << "ASCII\nDATASET STRUCTURED_POINTS\n";
    f << "DIMENSIONS " << nx << ' ' << ny << " 1\n";
    f << "ORIGIN " << mesh.xc(0) << ' ' << mesh.yc(0) << " 0\n";
    f << "SPACING " << mesh.dx() << ' ' << mesh.dy() << " 1\n";
    f << "POINT_DATA " << static_cast<long>(nx) * ny << '\n';
    std::vector<std::array<double, 9>> vals;
    vals.reserve(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) vals.push_back(cell_fields(field, i, j, gamma));
    }
    for (int k = 0; k < 9; ++k) {
      f << "SCALARS " << names[k] << " double 1\nLOOKUP_TABLE default\n";
      for (const auto& v : vals) f << v[static_cast<std::size_t>(k)] << '\n';
    }
  }
  finish(f, path);
}

void write_row_cut(const DGField& field, const Mesh& mesh, double gamma, int j, const std::string& path) {
  if (j < 0 || j >= mesh.ny()) throw Error("write_row_cut: row out of range");
  std::ofstream f = open_out(path);
  const double r = 1.0 / std::sqrt(2.0);
  f << "x,y,rho,p,B_par,B_perp\n";
  for (int i = 0; i < mesh.nx(); ++i) {
    const auto v = cell_fields(field, i, j, gamma);
    f << mesh.xc(i) << ',' << mesh.yc(j) << ',' << v[0] << ',' << v[8] << ',' << r * (v[4] + v[5]) << ','
      << r * (v[5] - v[4]) << '\n';
  }
  finish(f, path);
}

// ------------------------------------------------------------------------- run

RunResult run(const RunConfig& cfg, std::ostream* log) {
  validate(cfg);
  RunResult res;
  ProblemOverrides o(cfg.params.begin(), cfg.params.end());
  if (cfg.nx) o["nx"] = *cfg.nx;
  if (cfg.ny) o["ny"] = *cfg.ny;
  const ProblemSpec spec = make_problem(cfg.problem, o);
  const double t_end = cfg.t_end.value_or(spec.t_end);
  const Mesh mesh(spec.mesh_config());
  const EosIdeal eos(spec.gamma);

  // Step 0: project the initial data.
  auto space = std::make_shared<const DgSpace>(cfg.degree, mesh.aspect());
  DGField u0(space, mesh.nx(), mesh.ny());
  project(spec.initial, mesh, u0);

  SolverOptions opt;
  opt.cfl = cfg.cfl;
  opt.pp_limiter = cfg.pp_limiter && spec.pp_limiter;
  opt.tvb_m = cfg.tvb_m.value_or(spec.tvb_m);
  opt.threads = cfg.threads;

  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec || !fs::is_directory(cfg.out)) {
    res.exit_code = kExitIo;
    res.message = "cannot create output directory " + cfg.out;
    return res;
  }
  const fs::path dir(cfg.out);
  const bool tube = spec.id == "rotated_tube";

  auto dump = [&](const DGField& f, double t, long index) {
    for (auto [fmt, ext] : {std::pair{SnapshotFormat::Csv, "csv"}, std::pair{SnapshotFormat::Vtk, "vtk"}}) {
      const std::string p = (dir / snapshot_name("snap", index, ext)).string();
      write_snapshot(f, mesh, spec.gamma, t, p, fmt);
      res.files.push_back(p);
    }
    if (tube) {
      const std::string p = (dir / snapshot_name("cut", index, "csv")).string();
      write_row_cut(f, mesh, spec.gamma, 0, p);
      res.files.push_back(p);
    }
  };
  auto write_report = [&] {
    const std::string p = (dir / "report.csv").string();
    try {
      res.report.write_csv(p);
    } catch (const Error& e) {
      throw IoError(e.what());
    }
    res.files.push_back(p);
  };

  try {
    Solver solver(mesh, std::move(u0), eos, opt);
    long last_dump = -1;
    dump(solver.field(), solver.time(), 0);
    last_dump = 0;
    try {
      // Steps 1-4 of every time step happen inside Solver::step.
      solver.run(t_end, [&](const StepRecord& r) {
        res.report.add(r);
        if (cfg.dump_every > 0 && solver.steps() % cfg.dump_every == 0) {
          dump(solver.field(), solver.time(), solver.steps());
          last_dump = solver.steps();
        }
        if (log && solver.steps() % 100 == 0) {
          *log << "step " << solver.steps() << " t=" << r.t << " dt=" << r.dt << " theta=" << r.theta << '\n';
        }
      });
    } catch (const PositivityError& e) {
      res.exit_code = kExitPositivity;
      res.message = positivity_message(e.what());
      res.t_final = solver.time();
      write_report();
      std::ofstream f = open_out((dir / "failure.txt").string());
      f << res.message << '\n';
      finish(f, (dir / "failure.txt").string());
      if (log) *log << res.message << '\n';
      return res;
    }
    res.t_final = solver.time();
    if (last_dump != solver.steps()) dump(solver.field(), solver.time(), solver.steps());
    if (spec.exact) {
      const double t = solver.time();
      auto exact = [&](double x, double y) { return spec.exact(x, y, t); };
      const ErrorNorms e = error_norms(solver.field(), mesh, exact);
      res.report.set_errors(e);
      const std::string p = (dir / "errors.csv").string();
      std::ofstream f = open_out(p);
      static const char* const names[kNumVars] = {"rho", "mx", "my", "mz", "Bx", "By", "Bz", "E"};
      f << "component,l1,l2,linf\n";
      for (int k = 0; k < kNumVars; ++k) f << names[k] << ',' << e.l1[k] << ',' << e.l2[k] << ',' << e.linf[k] << '\n';
      finish(f, p);
      res.files.push_back(p);
    }
    write_report();
    if (log) *log << "completed " << solver.steps() << " steps, t=" << solver.time() << '\n';
  } catch (const IoError& e) {
    res.exit_code = kExitIo;
    res.message = e.what();
  } catch (const PositivityError& e) {
    // Initial data outside the admissible set.
    res.exit_code = kExitPositivity;
    res.message = positivity_message(e.what());
    std::ofstream f((dir / "failure.txt").string());
    f << res.message << '\n';
    if (log) *log << res.message << '\n';
  }
  return res;
}

}  // namespace ppmhd
