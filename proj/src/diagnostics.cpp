#include "ppmhd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "ppmhd/physics.hpp"
#include "ppmhd/problems.hpp"
#include "ppmhd/quadrature.hpp"

namespace ppmhd {

// ---------------------------------------------------------------- error norms

ErrorNorms error_norms(const DGField& field, const Mesh& mesh, const ExactFunction& exact, int points) {
  if (!exact) throw Error("error_norms: exact solution is empty");
  const DgSpace& sp = field.space();
  const int n = points > 0 ? points : sp.degree() + 3;
  const QuadratureSet q = gauss_legendre(n);
  ErrorNorms e;
  const double area = (mesh.xmax() - mesh.xmin()) * (mesh.ymax() - mesh.ymin());
  const double cell = mesh.dx() * mesh.dy();
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      const double* c = field.cell(i, j);
      for (int b = 0; b < n; ++b) {
        for (int a = 0; a < n; ++a) {
          const double xi = q.nodes[static_cast<std::size_t>(a)];
          const double eta = q.nodes[static_cast<std::size_t>(b)];
          const double w = q.weights[static_cast<std::size_t>(a)] * q.weights[static_cast<std::size_t>(b)] * cell / area;
          const StateArray u = sp.evaluate_at(c, xi, eta);
          const StateArray ex = exact(mesh.xc(i) + xi * mesh.dx(), mesh.yc(j) + eta * mesh.dy());
          for (int k = 0; k < kNumVars; ++k) {
            const double d = std::abs(u[k] - ex[k]);
            e.l1[k] += w * d;
            e.l2[k] += w * d * d;
            e.linf[k] = std::max(e.linf[k], d);
          }
        }
      }
    }
  }
  for (double& v : e.l2) v = std::sqrt(v);
  return e;
}

std::vector<std::optional<double>> convergence_rates(const std::vector<double>& errors) {
  if (errors.size() < 2) throw Error("convergence_rates: need at least two mesh levels");
  std::vector<std::optional<double>> r;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    const double a = errors[k];
    const double b = errors[k + 1];
    if (a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b)) r.emplace_back(std::log2(a / b));
    else r.emplace_back(std::nullopt);
  }
  return r;
}

// ----------------------------------------------------------------- run report

void RunReport::add(const StepRecord& r) {
  if (!records_.empty() && !(r.t > records_.back().t)) throw Error("RunReport: records must increase strictly in t");
  records_.push_back(r);
}

double RunReport::min_theta() const {
  double m = 1.0;
  for (const auto& r : records_) m = std::min(m, r.theta);
  return m;
}

double RunReport::max_vartheta_ratio() const {
  double m = 0.0;
  for (const auto& r : records_) m = std::max({m, r.vartheta1_ratio, r.vartheta2_ratio});
  return m;
}

double RunReport::min_rho() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : records_) m = std::min(m, r.min_rho);
  return m;
}

double RunReport::min_p() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : records_) m = std::min(m, r.min_p);
  return m;
}

void RunReport::write_csv(std::ostream& os) const {
  os << kCsvHeader << '\n';
  os << std::setprecision(17);
  for (const auto& r : records_) {
    os << r.t << ',' << r.dt << ',' << r.theta << ',' << r.vartheta1_ratio << ',' << r.vartheta2_ratio << ','
       << r.max_div << ',' << r.limited_cells << ',' << r.min_rho << ',' << r.min_p << '\n';
  }
}

void RunReport::write_csv(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw Error("cannot open " + path + " for writing");
  write_csv(f);
  if (!f) throw Error("write failed: " + path);
}

// ------------------------------------------------------------------ schlieren

std::vector<double> schlieren(const std::vector<double>& rho, int nx, int ny, double dx, double dy, double c) {
  if (nx < 1 || ny < 1 || rho.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
    throw Error("schlieren: grid size mismatch");
  }
  auto at = [&](int i, int j) { return rho[static_cast<std::size_t>(j) * nx + i]; };
  auto diff = [](double hi, double lo, int span, double h) { return span > 0 ? (hi - lo) / (span * h) : 0.0; };
  std::vector<double> g(rho.size());
  double gmax = 0.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int il = std::max(i - 1, 0), ir = std::min(i + 1, nx - 1);
      const int jb = std::max(j - 1, 0), jt = std::min(j + 1, ny - 1);
      const double gx = diff(at(ir, j), at(il, j), ir - il, dx);
      const double gy = diff(at(i, jt), at(i, jb), jt - jb, dy);
      const double m = std::hypot(gx, gy);
      g[static_cast<std::size_t>(j) * nx + i] = m;
      gmax = std::max(gmax, m);
    }
  }
  for (double& v : g) v = gmax > 0.0 ? std::exp(-c * v / gmax) : 1.0;
  return g;
}

// --------------------------------------------------------------- theory suite

namespace {

const char* const kChecks[] = {"gstar_positive", "gstar_negative",  "convexity",      "lf_density",      "source_identity",
                               "source_bound",   "split_positive",  "alpha_bound_2a", "alpha_bound_jump"};

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  double log_uniform(double a, double b) { return std::pow(10.0, uniform(a, b)); }
  Vec3 vec(double r) { return {uniform(-r, r), uniform(-r, r), uniform(-r, r)}; }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  StateArray state(double gamma) {
    const double rho = log_uniform(-2.0, 2.0);
    const double p = log_uniform(-3.0, 3.0);
    const Vec3 v = vec(pick(2) ? 10.0 : 1.0);
    const Vec3 B = vec(pick(2) ? 10.0 : 1.0);
    return conserved_from_primitive(rho, v, B, p, gamma);
  }

  StateArray nearby(const StateArray& u, double gamma) {
    const double rho = u[kRho] * (1.0 + uniform(-0.1, 0.1));
    const double p = (gamma - 1.0) * kernel::internal_energy(u) * (1.0 + uniform(-0.1, 0.1));
    Vec3 v{}, B{};
    for (int k = 0; k < 3; ++k) {
      v[k] = u[kMx + k] / u[kRho] + uniform(-0.5, 0.5);
      B[k] = u[kBx + k] + uniform(-2.0, 2.0);
    }
    return conserved_from_primitive(rho, v, B, p, gamma);
  }

  StarDirection star(const StateArray& u) {
    StarDirection s;
    if (pick(4) == 0) {
      for (int k = 0; k < 3; ++k) {
        s.v_star[k] = u[kMx + k] / u[kRho] + uniform(-0.01, 0.01);
        s.B_star[k] = u[kBx + k] + uniform(-0.01, 0.01);
      }
    } else {
      s.v_star = vec(15.0);
      s.B_star = vec(15.0);
    }
    return s;
  }
};

std::string fmt_state(const StateArray& u) {
  std::ostringstream os;
  os << std::setprecision(17) << '(';
  for (int k = 0; k < kNumVars; ++k) os << (k ? ", " : "") << u[k];
  os << ')';
  return os.str();
}

std::string fmt_vec(const Vec3& v) {
  std::ostringstream os;
  os << std::setprecision(17) << '(' << v[0] << ", " << v[1] << ", " << v[2] << ')';
  return os.str();
}

double nstar(const StateArray& u, const StarDirection& s) {
  return nstar_functional(ConservedState::unchecked(u), s);
}

// Minimum over (v*, B*) of W.n* + |B*|^2 + c (v*.B*). Infinite descent is
// reported as -inf.
double split_minimum(const StateArray& w, double c) {
  const double det = 2.0 * w[kRho] - c * c;
  if (!(w[kRho] > 0.0) || !(det > 0.0)) return -std::numeric_limits<double>::infinity();
  double q = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double m = w[kMx + k];
    const double b = w[kBx + k];
    q += (2.0 * m * m - 2.0 * c * m * b + w[kRho] * b * b) / det;
  }
  return w[kEnergy] - 0.5 * q;
}

// Argmin of the same quadratic, for reporting and for a direct evaluation.
StarDirection split_argmin(const StateArray& w, double c) {
  const double det = 2.0 * w[kRho] - c * c;
  StarDirection s;
  for (int k = 0; k < 3; ++k) {
    const double m = w[kMx + k];
    const double b = w[kBx + k];
    s.v_star[k] = (2.0 * m - c * b) / det;
    s.B_star[k] = (-c * m + w[kRho] * b) / det;
  }
  return s;
}

}  // namespace

long TheoryCheckReport::violations() const {
  long n = 0;
  for (const auto& c : counts) n += c.second;
  return n;
}

long TheoryCheckReport::violations(const std::string& check) const {
  for (const auto& c : counts) {
    if (c.first == check) return c.second;
  }
  throw Error("unknown check: " + check);
}

std::string TheoryCheckReport::summary() const {
  std::ostringstream os;
  os << "seed " << seed << ", " << trials << " trials:";
  for (const auto& c : counts) os << ' ' << c.first << '=' << c.second;
  os << ", dropped-term negative found: " << (dropped_term_negative ? "yes" : "no");
  for (const auto& e : examples) os << "\n  [" << e.check << "] trial " << e.trial << ": " << e.inputs;
  return os.str();
}

TheoryCheckReport theory_check_suite(const TheoryCheckOptions& opt) {
  if (opt.trials < 1) throw Error("theory_check_suite: trials must be at least 1");
  TheoryCheckReport rep;
  rep.seed = opt.seed;
  rep.trials = opt.trials;
  std::vector<long> counts(std::size(kChecks), 0);
  Sampler smp(opt.seed);

  auto fail = [&](int check, long trial, const std::string& inputs) {
    ++counts[static_cast<std::size_t>(check)];
    if (static_cast<int>(rep.examples.size()) < opt.max_examples) {
      rep.examples.push_back({kChecks[check], opt.seed, trial, inputs});
    }
  };

  for (long t = 0; t < opt.trials; ++t) {
    const double gamma = smp.uniform(1.05, 3.0);
    const StateArray u = smp.state(gamma);
    const int mode = smp.pick(10);
    const StateArray ut = mode == 0 ? u : (mode < 4 ? smp.nearby(u, gamma) : smp.state(gamma));
    const int dir = smp.pick(3);
    const StarDirection s = smp.star(u);
    const double rho = u[kRho];
    const Vec3 v{u[kMx] / rho, u[kMy] / rho, u[kMz] / rho};
    const Vec3 B{u[kBx], u[kBy], u[kBz]};
    auto base_inputs = [&] {
      std::ostringstream os;
      os << std::setprecision(17) << "gamma=" << gamma << " U=" << fmt_state(u) << " v*=" << fmt_vec(s.v_star)
         << " B*=" << fmt_vec(s.B_star);
      return os.str();
    };

    // The admissible set and its linear characterization.
    const double ns = nstar(u, s);
    if (!(ns > 0.0)) fail(0, t, base_inputs() + " nstar=" + std::to_string(ns));
    {
      StateArray bad = u;
      const double deficit = smp.log_uniform(-3.0, 0.0);
      bad[kEnergy] -= kernel::internal_energy(u) + deficit;
      StarDirection sb{v, B};
      const double nb = nstar(bad, sb);
      if (!(nb <= 0.0)) fail(1, t, "gamma=" + std::to_string(gamma) + " U=" + fmt_state(bad));
    }

    // Convexity.
    {
      const double lam = smp.uniform(0.0, 1.0);
      StateArray w{};
      for (int k = 0; k < kNumVars; ++k) w[k] = lam * u[k] + (1.0 - lam) * ut[k];
      if (!kernel::is_admissible(w)) fail(2, t, "U=" + fmt_state(u) + " Ut=" + fmt_state(ut));
    }

    // Density of U -/+ F/alpha for alpha above |v_dir|.
    {
      const double a = std::abs(v[static_cast<std::size_t>(dir)]) * (1.0 + smp.uniform(1e-6, 1.0)) + 1e-12;
      StateArray f{};
      kernel::flux(u, dir, gamma, f);
      if (!(u[kRho] - f[kRho] / a > 0.0) || !(u[kRho] + f[kRho] / a > 0.0)) {
        fail(3, t, base_inputs() + " dir=" + std::to_string(dir));
      }
    }

    // Source identity and bound.
    {
      StateArray src{};
      kernel::godunov_source(u, src);
      const double lhs = 0.5 * src[kRho] * norm2(s.v_star) - dot(Vec3{src[kMx], src[kMy], src[kMz]}, s.v_star) -
                         dot(Vec3{src[kBx], src[kBy], src[kBz]}, s.B_star) + src[kEnergy];
      Vec3 dv{}, dB{};
      for (int k = 0; k < 3; ++k) {
        dv[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k)] - s.v_star[static_cast<std::size_t>(k)];
        dB[static_cast<std::size_t>(k)] = B[static_cast<std::size_t>(k)] - s.B_star[static_cast<std::size_t>(k)];
      }
      const double rhs = dot(dv, dB) - dot(s.v_star, s.B_star);
      const double scale = 1.0 + std::sqrt(norm2(v) * norm2(B)) + std::sqrt(norm2(s.v_star) * norm2(s.B_star)) +
                           std::sqrt(norm2(v) * norm2(s.B_star)) + std::sqrt(norm2(s.v_star) * norm2(B));
      if (!(std::abs(lhs - rhs) <= 1e-12 * scale)) fail(4, t, base_inputs());
      if (!(std::abs(std::sqrt(rho) * dot(dv, dB)) < ns)) fail(5, t, base_inputs());
    }

    // Two-state splitting inequality with alpha = factor * bound.
    {
      const double bound = kernel::pp_viscosity_alpha(u, ut, dir, gamma);
      const double alpha = opt.alpha_factor * bound;
      StateArray f{}, ft{}, w{};
      kernel::flux(u, dir, gamma, f);
      kernel::flux(ut, dir, gamma, ft);
      for (int k = 0; k < kNumVars; ++k) w[k] = u[k] - f[k] / alpha + ut[k] + ft[k] / alpha;
      const double c = (u[kBx + dir] - ut[kBx + dir]) / alpha;
      const double mn = split_minimum(w, c);
      const ConservedState U = ConservedState::unchecked(u);
      const ConservedState Ut = ConservedState::unchecked(ut);
      const EosIdeal eos(gamma);
      const double at_s = split_lhs(U, Ut, s, alpha, static_cast<Axis>(dir), eos);
      if (!(mn > 0.0) || !(at_s > 0.0)) {
        std::ostringstream os;
        os << std::setprecision(17) << "gamma=" << gamma << " dir=" << dir << " alpha=" << alpha << " U=" << fmt_state(u)
           << " Ut=" << fmt_state(ut);
        if (std::isfinite(mn)) {
          const StarDirection m = split_argmin(w, c);
          os << " v*=" << fmt_vec(m.v_star) << " B*=" << fmt_vec(m.B_star) << " min=" << mn;
        } else {
          os << " unbounded below";
        }
        fail(6, t, os.str());
      }
      if (!rep.dropped_term_negative) {
        const double m0 = split_minimum(w, 0.0);
        if (m0 < 0.0) {
          rep.dropped_term_negative = true;
          const StarDirection m = split_argmin(w, 0.0);
          std::ostringstream os;
          os << std::setprecision(17) << "gamma=" << gamma << " dir=" << dir << " alpha=" << alpha
             << " U=" << fmt_state(u) << " Ut=" << fmt_state(ut) << " v*=" << fmt_vec(m.v_star)
             << " B*=" << fmt_vec(m.B_star) << " value=" << m0;
          rep.dropped_term_example = os.str();
        }
      }

      // Upper bounds on the splitting bound.
      const double ra = kernel::spectral_radius(u, dir, gamma);
      const double rb = kernel::spectral_radius(ut, dir, gamma);
      const double a = std::max(ra, rb);
      double va = 0.0, ca = 0.0, vb = 0.0, cb = 0.0;
      kernel::pp_bound_speeds(u, dir, gamma, va, ca);
      kernel::pp_bound_speeds(ut, dir, gamma, vb, cb);
      double dB2 = 0.0;
      for (int k = 0; k < 3; ++k) dB2 += (u[kBx + k] - ut[kBx + k]) * (u[kBx + k] - ut[kBx + k]);
      const double jump = a + std::sqrt(dB2) / std::sqrt(2.0 * (u[kRho] + ut[kRho])) +
                          std::min(std::abs(std::abs(va) - std::abs(vb)), std::abs(ca - cb));
      const double tol = 1.0 + 1e-12;
      auto pair_inputs = [&] {
        std::ostringstream os;
        os << std::setprecision(17) << "gamma=" << gamma << " dir=" << dir << " U=" << fmt_state(u)
           << " Ut=" << fmt_state(ut) << " alpha=" << bound;
        return os.str();
      };
      if (!(bound <= 2.0 * a * tol)) fail(7, t, pair_inputs());
      if (!(bound <= jump * tol)) fail(8, t, pair_inputs());
    }
  }
  for (std::size_t k = 0; k < std::size(kChecks); ++k) rep.counts.emplace_back(kChecks[k], counts[k]);
  return rep;
}

// ------------------------------------------------------------- pressure probe

AppendixAProbe appendixA_probe(double epsilon, int n, double gamma, bool with_source, int steps, double dt) {
  if (n < 3 || n % 2 == 0) throw Error("appendixA_probe: n must be odd and at least 3");
  if (steps < 2 || !(dt > 0.0)) throw Error("appendixA_probe: need at least two positive steps");
  const ProblemSpec spec = make_problem("appendixA", {{"epsilon", epsilon}, {"nx", n}, {"ny", n}, {"gamma", gamma}});
  const Mesh mesh(spec.mesh_config());
  auto space = std::make_shared<const DgSpace>(2, mesh.aspect());
  DGField u(space, mesh.nx(), mesh.ny());
  project(spec.initial, mesh, u);
  const EosIdeal eos(spec.gamma);
  SolverOptions opt;
  opt.pp_limiter = false;
  opt.include_source = with_source;
  opt.fixed_dt = dt;
  opt.cfl = 1.0;
  Solver solver(mesh, std::move(u), eos, opt);
  const int c = n / 2;
  AppendixAProbe out;
  auto sample = [&] {
    out.times.push_back(solver.time());
    out.pressures.push_back(eos.pressure(kernel::internal_energy(solver.field().average(c, c))));
  };
  sample();
  for (int s = 0; s < steps; ++s) {
    solver.step(solver.time() + dt);
    sample();
  }
  // Least-squares quadratic p = a + b tau + c tau^2 in tau = t / dt.
  double S[5] = {0, 0, 0, 0, 0}, T[3] = {0, 0, 0};
  for (std::size_t k = 0; k < out.times.size(); ++k) {
    const double t = out.times[k] / dt;
    double tp = 1.0;
    for (int e = 0; e < 5; ++e) {
      if (e < 3) T[e] += tp * out.pressures[k];
      S[e] += tp;
      tp *= t;
    }
  }
  double A[3][4] = {{S[0], S[1], S[2], T[0]}, {S[1], S[2], S[3], T[1]}, {S[2], S[3], S[4], T[2]}};
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    }
    for (int k = 0; k < 4; ++k) std::swap(A[col][k], A[piv][k]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = A[r][col] / A[col][col];
      for (int k = col; k < 4; ++k) A[r][k] -= f * A[col][k];
    }
  }
  out.dpdt = A[1][3] / A[1][1] / dt;
  return out;
}

}  // namespace ppmhd
