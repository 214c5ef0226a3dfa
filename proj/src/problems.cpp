#include "ppmhd/problems.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace ppmhd {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt4Pi = std::sqrt(4.0 * kPi);

double wrap(double x, double lo, double hi) {
  const double L = hi - lo;
  double r = std::fmod(x - lo, L);
  if (r < 0.0) r += L;
  return lo + r;
}

std::array<BoundaryKind, 4> all(const BoundaryKind& b) { return {b, b, b, b}; }

StateArray sine_state(double x, double y, double t) {
  return conserved_from_primitive(1.0 + 0.99 * std::sin(x + y - 2.0 * t), {1.0, 1.0, 0.0}, {0.1, 0.1, 0.0}, 1.0, 1.4);
}

constexpr double kVortexMu = 5.389489439;

StateArray vortex_state(double x, double y) {
  const double r2 = x * x + y * y;
  const double mu = kVortexMu;
  const double ev = std::exp(0.5 * (1.0 - r2));
  const double dv = mu / (std::sqrt(2.0) * kPi) * ev;
  const double db = mu / (2.0 * kPi) * ev;
  const double dp = -mu * mu * (1.0 + r2) / (8.0 * kPi * kPi) * std::exp(1.0 - r2);
  return conserved_from_primitive(1.0, {1.0 - dv * y, 1.0 + dv * x, 0.0}, {-db * y, db * x, 0.0}, 1.0 + dp, 5.0 / 3.0);
}

StateArray vortex_exact(double x, double y, double t) {
  return vortex_state(wrap(x - t, -10.0, 10.0), wrap(y - t, -10.0, 10.0));
}

StateArray constant_state() {
  return conserved_from_primitive(1.0, {0.5, 0.25, 0.1}, {0.3, 0.2, 0.1}, 1.0, 5.0 / 3.0);
}

double take(ProblemOverrides& o, const std::string& key, double fallback) {
  auto it = o.find(key);
  if (it == o.end()) return fallback;
  const double v = it->second;
  o.erase(it);
  return v;
}

std::string id_list() {
  std::ostringstream os;
  const auto& ids = problem_ids();
  for (std::size_t k = 0; k < ids.size(); ++k) os << (k ? ", " : "") << ids[k];
  return os.str();
}

}  // namespace

StateArray conserved_from_primitive(double rho, const Vec3& v, const Vec3& B, double p, double gamma) {
  const double ke = 0.5 * rho * norm2(v);
  const double me = 0.5 * norm2(B);
  return {rho, rho * v[0], rho * v[1], rho * v[2], B[0], B[1], B[2], p / (gamma - 1.0) + ke + me};
}

const std::vector<std::string>& problem_ids() {
  static const std::vector<std::string> ids{"smooth_sine", "smooth_vortex", "shock_cloud", "rotated_tube",
                                            "blast_standard", "blast_extreme", "jet", "appendixA",
                                            "orszag_tang", "rotor", "constant"};
  return ids;
}

MeshConfig ProblemSpec::mesh_config() const {
  MeshConfig c;
  c.nx = nx;
  c.ny = ny;
  c.xmin = xmin;
  c.xmax = xmax;
  c.ymin = ymin;
  c.ymax = ymax;
  c.bc = bc;
  return c;
}

ProblemSpec make_problem(const std::string& id, const ProblemOverrides& overrides) {
  ProblemOverrides o = overrides;
  ProblemSpec s;
  s.id = id;
  const double nx_in = take(o, "nx", 0.0);
  const double ny_in = take(o, "ny", 0.0);
  auto mesh = [&](int nx, int ny) {
    s.nx = nx_in > 0 ? static_cast<int>(nx_in) : nx;
    s.ny = ny_in > 0 ? static_cast<int>(ny_in) : ny;
  };

  if (id == "smooth_sine") {
    s.xmax = s.ymax = 2.0 * kPi;
    mesh(60, 60);
    s.gamma = 1.4;
    s.t_end = 0.1;
    s.bc = all(BoundaryKind::periodic());
    s.initial = [](double x, double y) { return sine_state(x, y, 0.0); };
    s.exact = sine_state;
  } else if (id == "smooth_vortex") {
    s.xmin = s.ymin = -10.0;
    s.xmax = s.ymax = 10.0;
    mesh(40, 40);
    s.gamma = 5.0 / 3.0;
    s.t_end = 0.05;
    s.bc = all(BoundaryKind::periodic());
    s.initial = vortex_state;
    s.exact = vortex_exact;
  } else if (id == "shock_cloud") {
    mesh(200, 200);
    s.gamma = 5.0 / 3.0;
    s.t_end = 0.06;
    const double g = s.gamma;
    const StateArray left =
        conserved_from_primitive(3.86859, {0, 0, 0}, {0, 2.1826182, -2.1826182}, 167.345, g);
    const StateArray right =
        conserved_from_primitive(1.0, {-11.2536, 0, 0}, {0, 0.56418958, 0.56418958}, 1.0, g);
    const StateArray cloud =
        conserved_from_primitive(10.0, {-11.2536, 0, 0}, {0, 0.56418958, 0.56418958}, 1.0, g);
    s.bc = all(BoundaryKind::outflow());
    s.bc[kSideRight] = BoundaryKind::inflow(ConservedState(right));
    s.initial = [=](double x, double y) {
      if (x < 0.6) return left;
      const double r2 = (x - 0.8) * (x - 0.8) + (y - 0.5) * (y - 0.5);
      return r2 < 0.15 * 0.15 ? cloud : right;
    };
    s.tvb_m = 50.0;
  } else if (id == "rotated_tube") {
    mesh(256, 2);
    const int shift = static_cast<int>(take(o, "shift", static_cast<double>(s.ny)));
    s.ymax = static_cast<double>(s.ny) / s.nx;
    s.gamma = 5.0 / 3.0;
    s.t_end = 0.08 * std::cos(kPi / 4.0);
    const double g = s.gamma;
    const double b = 5.0 / kSqrt4Pi;
    const double r = 1.0 / std::sqrt(2.0);
    // (v_par, v_perp) -> Cartesian for the 45 degree rotation.
    auto rot = [=](double par, double perp) { return Vec3{r * (par - perp), r * (par + perp), 0.0}; };
    const StateArray left = conserved_from_primitive(1.0, rot(10.0, 0.0), rot(b, b), 20.0, g);
    const StateArray right = conserved_from_primitive(1.0, rot(-10.0, 0.0), rot(b, b), 1.0, g);
    const double pos = 0.5 + 0.5 * s.ymax;
    s.bc[kSideLeft] = BoundaryKind::inflow(ConservedState(left));
    s.bc[kSideRight] = BoundaryKind::inflow(ConservedState(right));
    s.bc[kSideBottom] = BoundaryKind::shifted_periodic(shift);
    s.bc[kSideTop] = BoundaryKind::shifted_periodic(shift);
    s.initial = [=](double x, double y) { return x + y < pos ? left : right; };
    s.tvb_m = 50.0;
  } else if (id == "blast_standard" || id == "blast_extreme") {
    const bool extreme = id == "blast_extreme";
    s.xmin = s.ymin = -0.5;
    s.xmax = s.ymax = 0.5;
    mesh(128, 128);
    s.gamma = 1.4;
    s.t_end = extreme ? 0.001 : 0.01;
    const double pe = extreme ? 1e4 : 1e3;
    const double pa = 0.1;
    const double ba = (extreme ? 1000.0 : 100.0) / kSqrt4Pi;
    const double g = s.gamma;
    s.bc = all(BoundaryKind::outflow());
    s.initial = [=](double x, double y) {
      const double p = x * x + y * y < 0.01 ? pe : pa;
      return conserved_from_primitive(1.0, {0, 0, 0}, {ba, 0, 0}, p, g);
    };
    s.tvb_m = 50.0;
  } else if (id == "jet") {
    const int jet_case = static_cast<int>(take(o, "jet_case", 3.0));
    if (jet_case < 1 || jet_case > 3) throw Error("make_problem: jet_case must be 1, 2 or 3");
    const double ba = std::sqrt(200.0 * std::pow(10.0, jet_case - 1));
    s.xmax = 0.5;
    s.ymax = 1.5;
    mesh(100, 300);
    s.gamma = 1.4;
    s.t_end = 0.002;
    const double g = s.gamma;
    const StateArray ambient = conserved_from_primitive(0.1 * g, {0, 0, 0}, {0, ba, 0}, 1.0, g);
    const StateArray beam = conserved_from_primitive(g, {0, 800.0, 0}, {0, ba, 0}, 1.0, g);
    s.bc = all(BoundaryKind::outflow());
    s.bc[kSideLeft] = BoundaryKind::reflect();
    s.bc[kSideBottom] =
        BoundaryKind::inflow(ConservedState(beam), [](double x, double, double) { return std::abs(x) < 0.05; });
    s.initial = [=](double, double) { return ambient; };
    s.tvb_m = 50.0;
  } else if (id == "appendixA") {
    const double eps = take(o, "epsilon", 0.01);
    s.xmin = s.ymin = -1.0;
    s.xmax = s.ymax = 1.0;
    mesh(21, 21);
    s.gamma = take(o, "gamma", 5.0 / 3.0);
    s.t_end = 0.002;
    const double g = s.gamma;
    s.bc = all(BoundaryKind::outflow());
    s.initial = [=](double x, double y) {
      const double p = std::max(1.0 - std::exp(-(x * x + y * y)), 1e-12);
      const Vec3 B{1.0 + 0.5 * eps * std::atan(x), 1.0 + 0.5 * eps * std::atan(y), 0.0};
      return conserved_from_primitive(1.0, {1.0, 1.0, 0.0}, B, p, g);
    };
    s.pp_limiter = false;
  } else if (id == "orszag_tang") {
    s.xmax = s.ymax = 2.0 * kPi;
    mesh(128, 128);
    s.gamma = 5.0 / 3.0;
    s.t_end = 2.0;
    const double g = s.gamma;
    s.bc = all(BoundaryKind::periodic());
    s.initial = [=](double x, double y) {
      return conserved_from_primitive(g * g, {-std::sin(y), std::sin(x), 0.0}, {-std::sin(y), std::sin(2.0 * x), 0.0},
                                      g, g);
    };
    s.tvb_m = 50.0;
  } else if (id == "rotor") {
    mesh(200, 200);
    s.gamma = 1.4;
    s.t_end = 0.295;
    const double g = s.gamma;
    const double b = 5.0 / kSqrt4Pi;
    s.bc = all(BoundaryKind::outflow());
    s.initial = [=](double x, double y) {
      const double r0 = 0.1, r1 = 0.115, u0 = 2.0;
      const double dx = x - 0.5, dy = y - 0.5;
      const double r = std::sqrt(dx * dx + dy * dy);
      double rho = 1.0;
      Vec3 v{0, 0, 0};
      if (r < r0) {
        rho = 10.0;
        v = {-u0 * dy / r0, u0 * dx / r0, 0.0};
      } else if (r < r1) {
        const double f = (r1 - r) / (r1 - r0);
        rho = 1.0 + 9.0 * f;
        v = {-f * u0 * dy / r, f * u0 * dx / r, 0.0};
      }
      return conserved_from_primitive(rho, v, {b, 0, 0}, 1.0, g);
    };
    s.tvb_m = 50.0;
  } else if (id == "constant") {
    mesh(8, 8);
    s.gamma = 5.0 / 3.0;
    s.t_end = 0.1;
    s.bc = all(BoundaryKind::periodic());
    s.initial = [](double, double) { return constant_state(); };
    s.exact = [](double, double, double) { return constant_state(); };
  } else {
    throw Error("unknown problem '" + id + "'; valid ids: " + id_list());
  }
  if (!o.empty()) throw Error("make_problem: unknown parameter '" + o.begin()->first + "' for problem " + id);
  if (s.nx < 1 || s.ny < 1) throw Error("make_problem: mesh sizes must be positive");
  return s;
}

StateArray exact_solution(const std::string& id, double x, double y, double t) {
  if (id == "smooth_sine") return sine_state(x, y, t);
  if (id == "smooth_vortex") return vortex_exact(x, y, t);
  if (id == "constant") return constant_state();
  throw Error("exact_solution: no exact solution for problem '" + id + "'");
}

}  // namespace ppmhd
