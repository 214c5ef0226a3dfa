#include "ppmhd/limiters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ppmhd/parallel.hpp"

namespace ppmhd {

PPPointSet pp_point_set(const DgSpace& space) {
  PPPointSet s;
  const PointTable& t = space.pp_points();
  for (int p = 0; p < t.size(); ++p) s.points.push_back({t.x[p], t.y[p]});
  return s;
}

namespace {

// Internal energy along the segment from the average a to the point value u.
double energy_on_segment(const StateArray& a, const StateArray& u, double t) {
  StateArray w{};
  for (int k = 0; k < kNumVars; ++k) w[k] = a[k] + t * (u[k] - a[k]);
  return kernel::internal_energy(w);
}

void scale_modes(const DgSpace& sp, double* c, double theta, bool density_only) {
  const int ns = sp.ns();
  const int slots = density_only ? 1 : 6;
  for (int slot = 0; slot < slots; ++slot) {
    for (int k = 1; k < ns; ++k) c[slot * ns + k] *= theta;
  }
  if (density_only) return;
  double* cv = c + 6 * ns;
  for (int k = DivFreeBasis::kConstantMembers; k < sp.nv(); ++k) cv[k] *= theta;
}

}  // namespace

PpLimitResult pp_limit_cell(const DgSpace& sp, double* c, double eps_rho, double eps_e) {
  PpLimitResult res;
  const StateArray avg = sp.average(c);
  if (!kernel::is_admissible(avg)) {
    std::ostringstream os;
    os << "pp_limit_cell: inadmissible cell average (rho = " << avg[kRho]
       << ", internal energy = " << kernel::internal_energy(avg) << ")";
    throw PositivityError(os.str());
  }
  if (sp.degree() == 0) return res;
  const PointTable& t = sp.pp_points();
  const int np = t.size();
  thread_local std::vector<StateArray> pts;
  pts.resize(static_cast<std::size_t>(np));
  auto refresh = [&] {
    for (int p = 0; p < np; ++p) sp.evaluate(c, t, p, pts[static_cast<std::size_t>(p)]);
  };
  refresh();
  // Energies are differences of O(E) terms, so the floor must sit above their
  // rounding error.
  double scale = 0.0, rho_scale = 0.0;
  double rho_min = std::numeric_limits<double>::infinity();
  for (const StateArray& u : pts) {
    scale = std::max(scale, std::abs(u[kEnergy]));
    rho_scale = std::max(rho_scale, std::abs(u[kRho]));
    rho_min = std::min(rho_min, u[kRho]);
  }
  // Values within this band of a floor count as on it, so a second pass
  // leaves a limited cell alone.
  constexpr double kBand = 32.0 * std::numeric_limits<double>::epsilon();
  const double er = std::min(eps_rho, avg[kRho]);
  const double ee = std::min(std::max(eps_e, 64.0 * std::numeric_limits<double>::epsilon() * scale),
                             kernel::internal_energy(avg));

  if (rho_min < er - kBand * rho_scale) {
    res.theta1 = std::clamp((avg[kRho] - er) / (avg[kRho] - rho_min), 0.0, 1.0);
    scale_modes(sp, c, res.theta1, true);
    res.changed = true;
    refresh();
  }

  double theta2 = 1.0;
  for (const StateArray& u : pts) {
    if (kernel::internal_energy(u) >= ee - kBand * scale) continue;
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-16) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (energy_on_segment(avg, u, mid) >= ee) lo = mid;
      else hi = mid;
    }
    theta2 = std::min(theta2, lo);
  }
  if (theta2 < 1.0) {
    res.theta2 = theta2;
    scale_modes(sp, c, theta2, false);
    res.changed = true;
    refresh();
  }

  // Guard against rounding in the re-evaluated point values.
  for (int pass = 0; pass < 64; ++pass) {
    bool ok = true;
    for (int p = 0; p < np && ok; ++p) ok = kernel::is_admissible(pts[static_cast<std::size_t>(p)]);
    if (ok) break;
    const double f = pass < 63 ? 0.5 : 0.0;
    scale_modes(sp, c, f, false);
    res.theta2 *= f;
    res.changed = true;
    refresh();
  }
  return res;
}

int pp_limit(DGField& field, double eps_rho, double eps_e, int threads) {
  const int ny = field.ny();
  const int nx = field.nx();
  threads = std::max(1, threads);
  std::vector<int> counts(static_cast<std::size_t>(threads), 0);
  parallel_for(ny, threads, [&](int b, int e, int w) {
    for (int j = b; j < e; ++j) {
      for (int i = 0; i < nx; ++i) {
        try {
          if (pp_limit_cell(field.space(), field.cell(i, j), eps_rho, eps_e).changed) ++counts[static_cast<std::size_t>(w)];
        } catch (const PositivityError& err) {
          std::ostringstream os;
          os << err.what() << " at cell (" << i << ", " << j << ")";
          throw PositivityError(os.str());
        }
      }
    }
  });
  int total = 0;
  for (int n : counts) total += n;
  return total;
}

PointMinima pp_point_minima(const DGField& field, const EosIdeal& eos) {
  PointMinima m{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  const DgSpace& sp = field.space();
  const PointTable& t = sp.pp_points();
  StateArray u{};
  for (int j = 0; j < field.ny(); ++j) {
    for (int i = 0; i < field.nx(); ++i) {
      for (int p = 0; p < t.size(); ++p) {
        sp.evaluate(field.cell(i, j), t, p, u);
        m.rho = std::min(m.rho, u[kRho]);
        m.p = std::min(m.p, eos.pressure(kernel::internal_energy(u)));
      }
    }
  }
  return m;
}

namespace {

double minmod(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
  return 0.0;
}

double tvb_minmod(double a, double b, double c, double tol) {
  if (std::abs(a) <= tol) return a;
  return minmod(a, b, c);
}

StateArray face_mean(const DgSpace& sp, const double* c, int f) {
  const PointTable& t = sp.face(f);
  StateArray m{}, u{};
  for (int mu = 0; mu < t.size(); ++mu) {
    sp.evaluate(c, t, mu, u);
    for (int k = 0; k < kNumVars; ++k) m[k] += t.weight[mu] * u[k];
  }
  return m;
}

}  // namespace

TvbResult tvb_limit(DGField& field, const Mesh& mesh, double M, int threads) {
  const int nx = mesh.nx();
  const int ny = mesh.ny();
  TvbResult res;
  res.trouble.assign(static_cast<std::size_t>(nx * ny), 0);
  if (M < 0.0 || field.degree() == 0) return res;
  const DgSpace& sp = field.space();
  const double tol_x = M * mesh.dx() * mesh.dx();
  const double tol_y = M * mesh.dy() * mesh.dy();

  // Decide on the unmodified field, then rewrite troubled cells.
  std::vector<std::array<StateArray, 2>> slopes(static_cast<std::size_t>(nx * ny));
  parallel_for(ny, threads, [&](int b, int e, int) {
    for (int j = b; j < e; ++j) {
      for (int i = 0; i < nx; ++i) {
        const double* c = field.cell(i, j);
        const StateArray a = sp.average(c);
        const StateArray al = sp.average(field.cell(i - 1, j));
        const StateArray ar = sp.average(field.cell(i + 1, j));
        const StateArray ab = sp.average(field.cell(i, j - 1));
        const StateArray at = sp.average(field.cell(i, j + 1));
        const StateArray fl = face_mean(sp, c, kLeft);
        const StateArray fr = face_mean(sp, c, kRight);
        const StateArray fb = face_mean(sp, c, kBottom);
        const StateArray ft = face_mean(sp, c, kTop);
        bool bad = false;
        auto& s = slopes[static_cast<std::size_t>(j * nx + i)];
        for (int k = 0; k < kNumVars; ++k) {
          const double dxp = ar[k] - a[k];
          const double dxm = a[k] - al[k];
          const double dyp = at[k] - a[k];
          const double dym = a[k] - ab[k];
          const double ur = fr[k] - a[k];
          const double ul = a[k] - fl[k];
          const double ut = ft[k] - a[k];
          const double ub = a[k] - fb[k];
          if (tvb_minmod(ur, dxp, dxm, tol_x) != ur || tvb_minmod(ul, dxp, dxm, tol_x) != ul ||
              tvb_minmod(ut, dyp, dym, tol_y) != ut || tvb_minmod(ub, dyp, dym, tol_y) != ub) {
            bad = true;
          }
          s[0][k] = minmod(0.5 * (fr[k] - fl[k]), dxp, dxm);
          s[1][k] = minmod(0.5 * (ft[k] - fb[k]), dyp, dym);
        }
        res.trouble[static_cast<std::size_t>(j * nx + i)] = bad ? 1 : 0;
      }
    }
  });

  const PointTable& pt = sp.projection();
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!res.trouble[static_cast<std::size_t>(j * nx + i)]) continue;
      ++res.troubled;
      double* c = field.cell(i, j);
      const StateArray a = sp.average(c);
      const auto& s = slopes[static_cast<std::size_t>(j * nx + i)];
      std::vector<StateArray> vals(static_cast<std::size_t>(pt.size()));
      for (int p = 0; p < pt.size(); ++p) {
        for (int k = 0; k < kNumVars; ++k) vals[static_cast<std::size_t>(p)][k] = a[k] + 2.0 * pt.x[p] * s[0][k] + 2.0 * pt.y[p] * s[1][k];
      }
      sp.project_values(vals, c);
    }
  }
  return res;
}

}  // namespace ppmhd
