#include "ppmhd/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ppmhd/parallel.hpp"

namespace ppmhd {

namespace {

// 0.5 (F(a) + F(b) - alpha (b - a)).
inline void lf_kernel(const StateArray& a, const StateArray& b, int dir, double alpha, double gamma, StateArray& out) {
  StateArray fa{}, fb{};
  kernel::flux(a, dir, gamma, fa);
  kernel::flux(b, dir, gamma, fb);
  for (int k = 0; k < kNumVars; ++k) out[k] = 0.5 * (fa[k] + fb[k] - alpha * (b[k] - a[k]));
}

std::string where(int i, int j) {
  std::ostringstream os;
  os << "cell (" << i << ", " << j << ")";
  return os.str();
}

const char* face_name(int f) {
  static const char* names[] = {"left", "right", "bottom", "top"};
  return names[f];
}

}  // namespace

StateArray lf_flux(const InterfaceTrace& trace, double alpha, const EosIdeal& eos) {
  if (!(alpha > 0.0)) throw Error("lf_flux: alpha must be positive");
  if (!(trace.left.rho() > 0.0) || !(trace.right.rho() > 0.0)) throw Error("lf_flux: nonpositive density");
  if (trace.axis == Axis::Z) throw Error("lf_flux: faces are normal to x or y");
  StateArray out{};
  lf_kernel(trace.left.data(), trace.right.data(), static_cast<int>(trace.axis), alpha, eos.gamma(), out);
  return out;
}

double interface_b_jump(const InterfaceTrace& trace) {
  const int n = kBx + static_cast<int>(trace.axis);
  return 0.5 * (trace.right[n] - trace.left[n]);
}

double discrete_divergence_fo(double b1_right, double b1_left, double b2_top, double b2_bottom, double dx, double dy) {
  return (b1_right - b1_left) / (2.0 * dx) + (b2_top - b2_bottom) / (2.0 * dy);
}

// ------------------------------------------------------------- first order

StateArray first_order_rhs(const Neighborhood& nb, double dx, double dy, double alpha1, double alpha2, double gamma,
                           bool include_penalty) {
  StateArray fr{}, fl{}, ft{}, fb{};
  lf_kernel(nb.center, nb.right, 0, alpha1, gamma, fr);
  lf_kernel(nb.left, nb.center, 0, alpha1, gamma, fl);
  lf_kernel(nb.center, nb.top, 1, alpha2, gamma, ft);
  lf_kernel(nb.bottom, nb.center, 1, alpha2, gamma, fb);
  StateArray out{};
  for (int k = 0; k < kNumVars; ++k) out[k] = -(fr[k] - fl[k]) / dx - (ft[k] - fb[k]) / dy;
  if (include_penalty) {
    const double div = discrete_divergence_fo(nb.right[kBx], nb.left[kBx], nb.top[kBy], nb.bottom[kBy], dx, dy);
    StateArray s{};
    kernel::godunov_source(nb.center, s);
    for (int k = 0; k < kNumVars; ++k) out[k] -= div * s[k];
  }
  return out;
}

StateArray first_order_update(const Neighborhood& nb, double dx, double dy, double alpha1, double alpha2, double dt,
                              double gamma, bool include_penalty) {
  const StateArray l = first_order_rhs(nb, dx, dy, alpha1, alpha2, gamma, include_penalty);
  StateArray out{};
  for (int k = 0; k < kNumVars; ++k) out[k] = nb.center[k] + dt * l[k];
  return out;
}

namespace {

void require_k0(const DGField& f, const Mesh& mesh, const char* who) {
  if (f.degree() != 0) throw Error(std::string(who) + ": expects a K = 0 field");
  if (f.nx() != mesh.nx() || f.ny() != mesh.ny()) throw Error(std::string(who) + ": field and mesh disagree");
}

Neighborhood gather(const DGField& f, int i, int j) {
  return {f.average(i, j), f.average(i - 1, j), f.average(i + 1, j), f.average(i, j - 1), f.average(i, j + 1)};
}

}  // namespace

double discrete_divergence_fo(const DGField& avgs, const Mesh& mesh, int i, int j) {
  require_k0(avgs, mesh, "discrete_divergence_fo");
  if (i < 0 || i >= mesh.nx() || j < 0 || j >= mesh.ny()) throw Error("discrete_divergence_fo: cell out of range");
  const Neighborhood nb = gather(avgs, i, j);
  return discrete_divergence_fo(nb.right[kBx], nb.left[kBx], nb.top[kBy], nb.bottom[kBy], mesh.dx(), mesh.dy());
}

FirstOrderBounds first_order_bounds(const DGField& avgs, const Mesh& mesh, const EosIdeal& eos) {
  require_k0(avgs, mesh, "first_order_bounds");
  const double g = eos.gamma();
  FirstOrderBounds b;
  for (int j = -1; j <= mesh.ny(); ++j) {
    for (int i = -1; i <= mesh.nx(); ++i) {
      const bool interior = i >= 0 && i < mesh.nx() && j >= 0 && j < mesh.ny();
      const bool xstrip = j >= 0 && j < mesh.ny();
      const bool ystrip = i >= 0 && i < mesh.nx();
      if (!xstrip && !ystrip) continue;  // corner ghosts are never used
      const StateArray u = avgs.average(i, j);
      if (!kernel::is_admissible(u)) throw PositivityError("first_order_bounds: inadmissible average at " + where(i, j));
      if (xstrip) b.alpha1_std = std::max(b.alpha1_std, kernel::spectral_radius(u, 0, g));
      if (ystrip) b.alpha2_std = std::max(b.alpha2_std, kernel::spectral_radius(u, 1, g));
      if (!interior) continue;
      const Neighborhood nb = gather(avgs, i, j);
      b.alpha1_pp = std::max(b.alpha1_pp, kernel::pp_viscosity_alpha(nb.right, nb.left, 0, g));
      b.alpha2_pp = std::max(b.alpha2_pp, kernel::pp_viscosity_alpha(nb.top, nb.bottom, 1, g));
      const double div =
          discrete_divergence_fo(nb.right[kBx], nb.left[kBx], nb.top[kBy], nb.bottom[kBy], mesh.dx(), mesh.dy());
      b.max_div = std::max(b.max_div, std::abs(div));
      b.vartheta = std::max(b.vartheta, std::abs(div) / std::sqrt(u[kRho]));
    }
  }
  return b;
}

SchemeParams select_alpha(double a1_pp, double a2_pp, double a1_std, double a2_std, double margin, AlphaRule rule,
                          bool include_source) {
  if (!(margin >= 1.0)) throw Error("select_alpha: margin must be >= 1");
  SchemeParams p;
  p.margin = margin;
  p.include_source = include_source;
  switch (rule) {
    case AlphaRule::Positivity:
      p.alpha1 = a1_pp;
      p.alpha2 = a2_pp;
      break;
    case AlphaRule::Spectral:
      p.alpha1 = a1_std;
      p.alpha2 = a2_std;
      break;
    case AlphaRule::PositivityAndSpectral:
      p.alpha1 = std::max(a1_pp, a1_std);
      p.alpha2 = std::max(a2_pp, a2_std);
      break;
  }
  p.alpha1 *= margin;
  p.alpha2 *= margin;
  // A constant state with v = 0 and B = 0 still needs a positive viscosity.
  p.alpha1 = std::max(p.alpha1, 1e-300);
  p.alpha2 = std::max(p.alpha2, 1e-300);
  return p;
}

DGField first_order_step(const DGField& avgs, const Mesh& mesh, const SchemeParams& params, double dt,
                         const EosIdeal& eos, bool validate) {
  require_k0(avgs, mesh, "first_order_step");
  if (!(dt > 0.0)) throw Error("first_order_step: dt must be positive");
  if (validate) {
    const FirstOrderBounds b = first_order_bounds(avgs, mesh, eos);
    if (!(params.alpha1 > b.alpha1_pp) || !(params.alpha2 > b.alpha2_pp)) {
      throw Error("first_order_step: LF viscosity does not exceed the positivity bound");
    }
    const double lhs = dt * (params.alpha1 / mesh.dx() + params.alpha2 / mesh.dy() + b.vartheta);
    if (lhs > 1.0 + 1e-12) throw Error("first_order_step: time step violates the CFL condition");
  }
  DGField out = avgs;
  const DgSpace& sp = avgs.space();
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      const StateArray u = first_order_update(gather(avgs, i, j), mesh.dx(), mesh.dy(), params.alpha1, params.alpha2,
                                              dt, eos.gamma(), params.include_source);
      if (validate && !kernel::is_admissible(u)) {
        throw PositivityError("first_order_step: internal error, inadmissible output at " + where(i, j));
      }
      set_constant(sp, u, out.cell(i, j));
    }
  }
  return out;
}

// -------------------------------------------------------------------- DG

DgOperator::DgOperator(const Mesh& mesh, std::shared_ptr<const DgSpace> space, const EosIdeal& eos, int threads)
    : mesh_(mesh), space_(std::move(space)), eos_(eos), threads_(std::max(1, threads)), q_(space_->gauss().size()) {
  const std::size_t ncell = static_cast<std::size_t>(mesh_.nx() + 2) * static_cast<std::size_t>(mesh_.ny() + 2);
  traces_.assign(ncell * 4 * static_cast<std::size_t>(q_), StateArray{});
  speeds_.assign(traces_.size(), TraceSpeeds{});
  xflux_.assign(static_cast<std::size_t>((mesh_.nx() + 1) * mesh_.ny() * q_ * 2), StateArray{});
  yflux_.assign(static_cast<std::size_t>(mesh_.nx() * (mesh_.ny() + 1) * q_ * 2), StateArray{});
}

void DgOperator::update_traces(const DGField& u) {
  if (u.nx() != mesh_.nx() || u.ny() != mesh_.ny()) throw Error("DgOperator: field and mesh disagree");
  const DgSpace& sp = *space_;
  const double g = eos_.gamma();
  const int nrows = mesh_.ny() + 2;
  parallel_for(nrows, threads_, [&](int b, int e, int) {
    for (int jj = b; jj < e; ++jj) {
      const int j = jj - 1;
      for (int i = -1; i <= mesh_.nx(); ++i) {
        const double* c = u.cell(i, j);
        for (int f = 0; f < 4; ++f) {
          const PointTable& t = sp.face(f);
          const int dir = (f == kLeft || f == kRight) ? 0 : 1;
          for (int mu = 0; mu < q_; ++mu) {
            const std::size_t k = (cell_index(i, j) * 4 + static_cast<std::size_t>(f)) * q_ + mu;
            StateArray& tr = traces_[k];
            sp.evaluate(c, t, mu, tr);
            TraceSpeeds& s = speeds_[k];
            if (kernel::is_admissible(tr)) {
              kernel::pp_bound_speeds(tr, dir, g, s.v, s.c);
              s.radius = kernel::spectral_radius(tr, dir, g);
            } else {
              s = TraceSpeeds{};
            }
          }
        }
      }
    }
  });
}

DgBounds DgOperator::bounds() const {
  const int nx = mesh_.nx();
  const int ny = mesh_.ny();
  auto check = [&](const StateArray& u, int i, int j, int f, int mu) {
    if (!kernel::is_admissible(u)) {
      std::ostringstream os;
      os << "inadmissible trace at " << where(i, j) << ", " << face_name(f) << " face, node " << mu;
      throw PositivityError(os.str());
    }
  };
  auto speed = [&](int i, int j, int f, int mu) -> const TraceSpeeds& {
    return speeds_[(cell_index(i, j) * 4 + static_cast<std::size_t>(f)) * static_cast<std::size_t>(q_) +
                   static_cast<std::size_t>(mu)];
  };
  auto alpha_pair = [&](int i, int j, int f, int k, int l, int h, int mu) {
    const TraceSpeeds& a = speed(i, j, f, mu);
    const TraceSpeeds& b = speed(k, l, h, mu);
    return kernel::pp_viscosity_alpha(trace(i, j, f, mu), trace(k, l, h, mu), a.v, a.c, b.v, b.c);
  };
  std::vector<DgBounds> part(static_cast<std::size_t>(threads_));
  parallel_for(ny, threads_, [&](int b, int e, int w) {
    DgBounds& r = part[static_cast<std::size_t>(w)];
    for (int j = b; j < e; ++j) {
      for (int i = 0; i < nx; ++i) {
        for (int mu = 0; mu < q_; ++mu) {
          for (int f = 0; f < 4; ++f) check(trace(i, j, f, mu), i, j, f, mu);
          // x faces: pairs of right traces and pairs of left traces.
          const StateArray& lp = trace(i + 1, j, kLeft, mu);
          const StateArray& lc = trace(i, j, kLeft, mu);
          const StateArray& rc = trace(i, j, kRight, mu);
          const StateArray& rm = trace(i - 1, j, kRight, mu);
          if (i == 0) check(rm, i - 1, j, kRight, mu);
          if (i == nx - 1) check(lp, i + 1, j, kLeft, mu);
          r.alpha1_pp = std::max({r.alpha1_pp, alpha_pair(i + 1, j, kLeft, i, j, kLeft, mu),
                                  alpha_pair(i, j, kRight, i - 1, j, kRight, mu)});
          r.alpha1_std = std::max({r.alpha1_std, speed(i, j, kLeft, mu).radius, speed(i, j, kRight, mu).radius,
                                   speed(i - 1, j, kRight, mu).radius, speed(i + 1, j, kLeft, mu).radius});
          const double jr = 0.5 * std::abs(lp[kBx] - rc[kBx]);
          const double jl = 0.5 * std::abs(lc[kBx] - rm[kBx]);
          r.vartheta1 = std::max({r.vartheta1, jr / std::sqrt(rc[kRho]), jl / std::sqrt(lc[kRho])});
          // y faces.
          const StateArray& bp = trace(i, j + 1, kBottom, mu);
          const StateArray& bc = trace(i, j, kBottom, mu);
          const StateArray& tc = trace(i, j, kTop, mu);
          const StateArray& tm = trace(i, j - 1, kTop, mu);
          if (j == 0) check(tm, i, j - 1, kTop, mu);
          if (j == ny - 1) check(bp, i, j + 1, kBottom, mu);
          r.alpha2_pp = std::max({r.alpha2_pp, alpha_pair(i, j + 1, kBottom, i, j, kBottom, mu),
                                  alpha_pair(i, j, kTop, i, j - 1, kTop, mu)});
          r.alpha2_std = std::max({r.alpha2_std, speed(i, j, kBottom, mu).radius, speed(i, j, kTop, mu).radius,
                                   speed(i, j - 1, kTop, mu).radius, speed(i, j + 1, kBottom, mu).radius});
          const double jt = 0.5 * std::abs(bp[kBy] - tc[kBy]);
          const double jb = 0.5 * std::abs(bc[kBy] - tm[kBy]);
          r.vartheta2 = std::max({r.vartheta2, jt / std::sqrt(tc[kRho]), jb / std::sqrt(bc[kRho])});
        }
        r.max_div = std::max(r.max_div, std::abs(divergence_ho(i, j)));
      }
    }
  });
  DgBounds out;
  for (const DgBounds& r : part) {
    out.alpha1_pp = std::max(out.alpha1_pp, r.alpha1_pp);
    out.alpha2_pp = std::max(out.alpha2_pp, r.alpha2_pp);
    out.alpha1_std = std::max(out.alpha1_std, r.alpha1_std);
    out.alpha2_std = std::max(out.alpha2_std, r.alpha2_std);
    out.vartheta1 = std::max(out.vartheta1, r.vartheta1);
    out.vartheta2 = std::max(out.vartheta2, r.vartheta2);
    out.max_div = std::max(out.max_div, r.max_div);
  }
  return out;
}

double DgOperator::divergence_ho(int i, int j) const {
  const std::vector<double>& w = space_->gauss().weights;
  double dx_part = 0.0;
  double dy_part = 0.0;
  for (int mu = 0; mu < q_; ++mu) {
    const double right = 0.5 * (trace(i, j, kRight, mu)[kBx] + trace(i + 1, j, kLeft, mu)[kBx]);
    const double left = 0.5 * (trace(i - 1, j, kRight, mu)[kBx] + trace(i, j, kLeft, mu)[kBx]);
    const double top = 0.5 * (trace(i, j, kTop, mu)[kBy] + trace(i, j + 1, kBottom, mu)[kBy]);
    const double bottom = 0.5 * (trace(i, j - 1, kTop, mu)[kBy] + trace(i, j, kBottom, mu)[kBy]);
    dx_part += w[mu] * (right - left);
    dy_part += w[mu] * (top - bottom);
  }
  return dx_part / mesh_.dx() + dy_part / mesh_.dy();
}

void DgOperator::residual(const DGField& u, const SchemeParams& params, DGField& out) {
  if (!(params.alpha1 > 0.0) || !(params.alpha2 > 0.0)) throw Error("dg_residual: alpha must be positive");
  if (out.nx() != mesh_.nx() || out.ny() != mesh_.ny() || out.ncoef() != u.ncoef()) {
    out = DGField(space_, mesh_.nx(), mesh_.ny());
  }
  const DgSpace& sp = *space_;
  const int nx = mesh_.nx();
  const int ny = mesh_.ny();
  const double g = eos_.gamma();
  const bool src = params.include_source;
  const int q = q_;

  auto face_node = [&](const StateArray& a, const StateArray& b, int dir, double alpha, StateArray& lo,
                       StateArray& hi) {
    StateArray fh{};
    lf_kernel(a, b, dir, alpha, g, fh);
    if (src) {
      const double jump = 0.5 * (b[kBx + dir] - a[kBx + dir]);
      StateArray sa{}, sb{};
      kernel::godunov_source(a, sa);
      kernel::godunov_source(b, sb);
      for (int k = 0; k < kNumVars; ++k) {
        lo[k] = fh[k] + jump * sa[k];
        hi[k] = -fh[k] + jump * sb[k];
      }
    } else {
      for (int k = 0; k < kNumVars; ++k) {
        lo[k] = fh[k];
        hi[k] = -fh[k];
      }
    }
  };

  // Face contributions. x face i lies between cells i-1 and i.
  parallel_for(ny, threads_, [&](int b, int e, int) {
    for (int j = b; j < e; ++j) {
      for (int i = 0; i <= nx; ++i) {
        for (int mu = 0; mu < q; ++mu) {
          const std::size_t base = (static_cast<std::size_t>(j * (nx + 1) + i) * q + mu) * 2;
          face_node(trace(i - 1, j, kRight, mu), trace(i, j, kLeft, mu), 0, params.alpha1, xflux_[base],
                    xflux_[base + 1]);
        }
      }
    }
  });
  parallel_for(ny + 1, threads_, [&](int b, int e, int) {
    for (int j = b; j < e; ++j) {
      for (int i = 0; i < nx; ++i) {
        for (int mu = 0; mu < q; ++mu) {
          const std::size_t base = (static_cast<std::size_t>(j * nx + i) * q + mu) * 2;
          face_node(trace(i, j - 1, kTop, mu), trace(i, j, kBottom, mu), 1, params.alpha2, yflux_[base],
                    yflux_[base + 1]);
        }
      }
    }
  });

  const int ns = sp.ns();
  const int nv = sp.nv();
  const int nc = sp.ncoef();
  const VolumeTable& vol = sp.volume();
  const double idx = 1.0 / mesh_.dx();
  const double idy = 1.0 / mesh_.dy();
  const std::vector<double>& wq = sp.gauss().weights;

  // Adds -scale * (test . G) at point p of table t.
  auto add_face = [&](double* r, const PointTable& t, int p, const StateArray& G, double scale) {
    const double* phi = &t.phi[static_cast<std::size_t>(p * ns)];
    for (int slot = 0; slot < 6; ++slot) {
      const double gv = scale * G[DgSpace::kScalarComps[slot]];
      double* rs = r + slot * ns;
      for (int k = 0; k < ns; ++k) rs[k] -= gv * phi[k];
    }
    const double* b1 = &t.b1[static_cast<std::size_t>(p * nv)];
    const double* b2 = &t.b2[static_cast<std::size_t>(p * nv)];
    double* rv = r + 6 * ns;
    const double g1 = scale * G[kBx];
    const double g2 = scale * G[kBy];
    for (int k = 0; k < nv; ++k) rv[k] -= g1 * b1[k] + g2 * b2[k];
  };

  parallel_for(ny, threads_, [&](int b, int e, int) {
    StateArray uq{}, f1{}, f2{};
    for (int j = b; j < e; ++j) {
      for (int i = 0; i < nx; ++i) {
        const double* c = u.cell(i, j);
        double* r = out.cell(i, j);
        std::fill(r, r + nc, 0.0);
        if (sp.degree() > 0) {
          for (int p = 0; p < vol.size(); ++p) {
            sp.evaluate(c, vol, p, uq);
            if (!(uq[kRho] > 0.0)) {
              throw PositivityError("dg_residual: nonpositive density at a volume node of " + where(i, j));
            }
            kernel::flux(uq, 0, g, f1);
            kernel::flux(uq, 1, g, f2);
            const double w = vol.weight[p];
            const double* dpx = &vol.dphix[static_cast<std::size_t>(p * ns)];
            const double* dpy = &vol.dphiy[static_cast<std::size_t>(p * ns)];
            for (int slot = 0; slot < 6; ++slot) {
              const int comp = DgSpace::kScalarComps[slot];
              const double a = w * idx * f1[comp];
              const double bb = w * idy * f2[comp];
              double* rs = r + slot * ns;
              for (int k = 0; k < ns; ++k) rs[k] += a * dpx[k] + bb * dpy[k];
            }
            const std::size_t o = static_cast<std::size_t>(p * nv);
            const double a1 = w * idx * f1[kBx], b1 = w * idy * f2[kBx];
            const double a2 = w * idx * f1[kBy], b2 = w * idy * f2[kBy];
            double* rv = r + 6 * ns;
            for (int k = 0; k < nv; ++k) {
              rv[k] += a1 * vol.db1x[o + k] + b1 * vol.db1y[o + k] + a2 * vol.db2x[o + k] + b2 * vol.db2y[o + k];
            }
          }
        }
        for (int mu = 0; mu < q; ++mu) {
          const double sx = wq[mu] * idx;
          const double sy = wq[mu] * idy;
          const std::size_t xr = (static_cast<std::size_t>(j * (nx + 1) + i + 1) * q + mu) * 2;
          const std::size_t xl = (static_cast<std::size_t>(j * (nx + 1) + i) * q + mu) * 2;
          const std::size_t yt = (static_cast<std::size_t>((j + 1) * nx + i) * q + mu) * 2;
          const std::size_t yb = (static_cast<std::size_t>(j * nx + i) * q + mu) * 2;
          add_face(r, sp.face(kRight), mu, xflux_[xr], sx);
          add_face(r, sp.face(kLeft), mu, xflux_[xl + 1], sx);
          add_face(r, sp.face(kTop), mu, yflux_[yt], sy);
          add_face(r, sp.face(kBottom), mu, yflux_[yb + 1], sy);
        }
      }
    }
  });
}

DGField dg_residual(const DGField& field, const Mesh& mesh, const SchemeParams& params, const EosIdeal& eos) {
  DgOperator op(mesh, field.space_ptr(), eos);
  op.update_traces(field);
  DGField out(field.space_ptr(), mesh.nx(), mesh.ny());
  op.residual(field, params, out);
  return out;
}

double discrete_divergence_ho(const DGField& field, const Mesh& mesh, int i, int j) {
  if (i < 0 || i >= mesh.nx() || j < 0 || j >= mesh.ny()) throw Error("discrete_divergence_ho: cell out of range");
  DgOperator op(mesh, field.space_ptr(), EosIdeal());
  op.update_traces(field);
  return op.divergence_ho(i, j);
}

}  // namespace ppmhd
