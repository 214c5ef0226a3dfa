#include "ppmhd/timestep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ppmhd {

double first_order_dt(double alpha1, double alpha2, double dx, double dy, double vartheta, double fraction) {
  return fraction / (alpha1 / dx + alpha2 / dy + vartheta);
}

double dg_theta(double vartheta1, double vartheta2, double alpha1, double alpha2) {
  return 1.0 / (1.0 + std::max(vartheta1 / alpha1, vartheta2 / alpha2));
}

double dg_dt(double alpha1, double alpha2, double dx, double dy, double theta, double omega_hat, double fraction) {
  return fraction * theta * omega_hat / (alpha1 / dx + alpha2 / dy);
}

namespace {

void check_fraction(double fraction) {
  if (!(fraction > 0.0) || fraction > 1.0) throw Error("cfl fraction must lie in (0, 1]");
}

}  // namespace

CflReport cfl_first_order(const DGField& avgs, const Mesh& mesh, const SchemeParams& params, const EosIdeal& eos,
                          double fraction) {
  check_fraction(fraction);
  const FirstOrderBounds b = first_order_bounds(avgs, mesh, eos);
  CflReport r;
  r.alpha1 = params.alpha1;
  r.alpha2 = params.alpha2;
  r.vartheta = b.vartheta;
  r.limit = first_order_dt(params.alpha1, params.alpha2, mesh.dx(), mesh.dy(), b.vartheta, 1.0);
  r.dt = fraction * r.limit;
  r.binding = "first_order";
  return r;
}

CflReport cfl_dg(const DGField& field, const Mesh& mesh, const SchemeParams& params, const EosIdeal& eos,
                 double fraction) {
  check_fraction(fraction);
  DgOperator op(mesh, field.space_ptr(), eos);
  op.update_traces(field);
  const DgBounds b = op.bounds();
  CflReport r;
  r.alpha1 = params.alpha1;
  r.alpha2 = params.alpha2;
  r.vartheta1 = b.vartheta1;
  r.vartheta2 = b.vartheta2;
  r.theta = dg_theta(b.vartheta1, b.vartheta2, params.alpha1, params.alpha2);
  const double omega = field.space().omega_hat();
  r.limit = dg_dt(params.alpha1, params.alpha2, mesh.dx(), mesh.dy(), r.theta, omega, 1.0);
  r.dt = fraction * r.limit;
  r.binding = "dg";
  return r;
}

void ssp_rk3(std::vector<double>& u, double dt,
             const std::function<void(const std::vector<double>&, std::vector<double>&)>& rhs,
             const std::function<void(std::vector<double>&)>& limit) {
  const std::size_t n = u.size();
  std::vector<double> r(n), u1(n), u2(n);
  rhs(u, r);
  for (std::size_t k = 0; k < n; ++k) u1[k] = u[k] + dt * r[k];
  if (limit) limit(u1);
  rhs(u1, r);
  for (std::size_t k = 0; k < n; ++k) u2[k] = 0.75 * u[k] + 0.25 * (u1[k] + dt * r[k]);
  if (limit) limit(u2);
  rhs(u2, r);
  for (std::size_t k = 0; k < n; ++k) u[k] = u[k] / 3.0 + 2.0 / 3.0 * (u2[k] + dt * r[k]);
  if (limit) limit(u);
}

// --------------------------------------------------------------------- Solver

Solver::Solver(const Mesh& mesh, DGField initial, const EosIdeal& eos, const SolverOptions& opt, double t0)
    : mesh_(mesh),
      eos_(eos),
      opt_(opt),
      space_(initial.space_ptr()),
      op_(mesh, initial.space_ptr(), eos, opt.threads),
      u_(std::move(initial)),
      t_(t0) {
  check_fraction(opt_.cfl);
  if (u_.nx() != mesh_.nx() || u_.ny() != mesh_.ny()) throw Error("Solver: field and mesh disagree");
  u1_ = u_;
  u2_ = u_;
  res_ = DGField(space_, mesh_.nx(), mesh_.ny());
  check_averages(u_, 0);
  initial_limited_ = limit_stage(u_, t_);
  current_ = analyze(u_);
}

int Solver::limit_stage(DGField& u, double t) {
  fill_ghosts(u, mesh_, t);
  int limited = 0;
  if (opt_.tvb_m >= 0.0 && u.degree() > 0) {
    tvb_limit(u, mesh_, opt_.tvb_m, opt_.threads);
    if (!opt_.pp_limiter) fill_ghosts(u, mesh_, t);
  }
  if (opt_.pp_limiter) {
    limited = pp_limit(u, opt_.eps, opt_.eps, opt_.threads);
    fill_ghosts(u, mesh_, t);
  }
  return limited;
}

void Solver::check_averages(const DGField& u, int stage) const {
  for (int j = 0; j < mesh_.ny(); ++j) {
    for (int i = 0; i < mesh_.nx(); ++i) {
      const StateArray a = u.average(i, j);
      if (!kernel::is_admissible(a)) {
        std::ostringstream os;
        os << "positivity failure: inadmissible cell average at cell (" << i << ", " << j << "), stage " << stage
           << ", t = " << t_;
        throw PositivityError(os.str());
      }
    }
  }
}

Solver::StageInfo Solver::analyze(const DGField& u) {
  StageInfo s;
  op_.update_traces(u);
  if (u.degree() == 0) {
    const FirstOrderBounds b = first_order_bounds(u, mesh_, eos_);
    s.params = select_alpha(b.alpha1_pp, b.alpha2_pp, b.alpha1_std, b.alpha2_std, opt_.margin, opt_.alpha_rule,
                            opt_.include_source);
    s.limit = first_order_dt(s.params.alpha1, s.params.alpha2, mesh_.dx(), mesh_.dy(), b.vartheta, 1.0);
    s.max_div = b.max_div;
    return s;
  }
  const DgBounds b = op_.bounds();
  s.params = select_alpha(b.alpha1_pp, b.alpha2_pp, b.alpha1_std, b.alpha2_std, opt_.margin, opt_.alpha_rule,
                          opt_.include_source);
  s.r1 = b.vartheta1 / s.params.alpha1;
  s.r2 = b.vartheta2 / s.params.alpha2;
  s.theta = dg_theta(b.vartheta1, b.vartheta2, s.params.alpha1, s.params.alpha2);
  s.limit = dg_dt(s.params.alpha1, s.params.alpha2, mesh_.dx(), mesh_.dy(), s.theta, space_->omega_hat(), 1.0);
  s.max_div = b.max_div;
  return s;
}

StepRecord Solver::step(double t_end) {
  const double remaining = t_end - t_;
  if (!(remaining > 0.0)) throw Error("Solver::step: already at the end time");
  auto choose = [&](double limit) {
    double dt = opt_.cfl * limit;
    if (opt_.fixed_dt > 0.0) dt = std::min(dt, opt_.fixed_dt);
    // Absorb a round-off sliver at the end.
    if (remaining - dt <= 1e-9 * dt) return remaining;
    return dt;
  };
  double dt = choose(current_.limit);
  const auto& data0 = u_.data();
  for (int attempt = 0; attempt < 50; ++attempt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw PositivityError("positivity failure: time step collapsed");
    StepRecord rec;
    rec.theta = current_.theta;
    rec.vartheta1_ratio = current_.r1;
    rec.vartheta2_ratio = current_.r2;

    // Stage 1.
    op_.residual(u_, current_.params, res_);
    {
      auto& a = u1_.data();
      const auto& r = res_.data();
      for (std::size_t k = 0; k < a.size(); ++k) a[k] = data0[k] + dt * r[k];
    }
    check_averages(u1_, 1);
    rec.limited_cells += limit_stage(u1_, t_ + dt);
    const StageInfo s1 = analyze(u1_);
    if (dt > s1.limit * (1.0 + 1e-12)) {
      dt = choose(s1.limit);
      current_ = analyze(u_);
      continue;
    }

    // Stage 2.
    op_.residual(u1_, s1.params, res_);
    {
      auto& a = u2_.data();
      const auto& b = u1_.data();
      const auto& r = res_.data();
      for (std::size_t k = 0; k < a.size(); ++k) a[k] = 0.75 * data0[k] + 0.25 * (b[k] + dt * r[k]);
    }
    check_averages(u2_, 2);
    rec.limited_cells += limit_stage(u2_, t_ + 0.5 * dt);
    const StageInfo s2 = analyze(u2_);
    if (dt > s2.limit * (1.0 + 1e-12)) {
      dt = choose(s2.limit);
      current_ = analyze(u_);
      continue;
    }

    // Stage 3.
    op_.residual(u2_, s2.params, res_);
    {
      auto& a = u1_.data();
      const auto& b = u2_.data();
      const auto& r = res_.data();
      for (std::size_t k = 0; k < a.size(); ++k) a[k] = data0[k] / 3.0 + 2.0 / 3.0 * (b[k] + dt * r[k]);
    }
    check_averages(u1_, 3);
    const double t_new = (dt == remaining) ? t_end : t_ + dt;
    rec.limited_cells += limit_stage(u1_, t_new);
    const StageInfo s3 = analyze(u1_);

    std::swap(u_, u1_);
    t_ = t_new;
    ++steps_;
    current_ = s3;

    rec.t = t_;
    rec.dt = dt;
    rec.theta = std::min({rec.theta, s1.theta, s2.theta});
    rec.vartheta1_ratio = std::max({rec.vartheta1_ratio, s1.r1, s2.r1});
    rec.vartheta2_ratio = std::max({rec.vartheta2_ratio, s1.r2, s2.r2});
    rec.max_div = s3.max_div;
    const PointMinima m = pp_point_minima(u_, eos_);
    rec.min_rho = m.rho;
    rec.min_p = m.p;
    return rec;
  }
  throw Error("Solver::step: time step did not settle under the stage CFL condition");
}

void Solver::run(double t_end, const std::function<void(const StepRecord&)>& on_step) {
  while (t_ < t_end) {
    const StepRecord r = step(t_end);
    if (on_step) on_step(r);
  }
}

}  // namespace ppmhd
