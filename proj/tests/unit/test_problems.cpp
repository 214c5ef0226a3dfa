#include <doctest.h>

#include <cmath>

#include "ppmhd/limiters.hpp"
#include "ppmhd/physics.hpp"
#include "ppmhd/problems.hpp"

using namespace ppmhd;
using doctest::Approx;

namespace {

PrimitiveState prim_of(const StateArray& u, double gamma) { return to_primitive(ConservedState(u), EosIdeal(gamma)); }

}  // namespace

TEST_CASE("problem ids") {
  const auto& ids = problem_ids();
  CHECK(ids.size() >= 8);
  for (const std::string id : {"smooth_sine", "smooth_vortex", "rotated_tube", "blast_standard", "blast_extreme", "jet",
                               "appendixA", "constant"}) {
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
  }
  try {
    make_problem("nope");
    FAIL("expected an error");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("nope") != std::string::npos);
    CHECK(msg.find("smooth_sine") != std::string::npos);
  }
  CHECK_THROWS_AS(make_problem("smooth_sine", {{"bogus", 1.0}}), Error);
  CHECK_THROWS_AS(make_problem("jet", {{"jet_case", 4}}), Error);
}

TEST_CASE("blast initial states") {
  const ProblemSpec s = make_problem("blast_standard");
  CHECK(s.nx == 128);
  CHECK(s.t_end == Approx(0.01));
  const PrimitiveState in = prim_of(s.initial(0.0, 0.0), s.gamma);
  CHECK(in.rho == Approx(1.0));
  CHECK(in.p == Approx(1000.0));
  CHECK(in.B[0] == Approx(100.0 / std::sqrt(4 * M_PI)));
  CHECK(in.v[0] == 0.0);
  CHECK(prim_of(s.initial(0.3, 0.3), s.gamma).p == Approx(0.1));

  const ProblemSpec e = make_problem("blast_extreme");
  CHECK(e.t_end == Approx(0.001));
  const PrimitiveState ein = prim_of(e.initial(0.0, 0.05), e.gamma);
  CHECK(ein.p == Approx(1e4));
  CHECK(ein.B[0] == Approx(1000.0 / std::sqrt(4 * M_PI)));
  const PrimitiveState eout = prim_of(e.initial(0.2, 0.0), e.gamma);
  // Plasma beta of the ambient medium.
  CHECK(2 * eout.p / (eout.B[0] * eout.B[0]) == Approx(2.513e-6).epsilon(1e-3));
}

TEST_CASE("jet configurations") {
  const ProblemSpec s = make_problem("jet");
  CHECK(s.nx == 100);
  CHECK(s.ny == 300);
  CHECK(s.t_end == Approx(0.002));
  const PrimitiveState amb = prim_of(s.initial(0.3, 0.7), s.gamma);
  CHECK(amb.rho == Approx(0.14));
  CHECK(amb.p == Approx(1.0));
  CHECK(amb.B[1] == Approx(std::sqrt(20000.0)));
  CHECK(s.bc[kSideBottom].tag == BoundaryKind::Tag::Inflow);
  const PrimitiveState beam = prim_of(s.bc[kSideBottom].state, s.gamma);
  CHECK(beam.rho == Approx(1.4));
  CHECK(beam.v[1] == Approx(800.0));
  CHECK(s.bc[kSideBottom].mask(0.02, -0.001, 0.0));
  CHECK_FALSE(s.bc[kSideBottom].mask(0.07, -0.001, 0.0));
  CHECK(prim_of(make_problem("jet", {{"jet_case", 1}}).initial(0.1, 0.1), 1.4).B[1] == Approx(std::sqrt(200.0)));
  CHECK(prim_of(make_problem("jet", {{"jet_case", 2}}).initial(0.1, 0.1), 1.4).B[1] == Approx(std::sqrt(2000.0)));
}

TEST_CASE("smooth sine exact solution") {
  const ProblemSpec s = make_problem("smooth_sine");
  CHECK(s.gamma == Approx(1.4));
  CHECK(s.xmax == Approx(2 * M_PI));
  const PrimitiveState w = prim_of(exact_solution("smooth_sine", 0.3, 0.4, 0.1), 1.4);
  CHECK(w.rho == Approx(1.0 + 0.99 * std::sin(0.3 + 0.4 - 0.2)));
  CHECK(w.v[0] == Approx(1.0));
  CHECK(w.v[1] == Approx(1.0));
  CHECK(w.B[0] == Approx(0.1));
  CHECK(w.p == Approx(1.0));
  const StateArray a = s.initial(1.0, 2.0), b = s.exact(1.0, 2.0, 0.0);
  for (int k = 0; k < kNumVars; ++k) CHECK(a[k] == Approx(b[k]));
}

TEST_CASE("vortex is advected with the mean flow") {
  const ProblemSpec s = make_problem("smooth_vortex");
  const PrimitiveState c = prim_of(s.initial(0.0, 0.0), s.gamma);
  CHECK(c.p == Approx(5.3e-12).epsilon(0.02));
  CHECK(c.p > 0.0);
  const StateArray a = s.exact(1.3, -0.7, 0.4), b = s.initial(0.9, -1.1);
  for (int k = 0; k < kNumVars; ++k) CHECK(a[k] == Approx(b[k]));
  // Periodic wrap.
  const StateArray p = s.exact(-9.9, 0.0, 0.2), q = s.initial(9.9, -0.2);
  for (int k = 0; k < kNumVars; ++k) CHECK(p[k] == Approx(q[k]));
}

TEST_CASE("rotated tube geometry and states") {
  const ProblemSpec s = make_problem("rotated_tube");
  CHECK(s.nx == 256);
  CHECK(s.ny == 2);
  CHECK(s.ymax == Approx(2.0 / 256));
  CHECK(s.t_end == Approx(0.08 * std::cos(M_PI / 4)));
  CHECK(s.bc[kSideBottom].shift == 2);
  const PrimitiveState l = prim_of(s.initial(0.1, 0.0), s.gamma), r = prim_of(s.initial(0.9, 0.0), s.gamma);
  const double par_l = (l.v[0] + l.v[1]) / std::sqrt(2.0), par_r = (r.v[0] + r.v[1]) / std::sqrt(2.0);
  CHECK(par_l == Approx(10.0));
  CHECK(par_r == Approx(-10.0));
  CHECK(l.p == Approx(20.0));
  CHECK(r.p == Approx(1.0));
  CHECK((l.B[0] + l.B[1]) / std::sqrt(2.0) == Approx(5.0 / std::sqrt(4 * M_PI)));
  CHECK(make_problem("rotated_tube", {{"nx", 64}, {"ny", 4}}).bc[kSideTop].shift == 4);
}

TEST_CASE("appendix pressure-probe data") {
  const ProblemSpec s = make_problem("appendixA", {{"epsilon", 0.02}});
  const PrimitiveState o = prim_of(s.initial(0.0, 0.0), s.gamma);
  CHECK(o.v[0] == Approx(1.0));
  CHECK(o.B[0] == Approx(1.0));
  CHECK(o.p > 0.0);
  const PrimitiveState w = prim_of(s.initial(0.5, -0.5), s.gamma);
  CHECK(w.B[0] == Approx(1.0 + 0.01 * std::atan(0.5)));
  CHECK(w.B[1] == Approx(1.0 - 0.01 * std::atan(0.5)));
  CHECK(w.p == Approx(1.0 - std::exp(-0.5)));
}

TEST_CASE("every problem starts admissible after limiting") {
  for (const std::string& id : problem_ids()) {
    CAPTURE(id);
    ProblemSpec s = make_problem(id);
    // Coarser meshes keep this quick; shapes follow the defaults.
    const int nx = std::min(s.nx, 40);
    const int ny = id == "rotated_tube" ? 2 : std::min(s.ny, 40);
    s = make_problem(id, {{"nx", nx}, {"ny", ny}});
    const Mesh m = build_mesh(s.mesh_config());
    DGField f(std::make_shared<const DgSpace>(2, m.aspect()), m.nx(), m.ny());
    project(s.initial, m, f);
    pp_limit(f);
    const PointMinima pm = pp_point_minima(f, EosIdeal(s.gamma));
    CHECK(pm.rho > 0.0);
    CHECK(pm.p > 0.0);
    for (int j = 0; j < m.ny(); ++j) {
      for (int i = 0; i < m.nx(); ++i) {
        const PointTable& t = f.space().pp_points();
        for (int p = 0; p < t.size(); ++p) {
          StateArray u{};
          f.space().evaluate(f.cell(i, j), t, p, u);
          REQUIRE(is_admissible(ConservedState(u)));
        }
      }
    }
  }
}
