#include "ppmhd/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace ppmhd {

Mesh::Mesh(const MeshConfig& cfg)
    : nx_(cfg.nx),
      ny_(cfg.ny),
      xmin_(cfg.xmin),
      xmax_(cfg.xmax),
      ymin_(cfg.ymin),
      ymax_(cfg.ymax),
      dx_(0.0),
      dy_(0.0),
      bc_(cfg.bc) {
  if (nx_ <= 0 || ny_ <= 0) throw Error("build_mesh: cell counts must be positive");
  if (!(xmax_ > xmin_) || !(ymax_ > ymin_)) throw Error("build_mesh: empty domain");
  dx_ = (xmax_ - xmin_) / nx_;
  dy_ = (ymax_ - ymin_) / ny_;
  using T = BoundaryKind::Tag;
  const bool px = bc_[kSideLeft].tag == T::Periodic;
  if (px != (bc_[kSideRight].tag == T::Periodic)) throw Error("build_mesh: periodic x needs both sides periodic");
  const bool py = bc_[kSideBottom].tag == T::Periodic;
  if (py != (bc_[kSideTop].tag == T::Periodic)) throw Error("build_mesh: periodic y needs both sides periodic");
  for (int s : {kSideLeft, kSideRight}) {
    if (bc_[s].tag == T::ShiftedPeriodic) throw Error("build_mesh: shifted periodic is only valid on y boundaries");
  }
  const bool sy = bc_[kSideBottom].tag == T::ShiftedPeriodic;
  if (sy != (bc_[kSideTop].tag == T::ShiftedPeriodic)) throw Error("build_mesh: shifted periodic needs both y sides");
  if (sy) {
    if (bc_[kSideBottom].shift != bc_[kSideTop].shift) throw Error("build_mesh: shifted periodic sides disagree");
    if (std::abs(bc_[kSideBottom].shift) > nx_) throw Error("build_mesh: shift exceeds the mesh width");
  }
}

Mesh build_mesh(const MeshConfig& cfg) { return Mesh(cfg); }

void set_constant(const DgSpace& space, const StateArray& u, double* c) {
  const int s = space.ns();
  std::fill(c, c + space.ncoef(), 0.0);
  for (int slot = 0; slot < 6; ++slot) c[slot * s] = u[DgSpace::kScalarComps[slot]];
  c[6 * s] = u[kBx] / space.vector().scale(0);
  c[6 * s + 1] = u[kBy] / space.vector().scale(1);
}

void project_cell(const std::function<StateArray(double, double)>& f, const Mesh& mesh, int i, int j,
                  const DgSpace& space, double* c) {
  const PointTable& t = space.projection();
  std::vector<StateArray> vals(static_cast<std::size_t>(t.size()));
  for (int p = 0; p < t.size(); ++p) {
    vals[static_cast<std::size_t>(p)] = f(mesh.xc(i) + t.x[p] * mesh.dx(), mesh.yc(j) + t.y[p] * mesh.dy());
    if (!all_finite(vals[static_cast<std::size_t>(p)])) throw Error("project: non-finite initial data");
  }
  space.project_values(vals, c);
}

void project(const std::function<StateArray(double, double)>& f, const Mesh& mesh, DGField& field) {
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) project_cell(f, mesh, i, j, field.space(), field.cell(i, j));
  }
}

namespace {

using Tag = BoundaryKind::Tag;

void copy_block(const DGField& field, int si, int sj, DGField& dst, int di, int dj) {
  std::memcpy(dst.cell(di, dj), field.cell(si, sj), sizeof(double) * static_cast<std::size_t>(field.ncoef()));
}

// One ghost cell (gi, gj) adjacent to interior cell (ii, jj) across `side`.
void fill_one(DGField& field, const Mesh& mesh, int side, int gi, int gj, int ii, int jj, double t) {
  const BoundaryKind& b = mesh.boundary(side);
  const int axis = side <= kSideRight ? 0 : 1;
  switch (b.tag) {
    case Tag::Outflow:
      copy_block(field, ii, jj, field, gi, gj);
      break;
    case Tag::Inflow:
      if (!b.mask || b.mask(mesh.xc(gi), mesh.yc(gj), t)) {
        set_constant(field.space(), b.state, field.cell(gi, gj));
      } else {
        copy_block(field, ii, jj, field, gi, gj);
      }
      break;
    case Tag::Reflect:
      field.space().reflect(field.cell(ii, jj), axis, field.cell(gi, gj));
      break;
    default:
      break;
  }
}

}  // namespace

void fill_ghosts(DGField& field, const Mesh& mesh, double t) {
  const int nx = mesh.nx();
  const int ny = mesh.ny();
  if (field.nx() != nx || field.ny() != ny) throw Error("fill_ghosts: field and mesh disagree");

  for (int j = 0; j < ny; ++j) {
    if (mesh.boundary(kSideLeft).tag == Tag::Periodic) {
      copy_block(field, nx - 1, j, field, -1, j);
      copy_block(field, 0, j, field, nx, j);
    } else {
      fill_one(field, mesh, kSideLeft, -1, j, 0, j, t);
      fill_one(field, mesh, kSideRight, nx, j, nx - 1, j, t);
    }
  }

  const Tag ytag = mesh.boundary(kSideBottom).tag;
  for (int i = -1; i <= nx; ++i) {
    if (ytag == Tag::Periodic) {
      copy_block(field, i, ny - 1, field, i, -1);
      copy_block(field, i, 0, field, i, ny);
    } else if (ytag == Tag::ShiftedPeriodic) {
      const int s = mesh.boundary(kSideBottom).shift;
      copy_block(field, std::clamp(i - s, -1, nx), ny - 1, field, i, -1);
      copy_block(field, std::clamp(i + s, -1, nx), 0, field, i, ny);
    } else {
      fill_one(field, mesh, kSideBottom, i, -1, i, 0, t);
      fill_one(field, mesh, kSideTop, i, ny, i, ny - 1, t);
    }
  }
}

}  // namespace ppmhd
