/// @file basis.hpp
/// @brief The locally divergence-free DG space on the reference cell
///        [-1/2, 1/2]^2: an orthonormal scalar modal basis for
///        (rho, m1, m2, m3, B3, E), an orthonormal divergence-free vector basis
///        for (B1, B2), precomputed point tables and the DGField container.
#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "ppmhd/quadrature.hpp"
#include "ppmhd/state.hpp"

namespace ppmhd {

inline constexpr int kMaxDegree = 2;

/// Orthonormal products sqrt(2a+1) P_a(2x) sqrt(2b+1) P_b(2y), a + b <= K,
/// ordered by total degree: 1, x, y, x^2, xy, y^2.
class ScalarBasis {
 public:
  explicit ScalarBasis(int K);

  int degree() const { return K_; }
  int size() const { return static_cast<int>(exps_.size()); }
  /// (a, b) exponents of member k.
  std::array<int, 2> exponents(int k) const { return exps_[static_cast<std::size_t>(k)]; }

  double value(int k, double x, double y) const;
  /// Reference-coordinate gradient of member k.
  std::array<double, 2> gradient(int k, double x, double y) const;

 private:
  int K_;
  std::vector<std::array<int, 2>> exps_;
};

/// Vector polynomials (b1, b2) with d(b1)/dx + d(b2)/dy = 0 in physical
/// coordinates of a cell with aspect ratio dx/dy. Raw members, before
/// normalization, for aspect 1:
///   (1,0), (0,1), (y,0), (0,x), (x,-y),
///   (y^2-1/12, 0), (0, x^2-1/12), (x^2-1/12, -2xy), (2xy, -(y^2-1/12)).
/// The last four are present for K = 2. The y-component of the members that
/// couple both directions is divided by the aspect ratio.
class DivFreeBasis {
 public:
  struct Eval {
    double b1, b2;
    double d1x, d1y, d2x, d2y;  // reference-coordinate derivatives
  };

  explicit DivFreeBasis(int K, double aspect = 1.0);

  int degree() const { return K_; }
  double aspect() const { return aspect_; }
  int size() const { return size_; }
  /// Number of constant members (always 2: (1,0) and (0,1)).
  static constexpr int kConstantMembers = 2;

  /// Unnormalized member k.
  Eval raw(int k, double x, double y) const;
  /// Orthonormal member k (unit cell measure).
  Eval value(int k, double x, double y) const;
  double scale(int k) const { return scale_[static_cast<std::size_t>(k)]; }

  /// Physical divergence of member k times dx: d(b1)/dx + aspect * d(b2)/dy.
  double divergence(int k, double x, double y) const;

 private:
  int K_;
  double aspect_;
  int size_;
  std::vector<double> scale_;
};

/// Basis values at a fixed list of reference points.
struct PointTable {
  std::vector<double> x, y, weight;
  int ns = 0;
  int nv = 0;
  std::vector<double> phi;      // [p * ns + k]
  std::vector<double> b1, b2;   // [p * nv + k]

  int size() const { return static_cast<int>(x.size()); }
};

/// Basis values plus reference derivatives, for volume integrals.
struct VolumeTable : PointTable {
  std::vector<double> dphix, dphiy;          // [p * ns + k]
  std::vector<double> db1x, db1y, db2x, db2y;  // [p * nv + k]
};

enum Face : int { kLeft = 0, kRight = 1, kBottom = 2, kTop = 3 };

/// Everything about W_h^K that does not depend on the cell: bases, quadrature
/// rules and point tables. Immutable after construction.
class DgSpace {
 public:
  /// aspect = dx / dy. The PP point set uses L-point Gauss-Lobatto with
  /// 2L - 3 >= K (L = 2 for K <= 1, L = 3 for K = 2).
  explicit DgSpace(int K, double aspect = 1.0);

  int degree() const { return K_; }
  int ns() const { return scalar_.size(); }
  int nv() const { return vector_.size(); }
  /// Coefficients per cell: 6 scalar blocks then the vector block.
  int ncoef() const { return 6 * ns() + nv(); }

  const ScalarBasis& scalar() const { return scalar_; }
  const DivFreeBasis& vector() const { return vector_; }
  const QuadratureSet& gauss() const { return gauss_; }
  const QuadratureSet& lobatto() const { return lobatto_; }
  /// Smallest Gauss-Lobatto weight, 1/(L(L-1)).
  double omega_hat() const { return lobatto_.weights.front(); }

  const VolumeTable& volume() const { return volume_; }
  const PointTable& face(int f) const { return faces_[static_cast<std::size_t>(f)]; }
  const PointTable& pp_points() const { return pp_; }
  const PointTable& projection() const { return projection_; }

  /// Scalar slot (0..5) of a conserved component, or -1 for B1/B2.
  static int scalar_slot(int comp);
  static constexpr std::array<int, 6> kScalarComps{kRho, kMx, kMy, kMz, kBz, kEnergy};

  /// Evaluate the state at point p of a table from one cell's coefficients.
  void evaluate(const double* c, const PointTable& t, int p, StateArray& u) const;
  /// Evaluate at an arbitrary reference point.
  StateArray evaluate_at(const double* c, double x, double y) const;
  /// Cell average of all 8 components.
  StateArray average(const double* c) const;

  /// L2 projection (discrete, on the projection table) of pointwise values
  /// vals[p] given at every projection point.
  void project_values(const std::vector<StateArray>& vals, double* c) const;

  /// Mirror image across the cell's vertical (axis 0) or horizontal (axis 1)
  /// midline with the normal momentum and normal magnetic field negated.
  void reflect(const double* c, int axis, double* out) const;

 private:
  PointTable make_table(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>& w) const;

  int K_;
  ScalarBasis scalar_;
  DivFreeBasis vector_;
  QuadratureSet gauss_;
  QuadratureSet lobatto_;
  VolumeTable volume_;
  std::array<PointTable, 4> faces_;
  PointTable pp_;
  PointTable projection_;
  std::vector<double> gram_chol_;  // lower Cholesky factor of the vector Gram matrix
  std::array<std::vector<double>, 2> mirror_;  // vector-block reflection matrices
};

/// Coefficient storage on an NX x NY grid with one ghost layer.
class DGField {
 public:
  DGField() = default;
  DGField(std::shared_ptr<const DgSpace> space, int nx, int ny);

  const DgSpace& space() const { return *space_; }
  std::shared_ptr<const DgSpace> space_ptr() const { return space_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int degree() const { return space_->degree(); }
  int ncoef() const { return nc_; }

  /// Cell (i, j), with -1 <= i <= nx and -1 <= j <= ny for ghosts.
  double* cell(int i, int j) { return data_.data() + index(i, j) * nc_; }
  const double* cell(int i, int j) const { return data_.data() + index(i, j) * nc_; }

  /// Checked point evaluation at reference coordinates in [-1/2, 1/2]^2.
  ConservedState evaluate(int i, int j, double x, double y) const;
  StateArray average(int i, int j) const { return space_->average(cell(i, j)); }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j + 1) * static_cast<std::size_t>(nx_ + 2) + static_cast<std::size_t>(i + 1);
  }

  std::shared_ptr<const DgSpace> space_;
  int nx_ = 0;
  int ny_ = 0;
  int nc_ = 0;
  std::vector<double> data_;
};

}  // namespace ppmhd
