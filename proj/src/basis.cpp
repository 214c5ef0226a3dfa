#include "ppmhd/basis.hpp"

#include <cmath>
#include <string>

namespace ppmhd {

namespace {

void check_degree(int K, const char* who) {
  if (K < 0 || K > kMaxDegree) throw Error(std::string(who) + ": degree must be 0, 1 or 2");
}

// Normalized Legendre sqrt(2n+1) P_n(2x) on [-1/2, 1/2] and its derivative.
void leg(int n, double x, double& v, double& d) {
  const double s = std::sqrt(2.0 * n + 1.0);
  switch (n) {
    case 0:
      v = 1.0;
      d = 0.0;
      break;
    case 1:
      v = s * 2.0 * x;
      d = s * 2.0;
      break;
    case 2:
      v = s * (6.0 * x * x - 0.5);
      d = s * 12.0 * x;
      break;
    default:
      throw Error("leg: degree out of range");
  }
}

void cholesky(std::vector<double>& a, int n) {
  for (int j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (int k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 1e-14)) throw Error("DgSpace: singular Gram matrix");
    const double ljj = std::sqrt(d);
    a[j * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (int k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / ljj;
    }
    for (int i = 0; i < j; ++i) a[i * n + j] = 0.0;
  }
}

void cholesky_solve(const std::vector<double>& l, int n, double* b) {
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= l[i * n + k] * b[k];
    b[i] = s / l[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = i + 1; k < n; ++k) s -= l[k * n + i] * b[k];
    b[i] = s / l[i * n + i];
  }
}

}  // namespace

// ---------------------------------------------------------------- ScalarBasis

ScalarBasis::ScalarBasis(int K) : K_(K) {
  check_degree(K, "build_scalar_basis");
  for (int deg = 0; deg <= K; ++deg) {
    for (int b = 0; b <= deg; ++b) exps_.push_back({deg - b, b});
  }
}

double ScalarBasis::value(int k, double x, double y) const {
  const auto [a, b] = exponents(k);
  double vx = 0.0, dx = 0.0, vy = 0.0, dy = 0.0;
  leg(a, x, vx, dx);
  leg(b, y, vy, dy);
  return vx * vy;
}

std::array<double, 2> ScalarBasis::gradient(int k, double x, double y) const {
  const auto [a, b] = exponents(k);
  double vx = 0.0, dx = 0.0, vy = 0.0, dy = 0.0;
  leg(a, x, vx, dx);
  leg(b, y, vy, dy);
  return {dx * vy, vx * dy};
}

// --------------------------------------------------------------- DivFreeBasis

DivFreeBasis::DivFreeBasis(int K, double aspect) : K_(K), aspect_(aspect) {
  check_degree(K, "build_divfree_basis");
  if (!(aspect > 0.0) || !std::isfinite(aspect)) throw Error("build_divfree_basis: aspect must be positive");
  size_ = (K + 1) * (K + 2) - K * (K + 1) / 2;
  scale_.assign(static_cast<std::size_t>(size_), 1.0);
  const QuadratureSet g = gauss_legendre(4);
  for (int k = 0; k < size_; ++k) {
    double n2 = 0.0;
    for (int i = 0; i < g.size(); ++i) {
      for (int j = 0; j < g.size(); ++j) {
        const Eval e = raw(k, g.nodes[i], g.nodes[j]);
        n2 += g.weights[i] * g.weights[j] * (e.b1 * e.b1 + e.b2 * e.b2);
      }
    }
    scale_[static_cast<std::size_t>(k)] = 1.0 / std::sqrt(n2);
  }
}

DivFreeBasis::Eval DivFreeBasis::raw(int k, double x, double y) const {
  if (k < 0 || k >= size_) throw Error("DivFreeBasis: member index out of range");
  const double r = 1.0 / aspect_;
  constexpr double c = 1.0 / 12.0;
  switch (k) {
    case 0: return {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    case 1: return {0.0, 1.0, 0.0, 0.0, 0.0, 0.0};
    case 2: return {y, 0.0, 0.0, 1.0, 0.0, 0.0};
    case 3: return {0.0, x, 0.0, 0.0, 1.0, 0.0};
    case 4: return {x, -r * y, 1.0, 0.0, 0.0, -r};
    case 5: return {y * y - c, 0.0, 0.0, 2.0 * y, 0.0, 0.0};
    case 6: return {0.0, x * x - c, 0.0, 0.0, 2.0 * x, 0.0};
    case 7: return {x * x - c, -2.0 * r * x * y, 2.0 * x, 0.0, -2.0 * r * y, -2.0 * r * x};
    default: return {2.0 * x * y, -r * (y * y - c), 2.0 * y, 2.0 * x, 0.0, -2.0 * r * y};
  }
}

DivFreeBasis::Eval DivFreeBasis::value(int k, double x, double y) const {
  Eval e = raw(k, x, y);
  const double s = scale_[static_cast<std::size_t>(k)];
  e.b1 *= s;
  e.b2 *= s;
  e.d1x *= s;
  e.d1y *= s;
  e.d2x *= s;
  e.d2y *= s;
  return e;
}

double DivFreeBasis::divergence(int k, double x, double y) const {
  const Eval e = value(k, x, y);
  return e.d1x + aspect_ * e.d2y;
}

// -------------------------------------------------------------------- DgSpace

int DgSpace::scalar_slot(int comp) {
  switch (comp) {
    case kRho: return 0;
    case kMx: return 1;
    case kMy: return 2;
    case kMz: return 3;
    case kBz: return 4;
    case kEnergy: return 5;
    default: return -1;
  }
}

PointTable DgSpace::make_table(const std::vector<double>& x, const std::vector<double>& y,
                               const std::vector<double>& w) const {
  PointTable t;
  t.x = x;
  t.y = y;
  t.weight = w;
  t.ns = ns();
  t.nv = nv();
  const int n = static_cast<int>(x.size());
  t.phi.resize(static_cast<std::size_t>(n * t.ns));
  t.b1.resize(static_cast<std::size_t>(n * t.nv));
  t.b2.resize(static_cast<std::size_t>(n * t.nv));
  for (int p = 0; p < n; ++p) {
    for (int k = 0; k < t.ns; ++k) t.phi[p * t.ns + k] = scalar_.value(k, x[p], y[p]);
    for (int k = 0; k < t.nv; ++k) {
      const auto e = vector_.value(k, x[p], y[p]);
      t.b1[p * t.nv + k] = e.b1;
      t.b2[p * t.nv + k] = e.b2;
    }
  }
  return t;
}

DgSpace::DgSpace(int K, double aspect)
    : K_(K),
      scalar_(K),
      vector_(K, aspect),
      gauss_(gauss_legendre(K + 1)),
      lobatto_(gauss_lobatto(K <= 1 ? 2 : 3)) {
  const int Q = gauss_.size();
  std::vector<double> x, y, w;

  // Volume: tensor Gauss, x index fastest.
  for (int nu = 0; nu < Q; ++nu) {
    for (int mu = 0; mu < Q; ++mu) {
      x.push_back(gauss_.nodes[mu]);
      y.push_back(gauss_.nodes[nu]);
      w.push_back(gauss_.weights[mu] * gauss_.weights[nu]);
    }
  }
  static_cast<PointTable&>(volume_) = make_table(x, y, w);
  const int nvol = volume_.size();
  volume_.dphix.resize(static_cast<std::size_t>(nvol * ns()));
  volume_.dphiy.resize(static_cast<std::size_t>(nvol * ns()));
  for (auto* v : {&volume_.db1x, &volume_.db1y, &volume_.db2x, &volume_.db2y}) v->resize(static_cast<std::size_t>(nvol * nv()));
  for (int p = 0; p < nvol; ++p) {
    for (int k = 0; k < ns(); ++k) {
      const auto g = scalar_.gradient(k, x[p], y[p]);
      volume_.dphix[p * ns() + k] = g[0];
      volume_.dphiy[p * ns() + k] = g[1];
    }
    for (int k = 0; k < nv(); ++k) {
      const auto e = vector_.value(k, x[p], y[p]);
      volume_.db1x[p * nv() + k] = e.d1x;
      volume_.db1y[p * nv() + k] = e.d1y;
      volume_.db2x[p * nv() + k] = e.d2x;
      volume_.db2y[p * nv() + k] = e.d2y;
    }
  }

  // Faces: Q Gauss nodes along each face.
  for (int f = 0; f < 4; ++f) {
    x.clear();
    y.clear();
    w.clear();
    for (int mu = 0; mu < Q; ++mu) {
      const double s = gauss_.nodes[mu];
      switch (f) {
        case kLeft: x.push_back(-0.5); y.push_back(s); break;
        case kRight: x.push_back(0.5); y.push_back(s); break;
        case kBottom: x.push_back(s); y.push_back(-0.5); break;
        default: x.push_back(s); y.push_back(0.5); break;
      }
      w.push_back(gauss_.weights[mu]);
    }
    faces_[static_cast<std::size_t>(f)] = make_table(x, y, w);
  }

  // PP points: (Lobatto x Gauss) union (Gauss x Lobatto).
  x.clear();
  y.clear();
  w.clear();
  auto add_unique = [&](double px, double py) {
    for (std::size_t p = 0; p < x.size(); ++p) {
      if (std::abs(x[p] - px) < 1e-15 && std::abs(y[p] - py) < 1e-15) return;
    }
    x.push_back(px);
    y.push_back(py);
    w.push_back(0.0);
  };
  for (double lx : lobatto_.nodes) {
    for (double gy : gauss_.nodes) add_unique(lx, gy);
  }
  for (double gx : gauss_.nodes) {
    for (double ly : lobatto_.nodes) add_unique(gx, ly);
  }
  pp_ = make_table(x, y, w);

  // Projection: tensor Gauss with K + 3 points.
  const QuadratureSet gp = gauss_legendre(K + 3);
  x.clear();
  y.clear();
  w.clear();
  for (int nu = 0; nu < gp.size(); ++nu) {
    for (int mu = 0; mu < gp.size(); ++mu) {
      x.push_back(gp.nodes[mu]);
      y.push_back(gp.nodes[nu]);
      w.push_back(gp.weights[mu] * gp.weights[nu]);
    }
  }
  projection_ = make_table(x, y, w);

  // Vector Gram matrix on the projection rule (exact for degree <= 2K + 5).
  const int n = nv();
  gram_chol_.assign(static_cast<std::size_t>(n * n), 0.0);
  for (int p = 0; p < projection_.size(); ++p) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        gram_chol_[a * n + b] += projection_.weight[p] * (projection_.b1[p * n + a] * projection_.b1[p * n + b] +
                                                          projection_.b2[p * n + a] * projection_.b2[p * n + b]);
      }
    }
  }
  cholesky(gram_chol_, n);

  // Reflection matrices for the vector block.
  for (int axis = 0; axis < 2; ++axis) {
    auto& m = mirror_[static_cast<std::size_t>(axis)];
    m.assign(static_cast<std::size_t>(n * n), 0.0);
    for (int l = 0; l < n; ++l) {
      std::vector<double> col(static_cast<std::size_t>(n), 0.0);
      for (int p = 0; p < projection_.size(); ++p) {
        const double px = axis == 0 ? -projection_.x[p] : projection_.x[p];
        const double py = axis == 1 ? -projection_.y[p] : projection_.y[p];
        auto e = vector_.value(l, px, py);
        if (axis == 0) e.b1 = -e.b1;
        else e.b2 = -e.b2;
        for (int k = 0; k < n; ++k) {
          col[k] += projection_.weight[p] * (projection_.b1[p * n + k] * e.b1 + projection_.b2[p * n + k] * e.b2);
        }
      }
      cholesky_solve(gram_chol_, n, col.data());
      for (int k = 0; k < n; ++k) m[k * n + l] = col[k];
    }
  }
}

namespace {

template <int S, int V>
void evaluate_fixed(const double* c, const PointTable& t, int p, StateArray& u, int s, int v) {
  const int ns = S > 0 ? S : s;
  const int nv = V > 0 ? V : v;
  const double* phi = &t.phi[static_cast<std::size_t>(p * ns)];
  for (int slot = 0; slot < 6; ++slot) {
    const double* cs = c + slot * ns;
    double acc = 0.0;
    for (int k = 0; k < ns; ++k) acc += cs[k] * phi[k];
    u[DgSpace::kScalarComps[static_cast<std::size_t>(slot)]] = acc;
  }
  const double* cv = c + 6 * ns;
  const double* b1 = &t.b1[static_cast<std::size_t>(p * nv)];
  const double* b2 = &t.b2[static_cast<std::size_t>(p * nv)];
  double a1 = 0.0, a2 = 0.0;
  for (int k = 0; k < nv; ++k) {
    a1 += cv[k] * b1[k];
    a2 += cv[k] * b2[k];
  }
  u[kBx] = a1;
  u[kBy] = a2;
}

}  // namespace

void DgSpace::evaluate(const double* c, const PointTable& t, int p, StateArray& u) const {
  const int s = t.ns;
  const int v = t.nv;
  if (s == 6 && v == 9) evaluate_fixed<6, 9>(c, t, p, u, s, v);
  else if (s == 3 && v == 5) evaluate_fixed<3, 5>(c, t, p, u, s, v);
  else evaluate_fixed<0, 0>(c, t, p, u, s, v);
}

StateArray DgSpace::evaluate_at(const double* c, double x, double y) const {
  StateArray u{};
  for (int slot = 0; slot < 6; ++slot) {
    double acc = 0.0;
    for (int k = 0; k < ns(); ++k) acc += c[slot * ns() + k] * scalar_.value(k, x, y);
    u[kScalarComps[slot]] = acc;
  }
  double a1 = 0.0, a2 = 0.0;
  for (int k = 0; k < nv(); ++k) {
    const auto e = vector_.value(k, x, y);
    a1 += c[6 * ns() + k] * e.b1;
    a2 += c[6 * ns() + k] * e.b2;
  }
  u[kBx] = a1;
  u[kBy] = a2;
  return u;
}

StateArray DgSpace::average(const double* c) const {
  StateArray u{};
  for (int slot = 0; slot < 6; ++slot) u[kScalarComps[slot]] = c[slot * ns()];
  const double* cv = c + 6 * ns();
  u[kBx] = cv[0] * vector_.scale(0);
  u[kBy] = cv[1] * vector_.scale(1);
  return u;
}

void DgSpace::project_values(const std::vector<StateArray>& vals, double* c) const {
  const PointTable& t = projection_;
  if (static_cast<int>(vals.size()) != t.size()) throw Error("project_values: wrong number of point values");
  const int s = ns();
  const int v = nv();
  for (int i = 0; i < ncoef(); ++i) c[i] = 0.0;
  for (int p = 0; p < t.size(); ++p) {
    const StateArray& u = vals[static_cast<std::size_t>(p)];
    const double w = t.weight[p];
    for (int slot = 0; slot < 6; ++slot) {
      const double f = w * u[kScalarComps[slot]];
      for (int k = 0; k < s; ++k) c[slot * s + k] += f * t.phi[p * s + k];
    }
    for (int k = 0; k < v; ++k) c[6 * s + k] += w * (u[kBx] * t.b1[p * v + k] + u[kBy] * t.b2[p * v + k]);
  }
  // Scalar Gram is the identity on this rule; the vector block keeps its own.
  cholesky_solve(gram_chol_, v, c + 6 * s);
}

void DgSpace::reflect(const double* c, int axis, double* out) const {
  const int s = ns();
  const int v = nv();
  const int normal_mom = axis == 0 ? kMx : kMy;
  for (int slot = 0; slot < 6; ++slot) {
    const double sign = kScalarComps[slot] == normal_mom ? -1.0 : 1.0;
    for (int k = 0; k < s; ++k) {
      const int e = scalar_.exponents(k)[axis];
      out[slot * s + k] = (e % 2 == 0 ? sign : -sign) * c[slot * s + k];
    }
  }
  const auto& m = mirror_[static_cast<std::size_t>(axis)];
  for (int k = 0; k < v; ++k) {
    double acc = 0.0;
    for (int l = 0; l < v; ++l) acc += m[k * v + l] * c[6 * s + l];
    out[6 * s + k] = acc;
  }
}

// -------------------------------------------------------------------- DGField

DGField::DGField(std::shared_ptr<const DgSpace> space, int nx, int ny)
    : space_(std::move(space)), nx_(nx), ny_(ny) {
  if (!space_) throw Error("DGField: null space");
  if (nx < 1 || ny < 1) throw Error("DGField: grid dimensions must be positive");
  nc_ = space_->ncoef();
  data_.assign(static_cast<std::size_t>(nx + 2) * static_cast<std::size_t>(ny + 2) * static_cast<std::size_t>(nc_), 0.0);
}

ConservedState DGField::evaluate(int i, int j, double x, double y) const {
  if (i < 0 || i >= nx_ || j < 0 || j >= ny_) throw Error("DGField::evaluate: cell index out of range");
  constexpr double tol = 1e-14;
  if (!(std::abs(x) <= 0.5 + tol) || !(std::abs(y) <= 0.5 + tol)) {
    throw Error("DGField::evaluate: point outside the reference cell");
  }
  return ConservedState::unchecked(space_->evaluate_at(cell(i, j), x, y));
}

}  // namespace ppmhd
