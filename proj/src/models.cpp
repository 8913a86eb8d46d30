#include "rank1/models.hpp"

#include <cmath>

namespace rank1 {

namespace {

double raw_height_h(const Scalar& zeta, const ModuleVector& v) {
  return re(zeta) - 0.5 * v.norm2();
}

double raw_height_d(const Scalar& zeta, const ModuleVector& v) {
  return re(zeta) - 0.25 * v.norm2();
}

void require_shapes(const Scalar& zeta, const ModuleVector& v, const char* what) {
  if (zeta.field != v.field) throw FieldMismatch(std::string(what) + ": field mismatch");
}

}  // namespace

HPoint HPoint::interior(const Scalar& zeta, const ModuleVector& v, double tol) {
  require_shapes(zeta, v, "HPoint");
  if (raw_height_h(zeta, v) <= -tol)
    throw DomainError("point below the half-space boundary, height " +
                      std::to_string(raw_height_h(zeta, v)));
  return HPoint{PointKind::Interior, zeta.field, v.size() + 1, zeta, v};
}

HPoint HPoint::boundary(const Scalar& zeta, const ModuleVector& v, double tol) {
  require_shapes(zeta, v, "HPoint");
  if (std::fabs(raw_height_h(zeta, v)) > tol)
    throw DomainError("not a boundary point, height " + std::to_string(raw_height_h(zeta, v)));
  return HPoint{PointKind::Boundary, zeta.field, v.size() + 1, zeta, v};
}

HPoint HPoint::infinity(Field f, int n) {
  return HPoint{PointKind::Infinity, f, n, Scalar::zero(f), ModuleVector::zero(f, n - 1)};
}

HPoint make_h_point(const Scalar& zeta, const ModuleVector& v, double tol) {
  const double h = raw_height_h(zeta, v);
  if (h > tol) return HPoint::interior(zeta, v, tol);
  if (h >= -tol) return HPoint::boundary(zeta, v, tol);
  throw DomainError("point outside the closed half-space, height " + std::to_string(h));
}

DPoint DPoint::interior(const Scalar& zeta, const ModuleVector& v, double tol) {
  require_shapes(zeta, v, "DPoint");
  if (raw_height_d(zeta, v) <= -tol)
    throw DomainError("point below the domain boundary, height " +
                      std::to_string(raw_height_d(zeta, v)));
  return DPoint{PointKind::Interior, zeta.field, v.size() + 1, zeta, v};
}

DPoint DPoint::boundary(const Scalar& zeta, const ModuleVector& v, double tol) {
  require_shapes(zeta, v, "DPoint");
  if (std::fabs(raw_height_d(zeta, v)) > tol)
    throw DomainError("not a boundary point, height " + std::to_string(raw_height_d(zeta, v)));
  return DPoint{PointKind::Boundary, zeta.field, v.size() + 1, zeta, v};
}

DPoint DPoint::infinity(Field f, int n) {
  return DPoint{PointKind::Infinity, f, n, Scalar::zero(f), ModuleVector::zero(f, n - 1)};
}

DPoint make_d_point(const Scalar& zeta, const ModuleVector& v, double tol) {
  const double h = raw_height_d(zeta, v);
  if (h > tol) return DPoint::interior(zeta, v, tol);
  if (h >= -tol) return DPoint::boundary(zeta, v, tol);
  throw DomainError("point outside the closed domain, height " + std::to_string(h));
}

BallPoint BallPoint::interior(const WPair& w, double tol) {
  if (std::sqrt(w.norm2()) >= 1.0 + tol) throw DomainError("|w| >= 1");
  return BallPoint{PointKind::Interior, w};
}

BallPoint BallPoint::boundary(const WPair& w, double tol) {
  if (std::fabs(std::sqrt(w.norm2()) - 1.0) > tol) throw DomainError("|w| != 1");
  return BallPoint{PointKind::Boundary, w};
}

BallPoint make_ball_point(const WPair& w, double tol) {
  const double r = std::sqrt(w.norm2());
  if (r < 1.0 - tol) return BallPoint::interior(w, tol);
  if (r <= 1.0 + tol) return BallPoint::boundary(w, tol);
  throw DomainError("point outside the closed ball, |w| = " + std::to_string(r));
}

double height_h(const HPoint& z) {
  if (z.is_infinity()) throw InfinityArgument("height_h(infinity)");
  return raw_height_h(z.zeta, z.v);
}

double height_d(const DPoint& z) {
  if (z.is_infinity()) throw InfinityArgument("height_d(infinity)");
  return raw_height_d(z.zeta, z.v);
}

DPoint h_to_d(const HPoint& z) {
  if (z.is_infinity()) return DPoint::infinity(z.field, z.n);
  return DPoint{z.kind, z.field, z.n, z.zeta, std::sqrt(2.0) * z.v};
}

HPoint d_to_h(const DPoint& z) {
  if (z.is_infinity()) return HPoint::infinity(z.field, z.n);
  return HPoint{z.kind, z.field, z.n, z.zeta, (1.0 / std::sqrt(2.0)) * z.v};
}

HCoords h_coordinates(const DPoint& z) {
  if (z.is_infinity()) throw InfinityArgument("h_coordinates(infinity)");
  return HCoords{height_d(z), im(z.zeta), z.v};
}

DPoint hcoords_to_d(const HCoords& c, double tol) {
  Scalar zeta = c.Z;
  zeta.c[0] = c.height + 0.25 * c.X.norm2();
  return make_d_point(zeta, c.X, tol);
}

DPoint cayley(const BallPoint& b) {
  const Field f = b.w.field();
  const int n = b.w.v.size() + 1;
  const Scalar one = Scalar::one(f);
  const Scalar d = one - b.w.zeta;
  if (d.norm2() < 1e-28) return DPoint::infinity(f, n);
  const double s = 1.0 / d.norm2();
  Scalar zeta = 2.0 * im(b.w.zeta);
  zeta.c[0] = 1.0 - b.w.zeta.norm2();
  zeta = s * zeta;
  const ModuleVector v = (2.0 * s) * (conj(d) * b.w.v);
  if (b.kind == PointKind::Boundary) return DPoint::boundary(zeta, v, 1e-7);
  return DPoint{PointKind::Interior, f, n, zeta, v};
}

BallPoint cayley_inv(const DPoint& d) {
  const Field f = d.field;
  if (d.is_infinity())
    return BallPoint::boundary(WPair(Scalar::one(f), ModuleVector::zero(f, d.n - 1)));
  const Scalar one = Scalar::one(f);
  const Scalar q = one + d.zeta;
  const double s = 1.0 / q.norm2();
  Scalar zb = 2.0 * im(d.zeta);
  zb.c[0] = d.zeta.norm2() - 1.0;
  zb = s * zb;
  const ModuleVector vb = s * (conj(q) * d.v);
  const WPair w(zb, vb);
  if (d.kind == PointKind::Boundary) return BallPoint::boundary(w, 1e-7);
  return BallPoint{PointKind::Interior, w};
}

namespace {

// zeta^{-1} (1, -v); total once 0 and infinity are special-cased.
template <typename P>
P invert_coords(const P& z) {
  const Scalar zi = inv(z.zeta);
  return P{z.kind, z.field, z.n, zi, -(zi * z.v)};
}

}  // namespace

HPoint geodesic_inversion_h(const HPoint& z) {
  if (z.is_infinity())
    return HPoint::boundary(Scalar::zero(z.field), ModuleVector::zero(z.field, z.n - 1));
  if (z.zeta.norm2() < 1e-280) return HPoint::infinity(z.field, z.n);
  return invert_coords(z);
}

DPoint geodesic_inversion_d(const DPoint& z) {
  if (z.is_infinity())
    return DPoint::boundary(Scalar::zero(z.field), ModuleVector::zero(z.field, z.n - 1));
  if (z.zeta.norm2() < 1e-280) return DPoint::infinity(z.field, z.n);
  return invert_coords(z);
}

SElement::SElement(double t_, Scalar Z_, ModuleVector X_) : t(t_), Z(std::move(Z_)), X(std::move(X_)) {
  if (t <= 0.0) throw DomainError("group element needs t > 0");
  if (std::fabs(re(Z)) > 0.0) Z.c[0] = 0.0;  // vertical component is imaginary
}

SElement SElement::identity(Field f, int n) {
  return SElement(1.0, Scalar::zero(f), ModuleVector::zero(f, n - 1));
}

SElement s_mul(const SElement& a, const SElement& b) {
  const double rt = std::sqrt(a.t);
  SElement r;
  r.t = a.t * b.t;
  r.Z = a.Z + a.t * b.Z + (0.5 * rt) * lie_bracket(a.X, b.X);
  r.X = a.X + rt * b.X;
  return r;
}

SElement s_inv(const SElement& a) {
  SElement r;
  r.t = 1.0 / a.t;
  r.Z = (-1.0 / a.t) * a.Z;
  r.X = (-1.0 / std::sqrt(a.t)) * a.X;
  return r;
}

DPoint s_act(const SElement& s, const DPoint& p) {
  if (p.is_infinity()) return p;
  const HCoords c = h_coordinates(p);
  // Multiply in the closure of S; the first component may be zero.
  const double rt = std::sqrt(s.t);
  HCoords out;
  out.height = s.t * c.height;
  out.Z = s.Z + s.t * c.Z + (0.5 * rt) * lie_bracket(s.X, c.X);
  out.X = s.X + rt * c.X;
  return hcoords_to_d(out);
}

namespace {

// Orthogonal projection of X onto the scalar line C.w (w != 0); the basis
// {e_k w} is orthogonal of common norm |w|.
WPair project_scalar_line(const WPair& w, const WPair& X) {
  const Field f = w.field();
  WPair acc = 0.0 * X;
  const double w2 = w.norm2();
  for (int k = 0; k < field_dim(f); ++k) {
    const WPair bw = Scalar::unit(f, k) * w;
    acc = acc + (euclid_inner(X, bw) / w2) * bw;
  }
  return acc;
}

}  // namespace

double ball_metric(const BallPoint& w, const WPair& X, const WPair& Y) {
  if (w.kind != PointKind::Interior) throw DomainError("ball metric needs |w| < 1");
  const double w2 = w.w.norm2();
  const double denom = 1.0 - w2;
  if (w2 == 0.0) return 4.0 * euclid_inner(X, Y);
  const WPair Xpar = project_scalar_line(w.w, X);
  const WPair Ypar = project_scalar_line(w.w, Y);
  const WPair Xperp = X - Xpar;
  const WPair Yperp = Y - Ypar;
  return 4.0 * euclid_inner(Xpar, Ypar) / (denom * denom) +
         4.0 * euclid_inner(Xperp, Yperp) / denom;
}

double tilde_rho(const BallPoint& p, const WPair& X, const WPair& Y) {
  if (p.kind != PointKind::Interior) throw DomainError("metric needs |p| < 1");
  const double denom = 1.0 - p.w.norm2();
  const Scalar bx = beta3(X, p.w);
  const Scalar by = beta3(Y, p.w);
  double cross = 0.0;
  for (int k = 0; k < 4; ++k) cross += bx.c[static_cast<std::size_t>(k)] * by.c[static_cast<std::size_t>(k)];
  return euclid_inner(X, Y) / denom + cross / (denom * denom);
}

DPoint nu(double t, const std::vector<double>& Z) {
  if (t <= 0.0) throw DomainError("nu needs t > 0");
  const int n = static_cast<int>(Z.size()) + 1;
  double z2 = 0.0;
  for (double zk : Z) z2 += zk * zk;
  ModuleVector v = ModuleVector::zero(Field::R, n - 1);
  for (int k = 0; k < n - 1; ++k) v.e[static_cast<std::size_t>(k)] = Scalar(Field::R, 2.0 * Z[static_cast<std::size_t>(k)]);
  return DPoint::interior(Scalar(Field::R, t * t + z2), v);
}

void nu_inv(const DPoint& z, double& t, std::vector<double>& Z) {
  if (z.field != Field::R) throw FieldMismatch("nu_inv is defined over R only");
  if (z.kind != PointKind::Interior) throw DomainError("nu_inv needs an interior point");
  const double h = height_d(z);
  t = std::sqrt(h);
  Z.assign(static_cast<std::size_t>(z.n - 1), 0.0);
  for (int k = 0; k < z.n - 1; ++k) Z[static_cast<std::size_t>(k)] = 0.5 * z.v.e[static_cast<std::size_t>(k)].c[0];
}

}  // namespace rank1
