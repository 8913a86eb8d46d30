#pragma once

#include "rank1/jmodule.hpp"

namespace rank1 {

// Default absolute tolerance on heights when classifying a raw coordinate
// pair as interior or boundary.  Sphere centers are boundary points and carry
// an explicit tag from then on; the tolerance is used only at construction.
inline constexpr double kBoundaryHeightTol = 1e-9;

enum class PointKind : std::uint8_t { Interior, Boundary, Infinity };

// Point of the half-space model H = { re(zeta) > |v|^2/2 }, of its boundary,
// or the point at infinity.
struct HPoint {
  PointKind kind{PointKind::Infinity};
  Field field{Field::R};
  int n = 2;
  Scalar zeta;
  ModuleVector v;

  static HPoint interior(const Scalar& zeta, const ModuleVector& v,
                         double tol = kBoundaryHeightTol);
  static HPoint boundary(const Scalar& zeta, const ModuleVector& v,
                         double tol = kBoundaryHeightTol);
  static HPoint infinity(Field f, int n);

  bool is_infinity() const { return kind == PointKind::Infinity; }
};

// Classifies by height: interior above tol, boundary within tol, else throws.
HPoint make_h_point(const Scalar& zeta, const ModuleVector& v, double tol = kBoundaryHeightTol);

// Point of the model D = { re(zeta) > |v|^2/4 }.
struct DPoint {
  PointKind kind{PointKind::Infinity};
  Field field{Field::R};
  int n = 2;
  Scalar zeta;
  ModuleVector v;

  static DPoint interior(const Scalar& zeta, const ModuleVector& v,
                         double tol = kBoundaryHeightTol);
  static DPoint boundary(const Scalar& zeta, const ModuleVector& v,
                         double tol = kBoundaryHeightTol);
  static DPoint infinity(Field f, int n);

  bool is_infinity() const { return kind == PointKind::Infinity; }
};

DPoint make_d_point(const Scalar& zeta, const ModuleVector& v, double tol = kBoundaryHeightTol);

// Point of the unit ball model in W = C + V; boundary sphere allowed.
struct BallPoint {
  PointKind kind{PointKind::Interior};
  WPair w;

  static BallPoint interior(const WPair& w, double tol = kBoundaryHeightTol);
  static BallPoint boundary(const WPair& w, double tol = kBoundaryHeightTol);
};

BallPoint make_ball_point(const WPair& w, double tol = kBoundaryHeightTol);

// Heights (horosphere level relative to infinity).  Infinity is rejected.
double height_h(const HPoint& z);
double height_d(const DPoint& z);

// The two half-space models differ by v -> sqrt(2) v; heights agree.
DPoint h_to_d(const HPoint& z);
HPoint d_to_h(const DPoint& z);

// Horospherical coordinates of a D-model point: height, vertical component,
// horizontal component.
struct HCoords {
  double height = 0.0;
  Scalar Z;        // purely imaginary
  ModuleVector X;
};

HCoords h_coordinates(const DPoint& z);
DPoint hcoords_to_d(const HCoords& c, double tol = kBoundaryHeightTol);

// Cayley transform between the ball and D; the boundary point (1,0) maps to
// infinity and back.
DPoint cayley(const BallPoint& b);
BallPoint cayley_inv(const DPoint& d);

// Geodesic inversion at the base point; an involution of the compactified
// domain swapping 0 and infinity.
HPoint geodesic_inversion_h(const HPoint& z);
DPoint geodesic_inversion_d(const DPoint& z);

// Element of the solvable group S in (t, Z, X) coordinates, t > 0.
struct SElement {
  double t = 1.0;
  Scalar Z;        // purely imaginary
  ModuleVector X;

  SElement() = default;
  SElement(double t_, Scalar Z_, ModuleVector X_);
  static SElement identity(Field f, int n);
};

SElement s_mul(const SElement& a, const SElement& b);
SElement s_inv(const SElement& a);
// Simply transitive action on D through the horospherical chart.
DPoint s_act(const SElement& s, const DPoint& p);

// Riemannian metric of the ball model.  Tangent vectors decompose against
// the scalar line through w before the two conformal factors apply.
double ball_metric(const BallPoint& w, const WPair& X, const WPair& Y);

// Quarter of the ball metric, written through beta3.
double tilde_rho(const BallPoint& p, const WPair& X, const WPair& Y);

// Isometry from the degenerate real half-space { t > 0 } onto D (field R
// only): (t, Z) -> (t^2 + |Z|^2, 2Z).
DPoint nu(double t, const std::vector<double>& Z);
// Inverse chart; requires an interior real D-point.
void nu_inv(const DPoint& z, double& t, std::vector<double>& Z);

}  // namespace rank1
