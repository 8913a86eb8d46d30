#include "rank1/spheres.hpp"

#include <cmath>

namespace rank1 {

namespace {

bool fixes_infinity(const MatrixLift& m, double tol = 1e-12) {
  return abs(m.at(1, 0)) <= tol * std::max(1.0, m.max_entry_abs());
}

}  // namespace

IsometricSphere isometric_sphere(const MatrixLift& m, const std::string& word, double cross_tol) {
  if (fixes_infinity(m))
    throw StabilizerElement("element fixes infinity; it has no isometric sphere");
  const Field f = m.field;
  const int n = m.n;
  const MatrixLift minv = inverse_unitary(m);
  const HPoint center = act(minv, HPoint::infinity(f, n));
  const double r_cocycle = 1.0 / std::sqrt(cocycle_j(minv, HPoint::infinity(f, n)).modulus);

  // Independent geometric route for the dilation part: strip the boundary
  // translations off both sides and read the image of the base point.
  const HPoint ginf = act(m, HPoint::infinity(f, n));
  Scalar tau1 = ginf.zeta;
  tau1.c[0] = 0.5 * ginf.v.norm2();
  Scalar tau2c = conj(center.zeta);
  tau2c.c[0] = 0.5 * center.v.norm2();
  const MatrixLift stripped = inverse_unitary(lift(Translation(tau2c, -center.v), f, n)) * m *
                              inverse_unitary(lift(Translation(tau1, ginf.v), f, n)) *
                              lift_sigma(f, n);
  const HPoint base = HPoint::interior(Scalar::one(f), ModuleVector::zero(f, n - 1));
  const double t_geom = re(act(stripped, base).zeta);
  if (t_geom <= 0.0) throw Error("geometric dilation read failed");
  const double r_geom = std::pow(t_geom, -0.25);

  // The comparison is meaningful only within the precision the stripping
  // products can carry; the tolerance follows that conditioning.
  const double cond = std::max(1.0, abs(tau1) + std::sqrt(ginf.v.norm2())) *
                      std::max(1.0, abs(tau2c) + std::sqrt(center.v.norm2())) *
                      std::max(1.0, m.max_entry_abs());
  const double tol = std::max(cross_tol, 1e-13 * cond * cond / std::max(t_geom, 1e-300));
  if (std::fabs(r_cocycle - r_geom) > tol * r_cocycle)
    throw Error("radius routes disagree: " + std::to_string(r_cocycle) + " vs " +
                std::to_string(r_geom));
  return IsometricSphere{center, r_cocycle, word};
}

IsometricSphere isometric_sphere(const BruhatIsometry& g, const std::string& word,
                                 double cross_tol) {
  if (!g.inversion) throw StabilizerElement("element fixes infinity; it has no isometric sphere");
  IsometricSphere s = isometric_sphere(lift(g), word, cross_tol);
  const double direct = std::pow(g.t, -0.25);
  if (std::fabs(s.radius - direct) > cross_tol * direct)
    throw Error("radius disagrees with the dilation part");
  return s;
}

double dist_to_center(const IsometricSphere& s, const HPoint& z) {
  return cygan_h(z, s.center);
}

double sphere_ratio(const IsometricSphere& s, const HPoint& z) {
  return dist_to_center(s, z) / s.radius;
}

SpherePosition classify(const IsometricSphere& s, const HPoint& z, double band) {
  const double r = sphere_ratio(s, z);
  if (std::fabs(r - 1.0) < band) return SpherePosition::On;
  return r < 1.0 ? SpherePosition::Interior : SpherePosition::Exterior;
}

double height_transform(const MatrixLift& m, const HPoint& z) {
  if (z.kind != PointKind::Interior) throw DomainError("height prediction needs an interior point");
  const IsometricSphere s = isometric_sphere(m);
  const double ratio = sphere_ratio(s, z);
  return height_h(z) / (ratio * ratio * ratio * ratio);
}

IsometricSphere conjugate_sphere(const MatrixLift& h_stab, const MatrixLift& g,
                                 const std::string& word) {
  if (!fixes_infinity(h_stab, 1e-10))
    throw NonStabilizerConjugator("conjugator must fix infinity");
  const MatrixLift conj_mat = inverse_unitary(h_stab) * g * h_stab;
  return isometric_sphere(conj_mat, word);
}

}  // namespace rank1
