#include "rank1/isometries.hpp"

#include <algorithm>
#include <cmath>

namespace rank1 {

namespace {

void require_evec(const EVec& z1, const EVec& z2, const char* op) {
  if (z1.empty() || z1.size() != z2.size())
    throw DimensionMismatch(std::string(op) + ": representative lengths differ");
  if (z1[0].field != z2[0].field) throw FieldMismatch(std::string(op) + ": field mismatch");
}

}  // namespace

Scalar psi1_form(const EVec& z1, const EVec& z2) {
  require_evec(z1, z2, "psi1");
  Scalar s = beta1(z1[1], z2[1]) - beta1(z1[0], z2[0]);
  for (std::size_t k = 2; k < z1.size(); ++k) s = s + beta1(z1[k], z2[k]);
  return s;
}

Scalar psi2_form(const EVec& z1, const EVec& z2) {
  require_evec(z1, z2, "psi2");
  Scalar s = -beta1(z1[0], z2[1]) - beta1(z1[1], z2[0]);
  for (std::size_t k = 2; k < z1.size(); ++k) s = s + beta1(z1[k], z2[k]);
  return s;
}

EVec transform_T(const EVec& z) {
  if (z.size() < 2) throw DimensionMismatch("transform_T: representative too short");
  const double r = 1.0 / std::sqrt(2.0);
  EVec out = z;
  out[0] = r * (z[0] - z[1]);
  out[1] = r * (z[0] + z[1]);
  return out;
}

EVec transform_T_inv(const EVec& z) {
  if (z.size() < 2) throw DimensionMismatch("transform_T_inv: representative too short");
  const double r = 1.0 / std::sqrt(2.0);
  EVec out = z;
  out[0] = r * (z[0] + z[1]);
  out[1] = r * (z[1] - z[0]);
  return out;
}

EVec section_i_h(const HPoint& z) {
  EVec row(static_cast<std::size_t>(z.n + 1), Scalar::zero(z.field));
  if (z.is_infinity()) {
    row[1] = Scalar::one(z.field);
    return row;
  }
  row[0] = Scalar::one(z.field);
  row[1] = z.zeta;
  for (int k = 0; k < z.n - 1; ++k) row[static_cast<std::size_t>(k + 2)] = z.v.e[static_cast<std::size_t>(k)];
  return row;
}

HPoint project_pi_h(const EVec& z, double tol) {
  if (z.size() < 3) throw DimensionMismatch("representative too short");
  const Field f = z[0].field;
  const int n = static_cast<int>(z.size()) - 1;
  double scale = 0.0;
  for (const auto& s : z) scale = std::max(scale, abs(s));
  if (scale == 0.0) throw DomainError("zero representative");
  if (abs(z[0]) <= 1e-12 * scale) return HPoint::infinity(f, n);
  const Scalar lead = inv(z[0]);
  ModuleVector v = ModuleVector::zero(f, n - 1);
  for (int k = 0; k < n - 1; ++k) v.e[static_cast<std::size_t>(k)] = lead * z[static_cast<std::size_t>(k + 2)];
  return make_h_point(lead * z[1], v, tol);
}

// ------------------------------- MatrixLift --------------------------------

MatrixLift::MatrixLift(Field f, int n_) : field(f), n(n_) {
  if (n < 2) throw DimensionMismatch("matrix needs n >= 2");
  m.assign(static_cast<std::size_t>(dim()) * dim(), Scalar::zero(f));
}

MatrixLift MatrixLift::identity(Field f, int n) {
  MatrixLift r(f, n);
  for (int i = 0; i < r.dim(); ++i) r.at(i, i) = Scalar::one(f);
  return r;
}

double MatrixLift::max_entry_abs() const {
  double mx = 0.0;
  for (const auto& s : m) mx = std::max(mx, abs(s));
  return mx;
}

MatrixLift operator*(const MatrixLift& a, const MatrixLift& b) {
  if (a.field != b.field) throw FieldMismatch("matrix product: field mismatch");
  if (a.n != b.n) throw DimensionMismatch("matrix product: size mismatch");
  MatrixLift r(a.field, a.n);
  const int d = a.dim();
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const Scalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < d; ++j) r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
    }
  return r;
}

MatrixLift operator*(const Scalar& a, const MatrixLift& m) {
  MatrixLift r = m;
  for (auto& s : r.m) s = a * s;
  return r;
}

EVec apply_row(const EVec& z, const MatrixLift& m) {
  if (static_cast<int>(z.size()) != m.dim())
    throw DimensionMismatch("apply_row: representative length mismatch");
  EVec out(z.size(), Scalar::zero(m.field));
  for (int k = 0; k < m.dim(); ++k) {
    if (z[static_cast<std::size_t>(k)].is_zero()) continue;
    for (int j = 0; j < m.dim(); ++j)
      out[static_cast<std::size_t>(j)] = out[static_cast<std::size_t>(j)] + z[static_cast<std::size_t>(k)] * m.at(k, j);
  }
  return out;
}

MatrixLift psi2_gram(Field f, int n) {
  MatrixLift q(f, n);
  q.at(0, 1) = -Scalar::one(f);
  q.at(1, 0) = -Scalar::one(f);
  for (int k = 2; k < q.dim(); ++k) q.at(k, k) = Scalar::one(f);
  return q;
}

double q_residual(const MatrixLift& m) {
  const MatrixLift q = psi2_gram(m.field, m.n);
  // M Q M^*
  MatrixLift mq = m * q;
  MatrixLift madj(m.field, m.n);
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) madj.at(i, j) = conj(m.at(j, i));
  MatrixLift lhs = mq * madj;
  double r = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r = std::max(r, abs(lhs.at(i, j) - q.at(i, j)));
  const double scale = m.max_entry_abs();
  return r / std::max(1.0, scale * scale);
}

MatrixLift inverse_unitary(const MatrixLift& m) {
  const MatrixLift q = psi2_gram(m.field, m.n);
  MatrixLift madj(m.field, m.n);
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) madj.at(i, j) = conj(m.at(j, i));
  return q * madj * q;
}

// ------------------------------- Translation -------------------------------

Translation::Translation(const Scalar& tau, const ModuleVector& u, double tol) : tau0(tau), u0(u) {
  if (tau.field != u.field) throw FieldMismatch("translation parameters");
  const double defect = std::fabs(re(tau0) - 0.5 * u0.norm2());
  if (defect > tol * std::max(1.0, 0.5 * u0.norm2()))
    throw DomainError("translation parameter is not a boundary point, defect " +
                      std::to_string(defect));
}

Translation Translation::identity(Field f, int n) {
  return Translation(Scalar::zero(f), ModuleVector::zero(f, n - 1));
}

bool Translation::is_identity(double tol) const {
  return abs(tau0) <= tol && u0.is_zero(tol);
}

Translation Translation::inverse() const { return Translation(conj(tau0), -u0); }

Translation compose(const Translation& a, const Translation& b) {
  // (a o b)(0) = (tau_a + tau_b + beta2(u_b, u_a), u_a + u_b)
  Scalar tau = a.tau0 + b.tau0 + beta2(b.u0, a.u0);
  // Pin the real part to the boundary constraint; it holds algebraically.
  ModuleVector u = a.u0 + b.u0;
  tau.c[0] = 0.5 * u.norm2();
  return Translation(tau, u);
}

// -------------------------------- Rotation ---------------------------------

Rotation::Rotation(Field f, int n_) : field(f), n(n_) {
  if (n < 2) throw DimensionMismatch("rotation needs n >= 2");
  a.assign(static_cast<std::size_t>(dim()) * dim(), Scalar::zero(f));
}

Rotation Rotation::identity(Field f, int n) {
  Rotation r(f, n);
  for (int i = 0; i < r.dim(); ++i) r.at(i, i) = Scalar::one(f);
  return r;
}

double Rotation::unitarity_residual() const {
  double res = 0.0;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      Scalar s = Scalar::zero(field);
      for (int k = 0; k < dim(); ++k) s = s + at(i, k) * conj(at(j, k));
      if (i == j) s = s - Scalar::one(field);
      res = std::max(res, abs(s));
    }
  return res;
}

ModuleVector Rotation::apply(const ModuleVector& v) const {
  if (v.field != field || v.size() != dim())
    throw DimensionMismatch("rotation apply: shape mismatch");
  ModuleVector out = ModuleVector::zero(field, dim());
  for (int k = 0; k < dim(); ++k) {
    if (v.e[static_cast<std::size_t>(k)].is_zero()) continue;
    for (int j = 0; j < dim(); ++j)
      out.e[static_cast<std::size_t>(j)] = out.e[static_cast<std::size_t>(j)] + v.e[static_cast<std::size_t>(k)] * at(k, j);
  }
  return out;
}

Rotation Rotation::inverse() const {
  Rotation r(field, n);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) r.at(i, j) = conj(at(j, i));
  return r;
}

// ----------------------------- BruhatIsometry ------------------------------

BruhatIsometry BruhatIsometry::make_translation(const Translation& tr) {
  const Field f = tr.tau0.field;
  const int n = tr.u0.size() + 1;
  return BruhatIsometry{Translation::identity(f, n), false, Rotation::identity(f, n), 1.0, tr};
}

BruhatIsometry BruhatIsometry::make_dilation(Field f, int n, double t) {
  if (t <= 0.0) throw DomainError("dilation needs t > 0");
  return BruhatIsometry{Translation::identity(f, n), false, Rotation::identity(f, n), t,
                        Translation::identity(f, n)};
}

BruhatIsometry BruhatIsometry::make_rotation(const Rotation& rot) {
  const Field f = rot.field;
  return BruhatIsometry{Translation::identity(f, rot.n), false, rot, 1.0,
                        Translation::identity(f, rot.n)};
}

BruhatIsometry BruhatIsometry::make_inversion(Field f, int n) {
  return BruhatIsometry{Translation::identity(f, n), true, Rotation::identity(f, n), 1.0,
                        Translation::identity(f, n)};
}

namespace {

HPoint translate(const Translation& tr, const HPoint& z) {
  if (z.is_infinity()) return z;
  Scalar zeta = z.zeta + tr.tau0 + beta2(z.v, tr.u0);
  return HPoint{z.kind, z.field, z.n, zeta, z.v + tr.u0};
}

HPoint dilate(double t, const HPoint& z) {
  if (z.is_infinity()) return z;
  return HPoint{z.kind, z.field, z.n, t * z.zeta, std::sqrt(t) * z.v};
}

HPoint rotate(const Rotation& rot, const HPoint& z) {
  if (z.is_infinity()) return z;
  return HPoint{z.kind, z.field, z.n, z.zeta, rot.apply(z.v)};
}

}  // namespace

HPoint act(const BruhatIsometry& g, const HPoint& z) {
  HPoint p = translate(g.n2, z);
  p = dilate(g.t, p);
  p = rotate(g.rot, p);
  if (g.inversion) {
    p = geodesic_inversion_h(p);
    p = translate(g.n1, p);
  }
  return p;
}

BruhatIsometry bruhat_inverse(const BruhatIsometry& g) {
  return bruhat_decompose(inverse_unitary(lift(g))).iso;
}

HPoint act(const MatrixLift& m, const HPoint& z) {
  if (m.field != z.field || m.n != z.n) throw DimensionMismatch("act: matrix/point mismatch");
  const EVec u = apply_row(section_i_h(z), m);
  double scale = 0.0;
  for (const auto& s : u) scale = std::max(scale, abs(s));
  if (abs(u[0]) <= 1e-12 * scale) {
    if (z.kind == PointKind::Interior)
      throw DomainError("interior point mapped to a vanishing representative");
    return HPoint::infinity(m.field, m.n);
  }
  const Scalar lead = inv(u[0]);
  Scalar zeta = lead * u[1];
  ModuleVector v = ModuleVector::zero(m.field, m.n - 1);
  for (int k = 0; k < m.n - 1; ++k) v.e[static_cast<std::size_t>(k)] = lead * u[static_cast<std::size_t>(k + 2)];
  if (z.kind == PointKind::Interior) return HPoint{PointKind::Interior, m.field, m.n, zeta, v};
  // Boundary and infinity map into the boundary once the leading coordinate
  // survives; pin the height against accumulated rounding.
  zeta.c[0] = 0.5 * v.norm2();
  return HPoint{PointKind::Boundary, m.field, m.n, zeta, v};
}

// --------------------------------- lifts -----------------------------------

MatrixLift lift(const Translation& tr, Field f, int n) {
  MatrixLift m = MatrixLift::identity(f, n);
  m.at(0, 1) = tr.tau0;
  for (int k = 0; k < n - 1; ++k) {
    m.at(0, k + 2) = tr.u0.e[static_cast<std::size_t>(k)];
    m.at(k + 2, 1) = conj(tr.u0.e[static_cast<std::size_t>(k)]);
  }
  return m;
}

MatrixLift lift_dilation(Field f, int n, double t) {
  if (t <= 0.0) throw DomainError("dilation needs t > 0");
  MatrixLift m = MatrixLift::identity(f, n);
  m.at(0, 0) = Scalar(f, 1.0 / std::sqrt(t));
  m.at(1, 1) = Scalar(f, std::sqrt(t));
  return m;
}

MatrixLift lift_sigma(Field f, int n) {
  MatrixLift m(f, n);
  m.at(0, 1) = Scalar::one(f);
  m.at(1, 0) = Scalar::one(f);
  for (int k = 2; k < m.dim(); ++k) m.at(k, k) = -Scalar::one(f);
  return m;
}

MatrixLift lift(const Rotation& rot) {
  MatrixLift m = MatrixLift::identity(rot.field, rot.n);
  for (int i = 0; i < rot.dim(); ++i)
    for (int j = 0; j < rot.dim(); ++j) m.at(i + 2, j + 2) = rot.at(i, j);
  return m;
}

MatrixLift lift(const BruhatIsometry& g) {
  const Field f = g.rot.field;
  const int n = g.rot.n;
  if (g.rot.unitarity_residual() > 1e-8)
    throw NotInGres("rotation block is not unitary, residual " +
                    std::to_string(g.rot.unitarity_residual()));
  MatrixLift m = lift(g.n2, f, n) * lift_dilation(f, n, g.t) * lift(g.rot);
  if (g.inversion) m = m * lift_sigma(f, n) * lift(g.n1, f, n);
  return m;
}

// ------------------------------- decompose ---------------------------------

BruhatDecomposition bruhat_decompose(const MatrixLift& m, double q_tol, double struct_tol,
                                     double stab_tol) {
  const Field f = m.field;
  const int n = m.n;
  const double qres = q_residual(m);
  if (qres > q_tol)
    throw DomainError("matrix does not preserve the form, residual " + std::to_string(qres));

  const double scale = std::max(1.0, m.max_entry_abs());
  const bool fixes_infinity = abs(m.at(1, 0)) <= stab_tol * scale;

  // The factored form determines every parameter entrywise:
  //   no inversion:  row0 = a (1/s, s tau2, u2 A),  row1 = a (0, s, 0),
  //                  rowk = a (0, s conj(u2_k), A_k)
  //   inversion:     row1 = a s (1, tau1, u1),  col0_k = a s conj(u2_k),
  //                  M00 = a s tau2,  M_kj = a (conj(u2_k) s u1_j - A_kj)
  // with s = sqrt(t) and a central unit a.  Reading entries avoids the badly
  // conditioned cancellation of forming the residual by matrix products.
  BruhatIsometry out;
  Scalar phase;

  if (fixes_infinity) {
    out.inversion = false;
    out.n1 = Translation::identity(f, n);
    const double s = abs(m.at(1, 1));
    if (s <= 0.0) throw NotInGres("vanishing dilation entry");
    out.t = s * s;
    phase = (1.0 / s) * m.at(1, 1);
    const Scalar lead_inv = inv(m.at(1, 1));  // (a s)^{-1}
    Scalar tau2 = m.at(0, 1) * lead_inv;
    ModuleVector u2 = ModuleVector::zero(f, n - 1);
    for (int k = 0; k < n - 1; ++k) u2.e[static_cast<std::size_t>(k)] = conj(m.at(k + 2, 1) * lead_inv);
    tau2.c[0] = 0.5 * u2.norm2();
    out.n2 = Translation(tau2, u2);
    const Scalar phase_inv = inv(phase);
    Rotation rot(f, n);
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j < n - 1; ++j) rot.at(i, j) = phase_inv * m.at(i + 2, j + 2);
    out.rot = rot;
  } else {
    out.inversion = true;
    const double s = abs(m.at(1, 0));
    out.t = s * s;
    phase = (1.0 / s) * m.at(1, 0);
    const Scalar lead_inv = inv(m.at(1, 0));  // (a s)^{-1}
    Scalar tau1 = lead_inv * m.at(1, 1);
    ModuleVector u1 = ModuleVector::zero(f, n - 1);
    for (int k = 0; k < n - 1; ++k) u1.e[static_cast<std::size_t>(k)] = lead_inv * m.at(1, k + 2);
    tau1.c[0] = 0.5 * u1.norm2();
    out.n1 = Translation(tau1, u1);
    // the second translation sits left of the scalar: divide on the right
    Scalar tau2 = m.at(0, 0) * lead_inv;
    ModuleVector u2 = ModuleVector::zero(f, n - 1);
    for (int k = 0; k < n - 1; ++k) u2.e[static_cast<std::size_t>(k)] = conj(m.at(k + 2, 0) * lead_inv);
    tau2.c[0] = 0.5 * u2.norm2();
    out.n2 = Translation(tau2, u2);
    const Scalar phase_inv = inv(phase);
    Rotation rot(f, n);
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j < n - 1; ++j)
        rot.at(i, j) =
            conj(u2.e[static_cast<std::size_t>(i)]) * ((s)*u1.e[static_cast<std::size_t>(j)]) - phase_inv * m.at(i + 2, j + 2);
    out.rot = rot;
  }

  if (std::fabs(abs(phase) - 1.0) > struct_tol)
    throw NotInGres("scalar part has modulus " + std::to_string(abs(phase)));
  if (!is_central_unit(phase, struct_tol))
    throw NotInGres("scalar part of the factored form is not central");
  const double ur = out.rot.unitarity_residual();
  if (ur > struct_tol)
    throw NotInGres("rotation block not unitary, residual " + std::to_string(ur));

  // Reassemble and compare; the tolerance follows the magnitudes that the
  // assembled products run through.
  const MatrixLift relift = phase * lift(out);
  const double kappa =
      std::max({1.0, std::sqrt(out.t), 1.0 / std::sqrt(out.t)}) *
      std::max(1.0, abs(out.n1.tau0) + std::sqrt(out.n1.u0.norm2())) *
      std::max(1.0, abs(out.n2.tau0) + std::sqrt(out.n2.u0.norm2()));
  double defect = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) defect = std::max(defect, abs(relift.at(i, j) - m.at(i, j)));
  if (defect > struct_tol * kappa)
    throw NotInGres("matrix does not reassemble from its factored form, defect " +
                    std::to_string(defect));
  return BruhatDecomposition{out, phase};
}

CocycleValue cocycle_j(const MatrixLift& m, const HPoint& z) {
  const EVec u = apply_row(section_i_h(z), m);
  double scale = 0.0;
  for (const auto& s : u) scale = std::max(scale, abs(s));
  if (abs(u[0]) <= 1e-12 * scale)
    throw UndefinedCocycle("image point is infinity; leading coordinate vanishes");
  return CocycleValue{u[0], abs(u[0])};
}

MatrixLift rescale_by_central_unit(const MatrixLift& m, const Scalar& a) {
  if (!is_central_unit(a)) throw DomainError("rescale factor is not a central unit");
  return a * m;
}

Rotation rotation_from_automorphism(const AutomorphismPair& pair, double tol) {
  AutomorphismReport rep = check_automorphism(pair);
  if (!rep.all()) {
    const AxiomWitness& w =
        !rep.orthogonal.pass ? rep.orthogonal : (!rep.fixes_unit.pass ? rep.fixes_unit : rep.intertwines);
    throw AxiomFailure("not an automorphism pair: " + w.detail);
  }
  // The scalar factor must be the identity for a form-preserving lift in this
  // representation.
  const int d = field_dim(pair.field);
  double defect = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      defect = std::max(defect, std::fabs(pair.phi[static_cast<std::size_t>(i) * d + j] - (i == j ? 1.0 : 0.0)));
  if (defect > tol)
    throw NotInGres("scalar factor differs from the identity by " + std::to_string(defect) +
                    "; no lift in this representation");
  Rotation rot(pair.field, pair.n);
  for (int i = 0; i < pair.n - 1; ++i) {
    ModuleVector ei = ModuleVector::zero(pair.field, pair.n - 1);
    ei.e[static_cast<std::size_t>(i)] = Scalar::one(pair.field);
    const ModuleVector row = apply_psi(pair, ei);
    for (int j = 0; j < pair.n - 1; ++j) rot.at(i, j) = row.e[static_cast<std::size_t>(j)];
  }
  if (rot.unitarity_residual() > tol) throw NotInGres("induced rotation block is not unitary");
  return rot;
}

}  // namespace rank1
