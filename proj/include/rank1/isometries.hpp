#pragma once

#include <optional>
#include <vector>

#include "rank1/models.hpp"

namespace rank1 {

// Row vector in E = C^(n+1); representatives of points of the compactified
// half-space live here.
using EVec = std::vector<Scalar>;

// Indefinite hermitian forms on E (row convention).
// psi1(z,w) = -b1(z0,w0) + b1(z1,w1) + sum b1(zk,wk)
// psi2(z,w) = -b1(z0,w1) - b1(z1,w0) + sum b1(zk,wk)
Scalar psi1_form(const EVec& z1, const EVec& z2);
Scalar psi2_form(const EVec& z1, const EVec& z2);

// Basis change taking psi2 to psi1: (z0,z1,v) -> ((z0-z1)/sqrt2, (z0+z1)/sqrt2, v).
EVec transform_T(const EVec& z);
EVec transform_T_inv(const EVec& z);

// Affine section of the projection onto the compactified half-space:
// infinity -> (0,1,0,...), (zeta,v) -> (1,zeta,v).
EVec section_i_h(const HPoint& z);

// Projection back onto the compactified half-space; a representative with a
// vanishing leading coordinate is the point at infinity.  Inverse of the
// section on the closed domain.
HPoint project_pi_h(const EVec& z, double tol = kBoundaryHeightTol);

// ---------------------------------------------------------------------------
// Matrix lifts
// ---------------------------------------------------------------------------

// (n+1)x(n+1) matrix over the field, acting on row vectors from the right;
// composition is M(g then h) = M(g) * M(h).  Members of the isometry group
// preserve the Gram matrix Q of psi2 (Q01 = Q10 = -1, Qkk = 1 for k >= 2).
struct MatrixLift {
  Field field{Field::R};
  int n = 2;
  std::vector<Scalar> m;  // row-major, (n+1)^2 entries

  MatrixLift() = default;
  MatrixLift(Field f, int n_);

  static MatrixLift identity(Field f, int n);

  int dim() const { return n + 1; }
  Scalar& at(int i, int j) { return m[static_cast<std::size_t>(i) * dim() + j]; }
  const Scalar& at(int i, int j) const { return m[static_cast<std::size_t>(i) * dim() + j]; }

  double max_entry_abs() const;
};

MatrixLift operator*(const MatrixLift& a, const MatrixLift& b);
MatrixLift operator*(const Scalar& a, const MatrixLift& m);
EVec apply_row(const EVec& z, const MatrixLift& m);

// Gram matrix of psi2.
MatrixLift psi2_gram(Field f, int n);

// Scale-normalized max-entry residual of M Q M^* - Q.
double q_residual(const MatrixLift& m);

// Inverse M^{-1} = Q M^* Q; valid for form-preserving matrices.
MatrixLift inverse_unitary(const MatrixLift& m);

// ---------------------------------------------------------------------------
// Bruhat data
// ---------------------------------------------------------------------------

// Boundary translation, parametrized by its image of the origin: a boundary
// point (tau0, u0) with re(tau0) = |u0|^2/2.
struct Translation {
  Scalar tau0;
  ModuleVector u0;

  Translation() = default;
  Translation(const Scalar& tau, const ModuleVector& u, double tol = 1e-10);
  static Translation identity(Field f, int n);

  bool is_identity(double tol = 0.0) const;
  Translation inverse() const;           // (conj(tau0), -u0)
};

// a then b as maps.
Translation compose(const Translation& a, const Translation& b);

// Rotation block: (n-1)x(n-1) matrix A over the field with A A^* = I, acting
// on row vectors from the right.  Only scalar-part-identity rotations are
// representable here.
struct Rotation {
  Field field{Field::R};
  int n = 2;
  std::vector<Scalar> a;  // row-major, (n-1)^2 entries

  Rotation() = default;
  Rotation(Field f, int n_);
  static Rotation identity(Field f, int n);

  int dim() const { return n - 1; }
  Scalar& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim() + j]; }
  const Scalar& at(int i, int j) const { return a[static_cast<std::size_t>(i) * dim() + j]; }

  double unitarity_residual() const;     // max entry of A A^* - I
  ModuleVector apply(const ModuleVector& v) const;
  Rotation inverse() const;              // A^*
};

// g = n1 sigma rot a_t n2 when inversion is set, else rot a_t n2 (n1 unused).
// The alternative grouping with the translations swapped describes the same
// element with commuted parameters; the dilation part t, and hence every
// sphere radius, is the same either way.
struct BruhatIsometry {
  Translation n1;
  bool inversion = false;
  Rotation rot;
  double t = 1.0;
  Translation n2;

  static BruhatIsometry make_translation(const Translation& tr);
  static BruhatIsometry make_dilation(Field f, int n, double t);
  static BruhatIsometry make_rotation(const Rotation& rot);
  static BruhatIsometry make_inversion(Field f, int n);
};

// Action on the compactified half-space; total, tags preserved.
HPoint act(const BruhatIsometry& g, const HPoint& z);
HPoint act(const MatrixLift& m, const HPoint& z);

BruhatIsometry bruhat_inverse(const BruhatIsometry& g);

// Matrix lift of the Bruhat form; passes the Gram-invariance check.
MatrixLift lift(const BruhatIsometry& g);
MatrixLift lift(const Translation& tr, Field f, int n);
MatrixLift lift_dilation(Field f, int n, double t);
MatrixLift lift_sigma(Field f, int n);
MatrixLift lift(const Rotation& rot);

struct BruhatDecomposition {
  BruhatIsometry iso;
  Scalar phase;  // central unit with matrix = phase * lift(iso)
};

// Recovers Bruhat data from a form-preserving matrix.  Throws NotInGres when
// the residual block is not a unitary rotation with central scalar part.
BruhatDecomposition bruhat_decompose(const MatrixLift& m, double q_tol = 1e-8,
                                     double struct_tol = 1e-8, double stab_tol = 1e-12);

struct CocycleValue {
  Scalar representative;  // defined up to a central unit factor
  double modulus;         // representative-free
};

// Scale factor of the lifted action on affine representatives:
// section(z) * M = j(g,z) * section(g z).  Undefined when g z = infinity.
CocycleValue cocycle_j(const MatrixLift& m, const HPoint& z);

// Left multiplication by a central unit; relabels the representative without
// changing the induced isometry.
MatrixLift rescale_by_central_unit(const MatrixLift& m, const Scalar& a);

// Builds the rotation block of an automorphism pair whose scalar factor is
// the identity; throws NotInGres otherwise.
Rotation rotation_from_automorphism(const AutomorphismPair& pair, double tol = 1e-8);

}  // namespace rank1
