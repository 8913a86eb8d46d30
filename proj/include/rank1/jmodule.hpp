#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rank1/scalar.hpp"

namespace rank1 {

// Shape of the standard module: V = C^(n-1) sitting inside E = C^(n+1),
// with the unit acting as the identity.
struct ModuleStructure {
  Field field{Field::R};
  int n = 2;

  ModuleStructure() = default;
  ModuleStructure(Field f, int n_) : field(f), n(n_) {
    if (n < 2) throw DimensionMismatch("module structure needs n >= 2");
  }

  Scalar e() const { return Scalar::one(field); }
  int dim_v() const { return n - 1; }
  int dim_e() const { return n + 1; }
};

// Row vector over C; an element of V = C^(n-1) in the standard orthonormal
// C-basis.  All entries share one field.
struct ModuleVector {
  Field field{Field::R};
  std::vector<Scalar> e;

  ModuleVector() = default;
  ModuleVector(Field f, std::vector<Scalar> entries);

  static ModuleVector zero(Field f, int len);

  int size() const { return static_cast<int>(e.size()); }
  double norm2() const;
  bool is_zero(double tol = 0.0) const;
};

void require_compatible(const ModuleVector& v, const ModuleVector& u, const char* op);

ModuleVector operator+(const ModuleVector& v, const ModuleVector& u);
ModuleVector operator-(const ModuleVector& v, const ModuleVector& u);
ModuleVector operator-(const ModuleVector& v);
ModuleVector operator*(double a, const ModuleVector& v);
// Componentwise left scalar action J(zeta, v).
ModuleVector operator*(const Scalar& zeta, const ModuleVector& v);

// Euclidean inner product of the underlying real vector space.
double euclid_inner(const ModuleVector& v, const ModuleVector& u);

// beta1(x,y) = x * conj(y); sesquilinear hermitian on C.
Scalar beta1(const Scalar& x, const Scalar& y);

// beta2(v,u) = sum_j v_j conj(u_j) = v u^*.
Scalar beta2(const ModuleVector& v, const ModuleVector& u);

// Element of W = C + V.
struct WPair {
  Scalar zeta;
  ModuleVector v;

  WPair() = default;
  WPair(Scalar z, ModuleVector vv) : zeta(std::move(z)), v(std::move(vv)) {}
  Field field() const { return zeta.field; }
  double norm2() const { return zeta.norm2() + v.norm2(); }
};

WPair operator+(const WPair& a, const WPair& b);
WPair operator-(const WPair& a, const WPair& b);
WPair operator*(double a, const WPair& w);
WPair operator*(const Scalar& zeta, const WPair& w);
double euclid_inner(const WPair& a, const WPair& b);

// beta3 = beta1 on the C part plus beta2 on the V part.
Scalar beta3(const WPair& a, const WPair& b);

// [x,y] = Ima beta2(y,x); purely imaginary, antisymmetric.
Scalar lie_bracket(const ModuleVector& x, const ModuleVector& y);

// ---------------------------------------------------------------------------
// Heisenberg-type structure data and the correspondence with module data.
// ---------------------------------------------------------------------------

// A candidate two-step structure: orthogonal sum of a center of dimension
// dim_z and a complement of dimension dim_v, with one dim_v x dim_v real
// matrix J_k per orthonormal basis vector of the center.
struct HTypeData {
  int dim_z = 0;
  int dim_v = 0;
  std::vector<std::vector<double>> J;  // row-major, acting on column coords

  void validate_shape() const;
};

struct AxiomWitness {
  bool pass = true;
  std::string detail;  // empty when pass
};

struct HTypeReport {
  AxiomWitness h1;  // skew-symmetry of each J_k (bracket antisymmetry)
  AxiomWitness h2;  // |J_Z X| = |Z||X|
  AxiomWitness h3;  // J_{Z1} J_{Z2} X in J_z X for orthogonal Z1, Z2
  bool all() const { return h1.pass && h2.pass && h3.pass; }
};

// Checks the structure axioms on a deterministic grid plus seeded random
// samples.  The abelian cases (dim_z = 0 or dim_v = 0) pass the closure
// axiom vacuously.
HTypeReport check_h_type(const HTypeData& data, std::uint64_t seed = 7,
                         double tol_h2 = 1e-10, double tol_h3 = 1e-8);

// Module-side packaging: dim_c = 1 + dim_z real matrices of size dim_v,
// the first of which is the identity (the action of the unit e).
struct GenericModule {
  int dim_c = 1;
  int dim_v = 0;
  std::vector<std::vector<double>> Jt;  // Jt[0] = identity

  void validate_shape() const;
};

struct ModuleReport {
  AxiomWitness m1;  // Jt[0] = id
  AxiomWitness m2;  // |J(zeta, v)| = |zeta||v|
  AxiomWitness m3;  // C(Cv) = Cv
  bool all() const { return m1.pass && m2.pass && m3.pass; }
};

ModuleReport check_module(const GenericModule& m, std::uint64_t seed = 7,
                          double tol_m2 = 1e-10, double tol_m3 = 1e-8);

// The two directions of the correspondence.  Both throw AxiomFailure when the
// input fails its axioms.
GenericModule module_from_h_type(const HTypeData& data);
HTypeData h_type_from_module(const GenericModule& m);

// Structure data of the classical family over the given field:
// center = imaginary part of C, complement = C^(n-1), J = left scalar action.
HTypeData classical_h_type(Field f, int n);
inline HTypeData classical_h_type(const ModuleStructure& m) {
  return classical_h_type(m.field, m.n);
}

// ---------------------------------------------------------------------------
// Automorphism pairs (phi, psi) of the module structure, given as real
// matrices: phi on the coefficient space of C, psi on the stacked real
// coordinates of V = C^(n-1).
// ---------------------------------------------------------------------------

struct AutomorphismPair {
  Field field{Field::R};
  int n = 2;
  std::vector<double> phi;  // d x d, d = field_dim
  std::vector<double> psi;  // (n-1)d x (n-1)d
};

struct AutomorphismReport {
  AxiomWitness orthogonal;    // phi, psi orthogonal
  AxiomWitness fixes_unit;    // phi(1) = 1
  AxiomWitness intertwines;   // J(phi(zeta), psi(v)) = psi(J(zeta, v))
  bool all() const { return orthogonal.pass && fixes_unit.pass && intertwines.pass; }
};

AutomorphismReport check_automorphism(const AutomorphismPair& a, std::uint64_t seed = 7,
                                      double tol = 1e-10);

ModuleVector apply_psi(const AutomorphismPair& a, const ModuleVector& v);
Scalar apply_phi(const AutomorphismPair& a, const Scalar& zeta);

}  // namespace rank1
