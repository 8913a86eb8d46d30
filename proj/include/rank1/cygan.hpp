#pragma once

#include "rank1/models.hpp"

namespace rank1 {

// Group norm on the boundary group at height zero:
// q(Z,X) = | |X|^2/4 + Z |^{1/2}.  Z must be purely imaginary.
double heisenberg_norm(const Scalar& Z, const ModuleVector& X);

// Extension across height differences, a group norm on R x N:
// p(k,Z,X) = | |X|^2/4 + |k| + Z |^{1/2}.
double group_norm_p(double k, const Scalar& Z, const ModuleVector& X);

// The product and inverse of R x N (vertical component at parameter 1).
struct RN {
  double k = 0.0;
  Scalar Z;
  ModuleVector X;
};
RN rn_mul(const RN& a, const RN& b);
RN rn_inv(const RN& a);

// Metric induced by p through horospherical coordinates; defined on the
// compactified domain minus infinity (boundary points allowed).
double cygan_d(const DPoint& z1, const DPoint& z2);
double cygan_h(const HPoint& z1, const HPoint& z2);

// Same value through the hermitian form on lifted representatives plus twice
// the smaller height.
double cygan_via_psi2(const HPoint& z1, const HPoint& z2);

}  // namespace rank1
