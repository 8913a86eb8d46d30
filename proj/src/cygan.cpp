#include "rank1/cygan.hpp"

#include <algorithm>
#include <cmath>

namespace rank1 {

namespace {

void require_imaginary(const Scalar& Z, const char* what) {
  if (std::fabs(re(Z)) > 1e-12 * (1.0 + abs(Z)))
    throw DomainError(std::string(what) + ": vertical component has a real part");
}

}  // namespace

double heisenberg_norm(const Scalar& Z, const ModuleVector& X) {
  require_imaginary(Z, "heisenberg_norm");
  Scalar s = im(Z);
  s.c[0] = 0.25 * X.norm2();
  return std::sqrt(abs(s));
}

double group_norm_p(double k, const Scalar& Z, const ModuleVector& X) {
  require_imaginary(Z, "group_norm_p");
  Scalar s = im(Z);
  s.c[0] = 0.25 * X.norm2() + std::fabs(k);
  return std::sqrt(abs(s));
}

RN rn_mul(const RN& a, const RN& b) {
  return RN{a.k + b.k, a.Z + b.Z + 0.5 * lie_bracket(a.X, b.X), a.X + b.X};
}

RN rn_inv(const RN& a) { return RN{-a.k, -a.Z, -a.X}; }

double cygan_d(const DPoint& z1, const DPoint& z2) {
  if (z1.is_infinity() || z2.is_infinity()) throw InfinityArgument("cygan_d(infinity)");
  Scalar s = im(z1.zeta) - im(z2.zeta) - 0.5 * beta2(z1.v, z2.v);
  s.c[0] = 0.25 * z1.v.norm2() + 0.25 * z2.v.norm2() +
           std::fabs(height_d(z1) - height_d(z2)) - 0.5 * re(beta2(z1.v, z2.v));
  return std::sqrt(abs(s));
}

double cygan_h(const HPoint& z1, const HPoint& z2) {
  if (z1.is_infinity() || z2.is_infinity()) throw InfinityArgument("cygan_h(infinity)");
  Scalar s = im(z1.zeta) - im(z2.zeta) - beta2(z1.v, z2.v);
  s.c[0] = 0.5 * z1.v.norm2() + 0.5 * z2.v.norm2() +
           std::fabs(height_h(z1) - height_h(z2)) - re(beta2(z1.v, z2.v));
  return std::sqrt(abs(s));
}

double cygan_via_psi2(const HPoint& z1, const HPoint& z2) {
  if (z1.is_infinity() || z2.is_infinity()) throw InfinityArgument("cygan_via_psi2(infinity)");
  // Form value on the standard affine representatives (1, zeta, v).
  Scalar s = beta2(z1.v, z2.v) - z1.zeta - conj(z2.zeta);
  s.c[0] += 2.0 * std::min(height_h(z1), height_h(z2));
  return std::sqrt(abs(s));
}

}  // namespace rank1
