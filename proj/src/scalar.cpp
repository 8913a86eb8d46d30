#include "rank1/scalar.hpp"

namespace rank1 {

Field field_from_tag(const std::string& tag) {
  if (tag == "R") return Field::R;
  if (tag == "C") return Field::C;
  if (tag == "H") return Field::H;
  throw SpecError("unknown field tag '" + tag + "' (expected R, C or H)");
}

Scalar Scalar::unit(Field f, int k) {
  if (k < 0 || k >= field_dim(f))
    throw DomainError("basis index " + std::to_string(k) + " out of range for " + field_tag(f));
  Scalar s(f, 0.0);
  s.c[static_cast<std::size_t>(k)] = 1.0;
  return s;
}

Scalar operator*(const Scalar& x, const Scalar& y) {
  require_same_field(x, y, "mul");
  const double a1 = x.c[0], b1 = x.c[1], c1 = x.c[2], d1 = x.c[3];
  const double a2 = y.c[0], b2 = y.c[1], c2 = y.c[2], d2 = y.c[3];
  return Scalar(x.field,
                a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2);
}

Scalar inv(const Scalar& x) {
  const double n2 = x.norm2();
  if (n2 == 0.0) throw DivisionByZero("inv(0)");
  return (1.0 / n2) * conj(x);
}

bool is_central_unit(const Scalar& x, double tol) {
  if (std::fabs(abs(x) - 1.0) > tol) return false;
  if (x.field == Field::C) return true;
  return abs(im(x)) <= tol;
}

CentralUnitClass::CentralUnitClass(const Scalar& s, double tol) : representative(s) {
  if (!is_central_unit(s, tol))
    throw DomainError("representative is not a central unit of " +
                      std::string(field_tag(s.field)));
}

}  // namespace rank1
