#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "rank1/errors.hpp"

namespace rank1 {

// The three associative normed division algebras.
enum class Field : std::uint8_t { R = 0, C = 1, H = 2 };

inline int field_dim(Field f) {
  switch (f) {
    case Field::R: return 1;
    case Field::C: return 2;
    default: return 4;
  }
}

inline const char* field_tag(Field f) {
  switch (f) {
    case Field::R: return "R";
    case Field::C: return "C";
    default: return "H";
  }
}

Field field_from_tag(const std::string& tag);

// One element of R, C or H, stored as coefficients over the basis {1,i,j,k}.
// Unused coefficients are pinned to zero (b=c=d for R, c=d for C), so a single
// code path serves all three algebras.
struct Scalar {
  Field field{Field::R};
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  Scalar() = default;
  Scalar(Field f, double a, double b = 0.0, double cc = 0.0, double d = 0.0)
      : field(f), c{a, b, cc, d} {
    pin();
  }

  static Scalar zero(Field f) { return Scalar(f, 0.0); }
  static Scalar one(Field f) { return Scalar(f, 1.0); }
  // k-th basis element (0 -> 1, 1 -> i, 2 -> j, 3 -> k); k must fit the field.
  static Scalar unit(Field f, int k);

  // Zeroes the coefficients the field does not carry.
  void pin() {
    for (int k = field_dim(field); k < 4; ++k) c[k] = 0.0;
  }

  double norm2() const { return c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]; }
  bool is_zero(double tol = 0.0) const { return std::sqrt(norm2()) <= tol; }
};

inline void require_same_field(const Scalar& x, const Scalar& y, const char* op) {
  if (x.field != y.field)
    throw FieldMismatch(std::string(op) + ": operands over " + field_tag(x.field) + " and " +
                        field_tag(y.field));
}

inline Scalar operator+(const Scalar& x, const Scalar& y) {
  require_same_field(x, y, "add");
  return Scalar(x.field, x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2], x.c[3] + y.c[3]);
}

inline Scalar operator-(const Scalar& x, const Scalar& y) {
  require_same_field(x, y, "sub");
  return Scalar(x.field, x.c[0] - y.c[0], x.c[1] - y.c[1], x.c[2] - y.c[2], x.c[3] - y.c[3]);
}

inline Scalar operator-(const Scalar& x) {
  return Scalar(x.field, -x.c[0], -x.c[1], -x.c[2], -x.c[3]);
}

inline Scalar operator*(double a, const Scalar& x) {
  return Scalar(x.field, a * x.c[0], a * x.c[1], a * x.c[2], a * x.c[3]);
}

// Algebra product; noncommutative for H, left factor first.
Scalar operator*(const Scalar& x, const Scalar& y);

inline Scalar conj(const Scalar& x) {
  return Scalar(x.field, x.c[0], -x.c[1], -x.c[2], -x.c[3]);
}

inline double re(const Scalar& x) { return x.c[0]; }

// Imaginary part as a Scalar with zero real coefficient (not a real number).
inline Scalar im(const Scalar& x) { return Scalar(x.field, 0.0, x.c[1], x.c[2], x.c[3]); }

inline double abs(const Scalar& x) { return std::sqrt(x.norm2()); }

// x^{-1} = conj(x)/|x|^2.
Scalar inv(const Scalar& x);

// Membership in Z^1(C): unit norm and central. The center is all of C for
// C = Complex, and the reals for R and H.
bool is_central_unit(const Scalar& x, double tol = 1e-10);

// Representative of a central unit class; validates the invariants.
struct CentralUnitClass {
  Scalar representative;
  explicit CentralUnitClass(const Scalar& s, double tol = 1e-10);
};

}  // namespace rank1
