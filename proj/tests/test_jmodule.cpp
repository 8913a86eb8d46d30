#include <doctest.h>

#include "test_helpers.hpp"

using namespace rank1;
using namespace rank1::testing;

namespace {
const Field kFields[] = {Field::R, Field::C, Field::H};

ModuleVector single(Field f, const Scalar& s) { return ModuleVector(f, {s}); }
}  // namespace

TEST_CASE("beta1") {
  CHECK(abs(beta1(Scalar::one(Field::R), Scalar::one(Field::R)) - Scalar::one(Field::R)) < 1e-15);
  const Scalar i = Scalar::unit(Field::H, 1), j = Scalar::unit(Field::H, 2),
               k = Scalar::unit(Field::H, 3);
  CHECK(abs(beta1(i, j) + k) < 1e-15);  // i * conj(j) = -k

  // real part recovers the Euclidean inner product
  const Scalar a(Field::C, 1.0, 1.0), b(Field::C, 1.0, -1.0);
  CHECK(re(beta1(a, b)) == doctest::Approx(0.0));  // <(1,1),(1,-1)> = 0

  std::mt19937_64 rng(11);
  for (Field f : kFields)
    for (int trial = 0; trial < 200; ++trial) {
      const Scalar x = rand_scalar(rng, f), y = rand_scalar(rng, f);
      CHECK(abs(beta1(x, y) - conj(beta1(y, x))) < 1e-13);
      double dot = 0;
      for (int c = 0; c < 4; ++c) dot += x.c[static_cast<std::size_t>(c)] * y.c[static_cast<std::size_t>(c)];
      CHECK(re(beta1(x, y)) == doctest::Approx(dot).epsilon(1e-12));
    }
}

TEST_CASE("beta2") {
  std::mt19937_64 rng(12);
  for (Field f : kFields) {
    const ModuleVector v = rand_vector(rng, f, 2);
    CHECK(abs(beta2(v, v) - Scalar(f, v.norm2())) < 1e-12);
  }
  // coordinate formula on length-1 vectors
  const Scalar a(Field::C, 1.0, 1.0);
  CHECK(abs(beta2(single(Field::C, a), single(Field::C, Scalar::one(Field::C))) - a) < 1e-15);
  const Scalar i = Scalar::unit(Field::H, 1), j = Scalar::unit(Field::H, 2);
  CHECK(abs(beta2(single(Field::H, i), single(Field::H, j)) - i * conj(j)) < 1e-15);

  // hermitian, Cauchy-Schwarz with equality on scalar multiples, C-linear
  for (Field f : kFields)
    for (int trial = 0; trial < 300; ++trial) {
      const ModuleVector v = rand_vector(rng, f, 2), u = rand_vector(rng, f, 2);
      const Scalar zeta = rand_scalar(rng, f);
      CHECK(abs(beta2(v, u) - conj(beta2(u, v))) < 1e-13);
      CHECK(abs(beta2(u, v)) <= std::sqrt(u.norm2()) * std::sqrt(v.norm2()) + 1e-12);
      CHECK(abs(beta2(zeta * v, u) - zeta * beta2(v, u)) <= 1e-12 * (1.0 + abs(zeta)));
      const ModuleVector w = zeta * u;
      CHECK(std::fabs(abs(beta2(u, w)) - std::sqrt(u.norm2()) * std::sqrt(w.norm2())) <=
            1e-12 * (1.0 + u.norm2() * abs(zeta)));
    }
  CHECK_THROWS_AS((void)beta2(rand_vector(rng, Field::R, 2), rand_vector(rng, Field::R, 3)),
                  DimensionMismatch);
}

TEST_CASE("beta3 and bracket") {
  const Field f = Field::C;
  const Scalar one = Scalar::one(f), i = Scalar::unit(f, 1);
  const WPair w1(one, ModuleVector::zero(f, 1));
  CHECK(abs(beta3(w1, w1) - one) < 1e-15);

  std::mt19937_64 rng(13);
  const ModuleVector v = rand_vector(rng, f, 2), u = rand_vector(rng, f, 2);
  const WPair w2(Scalar::zero(f), v), w3(Scalar::zero(f), u);
  CHECK(abs(beta3(w2, w3) - beta2(v, u)) < 1e-15);

  const WPair w4(i, single(f, one)), w5(one, single(f, one));
  CHECK(abs(beta3(w4, w5) - Scalar(f, 1.0, 1.0)) < 1e-15);

  // vanishing characterizes orthogonality to the scalar line
  std::mt19937_64 rng2(131);
  for (Field ff : kFields)
    for (int trial = 0; trial < 100; ++trial) {
      const WPair x(rand_scalar(rng2, ff), rand_vector(rng2, ff, 2));
      WPair y(rand_scalar(rng2, ff), rand_vector(rng2, ff, 2));
      for (int k = 0; k < field_dim(ff); ++k) {
        const WPair bx = Scalar::unit(ff, k) * x;
        y = y - (euclid_inner(y, bx) / x.norm2()) * bx;
      }
      CHECK(abs(beta3(x, y)) < 1e-12);  // projected out of C x
      const WPair z = rand_scalar(rng2, ff) * x;
      if (z.norm2() > 1e-6) CHECK(abs(beta3(x, z)) > 1e-8);
    }

  // bracket: antisymmetric, purely imaginary, zero over R
  CHECK(abs(lie_bracket(v, v)) < 1e-13);
  CHECK(abs(lie_bracket(single(f, one), single(f, i)) - i) < 1e-15);
  const ModuleVector rv = rand_vector(rng, Field::R, 3), ru = rand_vector(rng, Field::R, 3);
  CHECK(abs(lie_bracket(rv, ru)) < 1e-15);
  for (Field ff : kFields)
    for (int trial = 0; trial < 100; ++trial) {
      const ModuleVector a = rand_vector(rng, ff, 2), b = rand_vector(rng, ff, 2);
      CHECK(abs(lie_bracket(a, b) + lie_bracket(b, a)) < 1e-13);
      CHECK(re(lie_bracket(a, b)) == 0.0);
    }
}

TEST_CASE("scalar action identities") {
  std::mt19937_64 rng(14);
  for (Field f : kFields)
    for (int trial = 0; trial < 200; ++trial) {
      const Scalar zeta = rand_scalar(rng, f), eta = rand_scalar(rng, f);
      const ModuleVector u = rand_vector(rng, f, 2), v = rand_vector(rng, f, 2);
      // polarization
      CHECK(std::fabs(euclid_inner(zeta * u, eta * v) + euclid_inner(eta * u, zeta * v) -
                      2.0 * re(beta1(zeta, eta)) * euclid_inner(u, v)) < 1e-11);
      // adjoint of the action is the action of the conjugate
      CHECK(std::fabs(euclid_inner(zeta * u, v) - euclid_inner(u, conj(zeta) * v)) < 1e-11);
      // conj(zeta) zeta acts as |zeta|^2
      CHECK(std::sqrt((conj(zeta) * (zeta * v) - zeta.norm2() * v).norm2()) < 1e-11);
    }
}

TEST_CASE("structure axioms for the classical families") {
  for (Field f : kFields)
    for (int n : {2, 3}) {
      const HTypeData data = classical_h_type(f, n);
      const HTypeReport rep = check_h_type(data);
      CHECK(rep.h1.pass);
      CHECK(rep.h2.pass);
      CHECK(rep.h3.pass);
    }
}

TEST_CASE("perturbed structure data fails with a witness") {
  HTypeData data = classical_h_type(Field::C, 3);
  data.J[0][1] += 0.1;
  const HTypeReport rep = check_h_type(data);
  CHECK(!(rep.h1.pass && rep.h2.pass));
  CHECK(!(rep.h1.detail + rep.h2.detail).empty());
  CHECK_THROWS_AS((void)module_from_h_type(data), AxiomFailure);
}

TEST_CASE("degenerate data passes vacuously") {
  HTypeData abelian;
  abelian.dim_z = 0;
  abelian.dim_v = 3;
  CHECK(check_h_type(abelian).all());
  HTypeData vtrivial;
  vtrivial.dim_z = 2;
  vtrivial.dim_v = 0;
  vtrivial.J.assign(2, {});
  CHECK(check_h_type(vtrivial).all());
  // trivial complement packs into a module with dim_v = 0
  const GenericModule m = module_from_h_type(vtrivial);
  CHECK(m.dim_c == 3);
  CHECK(m.dim_v == 0);
}

TEST_CASE("structure/module correspondence round trips") {
  for (Field f : kFields)
    for (int n : {2, 3}) {
      const HTypeData data = classical_h_type(f, n);
      const GenericModule m = module_from_h_type(data);
      CHECK(m.dim_c == field_dim(f));
      const HTypeData back = h_type_from_module(m);
      REQUIRE(back.dim_z == data.dim_z);
      REQUIRE(back.dim_v == data.dim_v);
      for (std::size_t k = 0; k < data.J.size(); ++k)
        for (std::size_t t = 0; t < data.J[k].size(); ++t)
          CHECK(back.J[k][t] == doctest::Approx(data.J[k][t]).epsilon(1e-12));
    }
}

TEST_CASE("automorphism pairs") {
  // over H with n = 2: scalar factor fixing 1 and k, negating i and j;
  // vector factor negating 1 and k.  The pair intertwines the action but has
  // a nontrivial scalar factor.
  AutomorphismPair pair;
  pair.field = Field::H;
  pair.n = 2;
  pair.phi = {1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1};
  pair.psi = {-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
  const AutomorphismReport rep = check_automorphism(pair);
  CHECK(rep.orthogonal.pass);
  CHECK(rep.fixes_unit.pass);
  CHECK(rep.intertwines.pass);
  CHECK_THROWS_AS((void)rotation_from_automorphism(pair), NotInGres);

  // identity scalar factor converts to a rotation block
  AutomorphismPair ok;
  ok.field = Field::C;
  ok.n = 2;
  ok.phi = {1, 0, 0, 1};
  ok.psi = {0, -1, 1, 0};  // multiplication by i on the single coordinate
  const Rotation rot = rotation_from_automorphism(ok);
  CHECK(abs(rot.at(0, 0) - Scalar::unit(Field::C, 1)) < 1e-12);

  // complex conjugation on both factors intertwines but fails the lift
  AutomorphismPair conjpair;
  conjpair.field = Field::C;
  conjpair.n = 2;
  conjpair.phi = {1, 0, 0, -1};
  conjpair.psi = {1, 0, 0, -1};
  CHECK(check_automorphism(conjpair).all());
  CHECK_THROWS_AS((void)rotation_from_automorphism(conjpair), NotInGres);
}
