#include <doctest.h>

#include "rank1/spheres.hpp"
#include "test_helpers.hpp"

using namespace rank1;
using namespace rank1::testing;

namespace {
const Field kFields[] = {Field::R, Field::C, Field::H};
}

TEST_CASE("sphere of the inversion and friends") {
  const Field f = Field::R;
  const MatrixLift sg = lift_sigma(f, 2);
  const IsometricSphere s = isometric_sphere(sg, "S");
  CHECK(s.radius == doctest::Approx(1.0));
  CHECK(abs(s.center.zeta) < 1e-14);
  CHECK(s.center.kind == PointKind::Boundary);

  // dilation then inversion: radius 4^(-1/4)
  const MatrixLift m = lift_dilation(f, 2, 4.0) * lift_sigma(f, 2);
  const IsometricSphere s2 = isometric_sphere(m);
  CHECK(s2.radius == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-12));
  CHECK(abs(s2.center.zeta) < 1e-12);

  // inversion then translation: center stays at zero while the inverse
  // element's sphere sits at the translation parameter
  const Field fc = Field::C;
  Translation tr(Scalar(fc, 0.32, 0.5), ModuleVector(fc, {Scalar(fc, 0.8, 0.0)}));
  const MatrixLift tc = lift_sigma(fc, 2) * lift(tr, fc, 2);  // map: first sigma, then translate
  const IsometricSphere s3 = isometric_sphere(tc);
  CHECK(abs(s3.center.zeta) < 1e-12);
  CHECK(std::sqrt(s3.center.v.norm2()) < 1e-12);
  const IsometricSphere s4 = isometric_sphere(inverse_unitary(tc));
  CHECK(abs(s4.center.zeta - tr.tau0) < 1e-12);
  CHECK(std::sqrt((s4.center.v - tr.u0).norm2()) < 1e-12);

  // stabilizer elements have no sphere
  CHECK_THROWS_AS((void)isometric_sphere(lift(tr, fc, 2)), StabilizerElement);
  CHECK_THROWS_AS((void)isometric_sphere(lift_dilation(f, 2, 2.0)), StabilizerElement);
}

TEST_CASE("radius equals the inverse square root of the (2,1) entry") {
  // row convention: the scale of the lifted action at infinity sits in the
  // second row's leading entry; holds over every scalar algebra and for any
  // representative rescaling
  std::mt19937_64 rng(59);
  for (Field f : kFields)
    for (int trial = 0; trial < 100; ++trial) {
      MatrixLift m = lift(rand_bruhat(rng, f, 2, true));
      if (trial % 2) m = rescale_by_central_unit(m, -Scalar::one(f));
      const double want = 1.0 / std::sqrt(abs(m.at(1, 0)));
      CHECK(isometric_sphere(m).radius == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("classification against the unit sphere") {
  const Field f = Field::R;
  const IsometricSphere s = isometric_sphere(lift_sigma(f, 2), "S");
  const ModuleVector zero = ModuleVector::zero(f, 1);
  CHECK(classify(s, HPoint::interior(Scalar(f, 0.25), zero)) == SpherePosition::Interior);
  CHECK(classify(s, HPoint::interior(Scalar(f, 4.0), zero)) == SpherePosition::Exterior);
  CHECK(classify(s, HPoint::interior(Scalar(f, 1.0), zero)) == SpherePosition::On);

  // both criteria agree outside the band: |j| vs distance ratio
  std::mt19937_64 rng(51);
  for (Field ff : kFields)
    for (int trial = 0; trial < 400; ++trial) {
      const MatrixLift g = lift(rand_bruhat(rng, ff, 2, true));
      const IsometricSphere sp = isometric_sphere(g);
      const HPoint z = rand_interior(rng, ff, 2);
      const double jmod = cocycle_j(g, z).modulus;
      const double ratio = sphere_ratio(sp, z);
      CHECK(std::fabs(std::sqrt(jmod) - ratio) <= 1e-9 * (1.0 + ratio));
      if (std::fabs(ratio - 1.0) > 1e-9)
        CHECK(classify(sp, z) == (jmod > 1.0 ? SpherePosition::Exterior : SpherePosition::Interior));
    }
}

TEST_CASE("distance to the center") {
  const Field f = Field::C;
  std::mt19937_64 rng(52);
  // trivial second translation: the distance is sqrt |zeta|
  const MatrixLift m = lift_sigma(f, 2);
  const IsometricSphere s = isometric_sphere(m);
  for (int trial = 0; trial < 50; ++trial) {
    const HPoint z = rand_interior(rng, f, 2);
    CHECK(dist_to_center(s, z) == doctest::Approx(std::sqrt(abs(z.zeta))).epsilon(1e-12));
  }

  for (Field ff : kFields)
    for (int trial = 0; trial < 100; ++trial) {
      const MatrixLift g = lift(rand_bruhat(rng, ff, 3, true));
      const IsometricSphere sp = isometric_sphere(g);
      // distance grows like sqrt(height) along the vertical ray above the center
      std::uniform_real_distribution<double> uh(0.1, 5.0);
      const double h = uh(rng);
      Scalar zeta = sp.center.zeta;
      zeta.c[0] += h;
      const HPoint up = HPoint::interior(zeta, sp.center.v);
      CHECK(dist_to_center(sp, up) == doctest::Approx(std::sqrt(h)).epsilon(1e-9));
      // unbounded along rays: double the height, distance grows
      Scalar zeta2 = zeta;
      zeta2.c[0] += 4.0 * h;
      CHECK(dist_to_center(sp, HPoint::interior(zeta2, sp.center.v)) > dist_to_center(sp, up));
    }
}

TEST_CASE("height scaling law") {
  const Field f = Field::R;
  const MatrixLift sg = lift_sigma(f, 2);
  const HPoint q = HPoint::interior(Scalar(f, 0.25), ModuleVector::zero(f, 1));
  CHECK(height_transform(sg, q) == doctest::Approx(4.0));
  CHECK(point_dist(act(sg, q), HPoint::interior(Scalar(f, 4.0), ModuleVector::zero(f, 1))) <
        1e-14);

  std::mt19937_64 rng(53);
  for (Field ff : kFields)
    for (int trial = 0; trial < 300; ++trial) {
      const MatrixLift g = lift(rand_bruhat(rng, ff, 3, true));
      const HPoint z = rand_interior(rng, ff, 3);
      const double predicted = height_transform(g, z);
      const double actual = height_h(act(g, z));
      CHECK(std::fabs(predicted - actual) <= 1e-9 * (1.0 + actual));
      // strictly inside the sphere the height strictly increases
      const IsometricSphere sp = isometric_sphere(g);
      if (sphere_ratio(sp, z) < 1.0 - 1e-6) CHECK(actual > height_h(z));
    }
}

TEST_CASE("duality product and the exterior-to-interior law") {
  std::mt19937_64 rng(54);
  for (Field f : kFields)
    for (int trial = 0; trial < 300; ++trial) {
      const BruhatIsometry g = rand_bruhat(rng, f, 2, true);
      const MatrixLift m = lift(g);
      const HPoint z = rand_interior(rng, f, 2);
      const HPoint gz = act(m, z);
      const HPoint center = act(inverse_unitary(m), HPoint::infinity(f, 2));
      const HPoint cocenter = act(m, HPoint::infinity(f, 2));
      const double product = cygan_h(z, center) * cygan_h(gz, cocenter);
      CHECK(std::fabs(product - 1.0 / std::sqrt(g.t)) <= 1e-9 * (1.0 + product));
    }

  // sampled exterior points land strictly inside the inverse sphere
  for (Field f : kFields)
    for (int gi = 0; gi < 20; ++gi) {
      const MatrixLift m = lift(rand_bruhat(rng, f, 2, true));
      const IsometricSphere s = isometric_sphere(m);
      const IsometricSphere si = isometric_sphere(inverse_unitary(m));
      int found = 0;
      for (int trial = 0; trial < 400 && found < 50; ++trial) {
        const HPoint z = rand_interior(rng, f, 2);
        if (sphere_ratio(s, z) <= 1.0 + 1e-9) continue;
        ++found;
        CHECK(sphere_ratio(si, act(m, z)) < 1.0 - 1e-9);
      }
      CHECK(found > 0);

      // bisection onto the sphere, then check the image sits on the inverse sphere
      HPoint inside = s.center;
      Scalar zi = inside.zeta;
      zi.c[0] += 0.25 * s.radius * s.radius;
      const HPoint lo = HPoint::interior(zi, inside.v);
      Scalar zo = inside.zeta;
      zo.c[0] += 9.0 * s.radius * s.radius;
      const HPoint hi = HPoint::interior(zo, inside.v);
      double a = 0.0, b = 1.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (a + b);
        Scalar zm = lo.zeta;
        zm.c[0] = (1 - mid) * re(lo.zeta) + mid * re(hi.zeta);
        const HPoint pm = HPoint::interior(zm, lo.v);
        if (sphere_ratio(s, pm) < 1.0) a = mid;
        else b = mid;
      }
      Scalar zs = lo.zeta;
      zs.c[0] = (1 - 0.5 * (a + b)) * re(lo.zeta) + 0.5 * (a + b) * re(hi.zeta);
      const HPoint on = HPoint::interior(zs, lo.v);
      CHECK(std::fabs(sphere_ratio(si, act(m, on)) - 1.0) < 1e-7);
    }
}

TEST_CASE("vertical rays stay outside") {
  std::mt19937_64 rng(55);
  for (Field f : kFields)
    for (int trial = 0; trial < 200; ++trial) {
      const MatrixLift m = lift(rand_bruhat(rng, f, 2, true));
      const IsometricSphere s = isometric_sphere(m);
      const HPoint z = rand_interior(rng, f, 2);
      if (sphere_ratio(s, z) < 1.0 - 1e-12) continue;
      std::uniform_real_distribution<double> us(0.01, 3.0);
      Scalar zeta = z.zeta;
      zeta.c[0] += us(rng);
      CHECK(sphere_ratio(s, HPoint::interior(zeta, z.v)) > 1.0 - 1e-12);
    }
}

TEST_CASE("radius product law") {
  std::mt19937_64 rng(56);
  for (Field f : kFields) {
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 100; ++trial) {
      const MatrixLift g = lift(rand_bruhat(rng, f, 2, true));
      const MatrixLift h = lift(rand_bruhat(rng, f, 2, true));
      const MatrixLift gh = h * g;  // g o h
      if (abs(gh.at(1, 0)) < 1e-6) continue;  // product fell into the stabilizer
      ++checked;
      const double rg = isometric_sphere(g).radius;
      const double rhinv = isometric_sphere(inverse_unitary(h)).radius;
      const double rgh = isometric_sphere(gh).radius;
      const HPoint ginf_center = act(inverse_unitary(g), HPoint::infinity(f, 2));
      const HPoint hinf = act(h, HPoint::infinity(f, 2));
      const double denom = cygan_h(ginf_center, hinf);
      CHECK(std::fabs(rgh - rg * rhinv / denom) <= 1e-9 * (1.0 + rgh));
    }
    CHECK(checked > 50);
  }
}

TEST_CASE("exteriors are geodesically convex in the degenerate real chart") {
  // only claimed (and only true in general) when the horizontal part is
  // trivial; in the right half-plane chart the exterior is the complement of
  // a disk centered on the boundary axis and geodesics are circular arcs there
  std::mt19937_64 rng(58);
  std::uniform_real_distribution<double> u(-2.0, 2.0), uh(0.05, 3.0);
  for (int gi = 0; gi < 20; ++gi) {
    const MatrixLift m = lift(rand_bruhat(rng, Field::R, 2, true));
    const IsometricSphere s = isometric_sphere(m);
    auto chart_point = [](double t, double Z) { return d_to_h(nu(t, {Z})); };
    int pairs = 0;
    for (int trial = 0; trial < 2000 && pairs < 100; ++trial) {
      const double z1 = u(rng), t1 = uh(rng), z2 = u(rng), t2 = uh(rng);
      const HPoint p1 = chart_point(t1, z1), p2 = chart_point(t2, z2);
      if (sphere_ratio(s, p1) <= 1.0 + 1e-9 || sphere_ratio(s, p2) <= 1.0 + 1e-9) continue;
      ++pairs;
      // geodesic between (z1,t1) and (z2,t2): vertical segment or a circle
      // centered on the axis t = 0
      for (int step = 1; step < 24; ++step) {
        const double lam = step / 24.0;
        double zc, tc;
        if (std::fabs(z1 - z2) < 1e-12) {
          zc = z1;
          tc = t1 * std::pow(t2 / t1, lam);
        } else {
          const double x0 =
              (z1 * z1 + t1 * t1 - z2 * z2 - t2 * t2) / (2.0 * (z1 - z2));
          const double r = std::hypot(z1 - x0, t1);
          const double a1 = std::atan2(t1, z1 - x0), a2 = std::atan2(t2, z2 - x0);
          const double ang = a1 + lam * (a2 - a1);
          zc = x0 + r * std::cos(ang);
          tc = r * std::sin(ang);
        }
        if (tc <= 1e-9) continue;
        CHECK(sphere_ratio(s, chart_point(tc, zc)) > 1.0 - 1e-9);
      }
    }
    CHECK(pairs > 10);
  }
}

TEST_CASE("conjugation by stabilizer elements") {
  std::mt19937_64 rng(57);
  for (Field f : kFields)
    for (int trial = 0; trial < 60; ++trial) {
      const MatrixLift g = lift(rand_bruhat(rng, f, 2, true));
      const IsometricSphere base = isometric_sphere(g);

      // dilation: radius scales by sqrt(s), the center dilates
      std::uniform_real_distribution<double> us(0.3, 3.0);
      const double s = us(rng);
      const MatrixLift hd = lift_dilation(f, 2, s);
      const IsometricSphere cd = conjugate_sphere(hd, g);
      CHECK(cd.radius == doctest::Approx(std::sqrt(s) * base.radius).epsilon(1e-9));
      CHECK(point_dist(cd.center, act(hd, base.center)) < 1e-9);

      // translation: radius fixed, center translates
      const Translation tr = rand_translation(rng, f, 2);
      const MatrixLift ht = lift(tr, f, 2);
      const IsometricSphere ct = conjugate_sphere(ht, g);
      CHECK(ct.radius == doctest::Approx(base.radius).epsilon(1e-9));
      CHECK(point_dist(ct.center, act(ht, base.center)) < 1e-9);

      // rotation: radius fixed, center rotates
      const MatrixLift hr = lift(rand_rotation(rng, f, 2));
      const IsometricSphere cr = conjugate_sphere(hr, g);
      CHECK(cr.radius == doctest::Approx(base.radius).epsilon(1e-9));
      CHECK(point_dist(cr.center, act(hr, base.center)) < 1e-9);

      CHECK_THROWS_AS((void)conjugate_sphere(lift_sigma(f, 2), g), NonStabilizerConjugator);
    }
}
