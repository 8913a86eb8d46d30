#include <doctest.h>

#include <array>
#include <complex>
#include <set>

#include "rank1/ford.hpp"
#include "test_helpers.hpp"

using namespace rank1;
using namespace rank1::testing;

namespace {

GroupSpec sigma_spec(Field f, int n) {
  GroupSpec spec;
  spec.field = f;
  spec.n = n;
  spec.labels = {"S"};
  spec.generators = {lift_sigma(f, n)};
  spec.word_length = 3;
  spec.min_radius = 1e-4;
  spec.seed = 11;
  return spec;
}

// translation by one unit along the horizontal axis of the right half-plane
// chart plus the inversion: the arithmetic test group
GroupSpec modular_spec(int word_length, double min_radius = 5e-4) {
  GroupSpec spec;
  spec.field = Field::R;
  spec.n = 2;
  Translation tr(Scalar(Field::R, 1.0), ModuleVector(Field::R, {Scalar(Field::R, std::sqrt(2.0))}));
  spec.labels = {"T", "S"};
  spec.generators = {lift(tr, Field::R, 2), lift_sigma(Field::R, 2)};
  spec.stabilizer_labels = {"T"};
  spec.word_length = word_length;
  spec.min_radius = min_radius;
  spec.seed = 7;
  return spec;
}

HPoint h_from_upper_half(std::complex<double> w) {
  // w = -Z + i t in the right half-plane chart (t, Z)
  return d_to_h(nu(w.imag(), {-w.real()}));
}

std::complex<double> upper_half_from_h(const HPoint& z) {
  double t;
  std::vector<double> Z;
  nu_inv(h_to_d(z), t, Z);
  return {-Z[0], t};
}

// classical reduction into |Re w| <= 1/2, |w| >= 1
std::complex<double> classical_reduce(std::complex<double> w, int budget = 512) {
  for (int i = 0; i < budget; ++i) {
    w -= std::round(w.real());
    if (std::abs(w) < 1.0 - 1e-15) w = -1.0 / w;
    else return w;
  }
  return w;
}

}  // namespace

TEST_CASE("enumeration basics") {
  // the inversion is an involution: one element survives
  const Enumeration en = enumerate_group(sigma_spec(Field::R, 2));
  CHECK(en.elements.size() == 1);
  CHECK(en.elements[0].word == "S");
  CHECK(en.stabilizer.empty());
  CHECK(en.identity_hits > 0);

  GroupSpec empty;
  empty.field = Field::C;
  empty.n = 2;
  CHECK(enumerate_group(empty).elements.empty());
}

TEST_CASE("enumeration matches the arithmetic 2x2 picture") {
  // oracle: reduced words in the two standard generators of the arithmetic
  // group, deduplicated as 2x2 integer matrices up to sign
  const int L = 6;
  using M2 = std::array<long long, 4>;
  auto mmul = [](const M2& a, const M2& b) {
    return M2{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
              a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
  };
  auto norm_sign = [](M2 m) {
    for (int k = 0; k < 4; ++k)
      if (m[static_cast<std::size_t>(k)] != 0) {
        if (m[static_cast<std::size_t>(k)] < 0)
          for (auto& x : m) x = -x;
        break;
      }
    return m;
  };
  const M2 T{1, 1, 0, 1}, Tinv{1, -1, 0, 1}, S{0, -1, 1, 0}, Sinv{0, 1, -1, 0};
  const std::array<M2, 4> gens{T, Tinv, S, Sinv};
  std::set<M2> all, nonstab;
  std::vector<std::pair<M2, int>> frontier{{M2{1, 0, 0, 1}, -1}};
  all.insert(M2{1, 0, 0, 1});
  for (int len = 0; len < L; ++len) {
    std::vector<std::pair<M2, int>> next;
    for (const auto& [m, last] : frontier)
      for (int s = 0; s < 4; ++s) {
        if (last >= 0 && (last ^ 1) == s) continue;
        const M2 prod = norm_sign(mmul(m, gens[static_cast<std::size_t>(s)]));
        if (!all.insert(prod).second) continue;
        if (prod[2] != 0) nonstab.insert(prod);  // lower-left entry = 0 fixes infinity
        next.emplace_back(prod, s);
      }
    frontier = std::move(next);
  }

  const Enumeration en = enumerate_group(modular_spec(L));
  CHECK(en.elements.size() == nonstab.size());
  CHECK(en.stabilizer.size() == all.size() - nonstab.size() - 1);  // identity excluded
}

TEST_CASE("region for the involution alone") {
  const FordRegion region = compute_region(sigma_spec(Field::R, 2));
  REQUIRE(region.spheres.size() == 1);
  CHECK(region.spheres[0].radius == doctest::Approx(1.0));
  CHECK(abs(region.spheres[0].center.zeta) < 1e-12);
  CHECK(region.stabilizer.kind == StabilizerDomain::Kind::WholeSpace);
  CHECK(!region.empty_warning);

  const ModuleVector zero = ModuleVector::zero(Field::R, 1);
  CHECK(region_contains(region, HPoint::interior(Scalar(Field::R, 4.0), zero)).status ==
        Membership::Inside);
  const ContainsResult out =
      region_contains(region, HPoint::interior(Scalar(Field::R, 0.25), zero));
  CHECK(out.status == Membership::Outside);
  CHECK(out.blocking_word == "S");
  CHECK(region_contains(region, HPoint::interior(Scalar(Field::R, 1.0), zero)).status ==
        Membership::Boundary);
}

TEST_CASE("translations alone give the slab with a warning") {
  GroupSpec spec;
  spec.field = Field::C;
  spec.n = 2;
  Translation tr(Scalar(Field::C, 0.5), ModuleVector(Field::C, {Scalar(Field::C, 1.0)}));
  spec.labels = {"T"};
  spec.generators = {lift(tr, Field::C, 2)};
  spec.stabilizer_labels = {"T"};
  spec.word_length = 4;
  const FordRegion region = compute_region(spec);
  CHECK(region.empty_warning);
  CHECK(region.spheres.empty());
  REQUIRE(region.stabilizer.slabs.size() == 1);
  CHECK(region.stabilizer.slabs[0].half_width == doctest::Approx(0.5));
  CHECK(region.stabilizer.slabs[0].on_v);

  // a vertical translation gives a vertical slab
  GroupSpec vspec;
  vspec.field = Field::C;
  vspec.n = 2;
  Translation vt(Scalar(Field::C, 0.0, 0.8), ModuleVector::zero(Field::C, 1));
  vspec.labels = {"V"};
  vspec.generators = {lift(vt, Field::C, 2)};
  vspec.stabilizer_labels = {"V"};
  const FordRegion vregion = compute_region(vspec);
  REQUIRE(vregion.stabilizer.slabs.size() == 1);
  CHECK(!vregion.stabilizer.slabs[0].on_v);
  CHECK(vregion.stabilizer.slabs[0].half_width == doctest::Approx(0.4));
}

TEST_CASE("declared stabilizers are checked") {
  GroupSpec spec = sigma_spec(Field::R, 2);
  spec.stabilizer_labels = {"S"};
  CHECK_THROWS_AS(spec.validate(), SpecError);

  GroupSpec spec2 = modular_spec(4);
  spec2.stabilizer_labels.clear();  // T fixes infinity but is undeclared
  CHECK_THROWS_AS(spec2.validate(), SpecError);

  // a dilation stabilizer is declared but unsupported for the slab
  GroupSpec spec3;
  spec3.field = Field::R;
  spec3.n = 2;
  spec3.labels = {"A"};
  spec3.generators = {lift_dilation(Field::R, 2, 2.0)};
  spec3.stabilizer_labels = {"A"};
  CHECK_THROWS_AS((void)compute_region(spec3), UnsupportedStabilizer);
}

TEST_CASE("reduction") {
  const FordRegion region = compute_region(sigma_spec(Field::R, 2));
  const ModuleVector zero = ModuleVector::zero(Field::R, 1);
  const ReduceResult r =
      reduce_to_region(region, HPoint::interior(Scalar(Field::R, 0.25), zero), 64);
  CHECK(r.word == "S");
  CHECK(point_dist(r.image, HPoint::interior(Scalar(Field::R, 4.0), zero)) < 1e-12);

  const ReduceResult already =
      reduce_to_region(region, HPoint::interior(Scalar(Field::R, 2.0), zero), 64);
  CHECK(already.word == "id");
  CHECK(already.steps == 0);
}

TEST_CASE("modular region matches the classical domain") {
  const FordRegion region = compute_region(modular_spec(8));
  CHECK(!region.empty_warning);
  // the biggest sphere is the unit sphere at the origin
  CHECK(region.spheres[0].radius == doctest::Approx(1.0));

  CounterRng rng{99};
  int checked = 0, agree = 0, reduced_checked = 0, reduced_agree = 0;
  for (int i = 0; i < 3000; ++i) {
    const double x = rng.symmetric(4 * static_cast<std::uint64_t>(i), 1.6);
    const double y = 0.05 + rng.uniform(4 * static_cast<std::uint64_t>(i) + 1) * 2.4;
    const std::complex<double> w(x, y);
    const double guard =
        std::min(std::fabs(std::fabs(x) - 0.5), std::fabs(std::abs(w) - 1.0));
    if (guard < 1e-3) continue;
    const bool classical = std::fabs(x) < 0.5 && std::abs(w) > 1.0;
    const bool ours =
        region_contains(region, h_from_upper_half(w)).status == Membership::Inside;
    ++checked;
    if (classical == ours) ++agree;

    if (i % 10 == 0) {
      const ReduceResult r = reduce_to_region(region, h_from_upper_half(w), 256);
      const std::complex<double> ww = upper_half_from_h(r.image);
      const std::complex<double> cw = classical_reduce(w);
      // skip points reduced onto the domain boundary (identified edges)
      if (std::min(std::fabs(std::fabs(cw.real()) - 0.5), std::fabs(std::abs(cw) - 1.0)) < 1e-6)
        continue;
      ++reduced_checked;
      if (std::abs(ww - cw) < 1e-6) ++reduced_agree;
    }
  }
  CHECK(checked > 2000);
  CHECK(agree == checked);
  CHECK(reduced_checked > 150);
  CHECK(reduced_agree == reduced_checked);
}

TEST_CASE("verification") {
  const GroupSpec spec = sigma_spec(Field::R, 2);
  const FordRegion region = compute_region(spec);
  const VerifyReport rep = verify_region(spec, region, 2000, 5);
  CHECK(rep.pass);
  CHECK(rep.inside_samples > 0);
  CHECK(rep.disjointness_total == 0);
  CHECK(rep.covering_failures == 0);
  CHECK(rep.max_radius == doctest::Approx(1.0));

  // dropping every sphere breaks disjointness and the report says so
  GroupSpec broken = modular_spec(4);
  broken.min_radius = 1.5;
  const FordRegion bregion = compute_region(broken);
  CHECK(bregion.empty_warning);
  const VerifyReport brep = verify_region(broken, bregion, 400, 5);
  CHECK(!brep.pass);
  CHECK(brep.disjointness_total > 0);
  CHECK(!brep.disjointness_violations.empty());

  // a starved budget surfaces as covering failures with witnesses
  const GroupSpec mod = modular_spec(6);
  const FordRegion mregion = compute_region(mod);
  const VerifyReport mrep = verify_region(mod, mregion, 400, 5, 0);
  CHECK(mrep.covering_failures > 0);
  CHECK(!mrep.covering_witnesses.empty());

  // empty group: trivially fine
  GroupSpec empty;
  empty.field = Field::R;
  empty.n = 2;
  const FordRegion eregion = compute_region(empty);
  CHECK(eregion.empty_warning);
  const VerifyReport erep = verify_region(empty, eregion, 100, 5);
  CHECK(erep.pass);
}

TEST_CASE("quaternionic group with composite elements") {
  // products of the vertical translation and the inversion acquire rotation
  // blocks with non-central scalar parts; the sphere pipeline must handle
  // them without falling back to the factored-form reader
  GroupSpec spec;
  spec.field = Field::H;
  spec.n = 2;
  Translation vt(Scalar(Field::H, 0.0, 1.0), ModuleVector::zero(Field::H, 1));
  spec.labels = {"T", "S"};
  spec.generators = {lift(vt, Field::H, 2), lift_sigma(Field::H, 2)};
  spec.stabilizer_labels = {"T"};
  spec.word_length = 5;
  spec.min_radius = 1e-3;
  const FordRegion region = compute_region(spec);
  CHECK(!region.empty_warning);
  CHECK(region.spheres.size() > 3);
  for (const auto& s : region.spheres) {
    CHECK(s.radius >= spec.min_radius);
    CHECK(s.radius <= 1.0 + 1e-12);
    CHECK(s.center.kind == PointKind::Boundary);
  }
  REQUIRE(region.stabilizer.slabs.size() == 1);
  CHECK(!region.stabilizer.slabs[0].on_v);

  // composite words genuinely enter the sphere list
  bool composite = false;
  for (const auto& s : region.spheres)
    if (s.word.find('.') != std::string::npos) composite = true;
  CHECK(composite);

  // membership and reduction stay mechanically sound
  std::mt19937_64 rng(77);
  int reduced = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const HPoint z = rand_interior(rng, Field::H, 2);
    (void)region_contains(region, z);
    try {
      const ReduceResult r = reduce_to_region(region, z, 64);
      ++reduced;
      CHECK(region_contains(region, r.image).status != Membership::Outside);
    } catch (const BudgetExhausted&) {
      // acceptable for a possibly non-discrete toy group
    }
  }
  CHECK(reduced > 0);
}

TEST_CASE("verification reports do not depend on the worker count") {
  const GroupSpec spec = modular_spec(5);
  const FordRegion region = compute_region(spec);
  setenv("FORD_RANK1_THREADS", "1", 1);
  const VerifyReport serial = verify_region(spec, region, 600, 42);
  setenv("FORD_RANK1_THREADS", "8", 1);
  const VerifyReport threaded = verify_region(spec, region, 600, 42);
  unsetenv("FORD_RANK1_THREADS");
  CHECK(serial.inside_samples == threaded.inside_samples);
  CHECK(serial.disjointness_total == threaded.disjointness_total);
  CHECK(serial.covering_failures == threaded.covering_failures);
  CHECK(serial.pass == threaded.pass);
}

TEST_CASE("region membership is monotone under vertical ascent") {
  const FordRegion region = compute_region(modular_spec(6));
  CounterRng rng{5};
  std::mt19937_64 mt(61);
  int inside_found = 0;
  for (int i = 0; i < 800 && inside_found < 200; ++i) {
    std::uniform_real_distribution<double> ux(-0.51, 0.51), uh(0.05, 6.0), us(0.01, 4.0);
    ModuleVector v(Field::R, {Scalar(Field::R, ux(mt))});
    Scalar zeta(Field::R, 0.5 * v.norm2() + uh(mt));
    const HPoint z = HPoint::interior(zeta, v);
    if (region_contains(region, z).status != Membership::Inside) continue;
    ++inside_found;
    Scalar up = zeta;
    up.c[0] += us(mt);
    CHECK(region_contains(region, HPoint::interior(up, v)).status == Membership::Inside);
  }
  CHECK(inside_found > 50);
}

TEST_CASE("stabilizer conjugation permutes the retained spheres") {
  const GroupSpec spec = modular_spec(6);
  const FordRegion region = compute_region(spec);
  const MatrixLift tmat = spec.generators[0];
  int moved = 0, matched = 0;
  for (std::size_t i = 0; i < region.spheres.size(); ++i) {
    const IsometricSphere cs = conjugate_sphere(tmat, region.sphere_mats[i]);
    // compare against the retained set up to truncation at the rim
    bool found = false;
    for (const auto& s : region.spheres)
      if (std::fabs(s.radius - cs.radius) < 1e-8 && point_dist(s.center, cs.center) < 1e-7)
        found = true;
    ++moved;
    if (found) ++matched;
  }
  // conjugating by the slab translation maps sphere centers one unit over;
  // everything except the word-length rim must reappear
  CHECK(moved > 0);
  CHECK(matched >= moved / 2);
}
