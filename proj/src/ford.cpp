#include "rank1/ford.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <thread>

namespace rank1 {

// ------------------------------ deterministic rng --------------------------

std::uint64_t CounterRng::mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double CounterRng::uniform(std::uint64_t idx) const {
  const std::uint64_t u = mix(mix(seed ^ 0x5851f42d4c957f2dull) + idx * 0x2545f4914f6cdd1dull);
  return static_cast<double>(u >> 11) * 0x1.0p-53;
}

double CounterRng::symmetric(std::uint64_t idx, double half) const {
  return (2.0 * uniform(idx) - 1.0) * half;
}

int worker_count() {
  if (const char* env = std::getenv("FORD_RANK1_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(std::min<long>(v, 64));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp<unsigned>(hw, 1u, 8u));
}

namespace {

// Deterministic index-space map; results are written per index, so the
// outcome does not depend on the split.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  const int workers = std::min(worker_count(), std::max(1, count));
  if (workers <= 1 || count < 64) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

bool matrix_fixes_infinity(const MatrixLift& m, double tol = 1e-10) {
  return abs(m.at(1, 0)) <= tol * std::max(1.0, m.max_entry_abs());
}

}  // namespace

// --------------------------------- GroupSpec -------------------------------

void GroupSpec::validate(const Tolerances& tol) const {
  if (n < 2) throw SpecError("spec needs n >= 2");
  if (labels.size() != generators.size()) throw SpecError("labels and generators differ in count");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty() || l == "id") throw SpecError("bad generator label '" + l + "'");
    if (l.find('.') != std::string::npos || l.find('^') != std::string::npos)
      throw SpecError("label '" + l + "' uses reserved characters");
    if (!seen.insert(l).second) throw SpecError("duplicate label '" + l + "'");
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const MatrixLift& g = generators[i];
    if (g.field != field || g.n != n) throw SpecError("generator '" + labels[i] + "' has wrong shape");
    const double r = q_residual(g);
    if (r > tol.q_residual)
      throw SpecError("generator '" + labels[i] + "' violates form invariance, residual " +
                      std::to_string(r));
  }
  std::set<std::string> stab(stabilizer_labels.begin(), stabilizer_labels.end());
  for (const auto& l : stab)
    if (!seen.count(l)) throw SpecError("stabilizer label '" + l + "' is not a generator");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const bool declared = stab.count(labels[i]) > 0;
    const bool fixes = matrix_fixes_infinity(generators[i]);
    if (declared && !fixes)
      throw SpecError("generator '" + labels[i] + "' is declared a stabilizer but moves infinity");
    if (!declared && fixes)
      throw SpecError("generator '" + labels[i] + "' fixes infinity but is not declared");
  }
  if (word_length < 0 || word_length > 24) throw SpecError("word_length out of range");
  if (min_radius < 0) throw SpecError("min_radius must be nonnegative");
  if (dedup_quantum <= 0) throw SpecError("dedup_quantum must be positive");
}

// -------------------------------- enumeration ------------------------------

namespace {

std::vector<HPoint> probe_tuple(Field f, int n) {
  CounterRng rng{0x50524f4245ull + (static_cast<std::uint64_t>(f) << 8) +
                 static_cast<std::uint64_t>(n)};
  std::vector<HPoint> probes;
  std::uint64_t idx = 0;
  for (int k = 0; k < 3; ++k) {
    ModuleVector v = ModuleVector::zero(f, n - 1);
    for (auto& s : v.e)
      for (int c = 0; c < field_dim(f); ++c) s.c[static_cast<std::size_t>(c)] = rng.symmetric(idx++, 0.4);
    Scalar zeta = Scalar::zero(f);
    for (int c = 1; c < field_dim(f); ++c) zeta.c[static_cast<std::size_t>(c)] = rng.symmetric(idx++, 0.4);
    zeta.c[0] = 0.5 * v.norm2() + 0.6 + 0.25 * k;
    probes.push_back(HPoint::interior(zeta, v));
  }
  return probes;
}

void append_quantized(std::vector<std::int64_t>& key, const HPoint& p, double quantum) {
  for (int c = 0; c < 4; ++c) key.push_back(std::llround(p.zeta.c[static_cast<std::size_t>(c)] / quantum));
  for (const auto& s : p.v.e)
    for (int c = 0; c < 4; ++c) key.push_back(std::llround(s.c[static_cast<std::size_t>(c)] / quantum));
}

std::vector<std::int64_t> fingerprint(const MatrixLift& m, const std::vector<HPoint>& probes,
                                      double quantum) {
  std::vector<std::int64_t> key;
  key.reserve(probes.size() * 16);
  for (const auto& p : probes) append_quantized(key, act(m, p), quantum);
  return key;
}

}  // namespace

Enumeration enumerate_group(const GroupSpec& spec, const Tolerances& tol) {
  spec.validate(tol);
  Enumeration out;
  if (spec.generators.empty()) return out;

  const std::vector<HPoint> probes = probe_tuple(spec.field, spec.n);

  struct Symbol {
    std::string text;
    MatrixLift mat;
    int pair;  // index of the inverse symbol
  };
  std::vector<Symbol> symbols;
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    const int base = static_cast<int>(symbols.size());
    symbols.push_back({spec.labels[i], spec.generators[i], base + 1});
    symbols.push_back({spec.labels[i] + "^-1", inverse_unitary(spec.generators[i]), base});
  }

  std::map<std::vector<std::int64_t>, bool> seen;
  seen.emplace(fingerprint(MatrixLift::identity(spec.field, spec.n), probes, spec.dedup_quantum),
               true);

  struct Node {
    std::string word;
    int len;
    int last;  // symbol index, -1 at the root
    MatrixLift mat;
  };
  std::deque<Node> frontier;
  frontier.push_back({"", 0, -1, MatrixLift::identity(spec.field, spec.n)});

  while (!frontier.empty()) {
    const Node cur = frontier.front();
    frontier.pop_front();
    if (cur.len >= spec.word_length) continue;
    for (int s = 0; s < static_cast<int>(symbols.size()); ++s) {
      if (cur.last >= 0 && symbols[static_cast<std::size_t>(cur.last)].pair == s) continue;  // free reduction
      // Appended symbol acts first: M(w . s) = M(s) M(w).
      MatrixLift mat = symbols[static_cast<std::size_t>(s)].mat * cur.mat;
      std::string word = cur.word.empty() ? symbols[static_cast<std::size_t>(s)].text
                                          : cur.word + "." + symbols[static_cast<std::size_t>(s)].text;
      auto key = fingerprint(mat, probes, spec.dedup_quantum);
      auto ins = seen.emplace(std::move(key), true);
      if (!ins.second) {
        // Either the identity or an element already produced by a shorter or
        // lexicographically earlier word.
        bool is_id = true;
        for (std::size_t p = 0; p < probes.size() && is_id; ++p) {
          const HPoint img = act(mat, probes[p]);
          if (abs(img.zeta - probes[p].zeta) > 8 * spec.dedup_quantum ||
              std::sqrt((img.v - probes[p].v).norm2()) > 8 * spec.dedup_quantum)
            is_id = false;
        }
        if (is_id) ++out.identity_hits;
        else ++out.duplicate_hits;
        continue;
      }
      Node next{std::move(word), cur.len + 1, s, std::move(mat)};
      if (matrix_fixes_infinity(next.mat))
        out.stabilizer.push_back({next.word, next.len, next.mat});
      else
        out.elements.push_back({next.word, next.len, next.mat});
      frontier.push_back(std::move(next));
    }
  }

  auto by_len_word = [](const WordElement& a, const WordElement& b) {
    return a.length != b.length ? a.length < b.length : a.word < b.word;
  };
  std::sort(out.elements.begin(), out.elements.end(), by_len_word);
  std::sort(out.stabilizer.begin(), out.stabilizer.end(), by_len_word);
  return out;
}

// ------------------------------ stabilizer domain --------------------------

namespace {

StabilizerDomain build_stabilizer_domain(const GroupSpec& spec, const Tolerances& tol) {
  StabilizerDomain dom;
  if (spec.stabilizer_labels.empty()) return dom;
  dom.kind = StabilizerDomain::Kind::Slab;

  std::vector<std::pair<std::string, Translation>> trans;
  for (const auto& label : spec.stabilizer_labels) {
    const auto it = std::find(spec.labels.begin(), spec.labels.end(), label);
    const MatrixLift& mat = spec.generators[static_cast<std::size_t>(it - spec.labels.begin())];
    const BruhatDecomposition d = bruhat_decompose(mat, tol.structure, tol.structure);
    if (d.iso.inversion || std::fabs(d.iso.t - 1.0) > 1e-9 ||
        d.iso.rot.unitarity_residual() > tol.structure)
      throw UnsupportedStabilizer("stabilizer generator '" + label + "' is not a translation");
    Rotation id = Rotation::identity(spec.field, spec.n);
    double rot_defect = 0.0;
    for (int i = 0; i < id.dim(); ++i)
      for (int j = 0; j < id.dim(); ++j)
        rot_defect = std::max(rot_defect, abs(d.iso.rot.at(i, j) - id.at(i, j)));
    if (rot_defect > tol.structure)
      throw UnsupportedStabilizer("stabilizer generator '" + label + "' carries a rotation part");
    trans.emplace_back(label, d.iso.n2);
  }

  for (const auto& [label, tr] : trans) {
    Slab s;
    s.label = label;
    const double ulen = std::sqrt(tr.u0.norm2());
    const double zlen = abs(im(tr.tau0));
    if (ulen > 1e-12) {
      s.on_v = true;
      s.vdir = (1.0 / ulen) * tr.u0;
      s.zdir = Scalar::zero(spec.field);
      s.half_width = 0.5 * ulen;
    } else if (zlen > 1e-12) {
      s.on_v = false;
      s.vdir = ModuleVector::zero(spec.field, spec.n - 1);
      s.zdir = (1.0 / zlen) * im(tr.tau0);
      s.half_width = 0.5 * zlen;
    } else {
      throw UnsupportedStabilizer("stabilizer generator '" + label + "' is the identity");
    }
    dom.slabs.push_back(std::move(s));
  }

  // The slab product tiles only for commuting translations along orthogonal
  // directions; reject anything else.
  for (std::size_t i = 0; i < trans.size(); ++i)
    for (std::size_t j = i + 1; j < trans.size(); ++j) {
      const Slab &a = dom.slabs[i], &b = dom.slabs[j];
      if (a.on_v && b.on_v) {
        if (std::fabs(euclid_inner(a.vdir, b.vdir)) > 1e-9)
          throw UnsupportedStabilizer("stabilizer directions are not orthogonal");
        if (abs(lie_bracket(trans[i].second.u0, trans[j].second.u0)) > 1e-10)
          throw UnsupportedStabilizer("stabilizer translations do not commute");
      }
      if (!a.on_v && !b.on_v) {
        double dot = 0.0;
        for (int c = 0; c < 4; ++c) dot += a.zdir.c[static_cast<std::size_t>(c)] * b.zdir.c[static_cast<std::size_t>(c)];
        if (std::fabs(dot) > 1e-9)
          throw UnsupportedStabilizer("vertical stabilizer directions are not orthogonal");
      }
    }
  return dom;
}

}  // namespace

double slab_coordinate(const Slab& s, const HPoint& z) {
  if (z.is_infinity()) throw InfinityArgument("slab_coordinate(infinity)");
  if (s.on_v) return euclid_inner(z.v, s.vdir);
  double dot = 0.0;
  const Scalar zi = im(z.zeta);
  for (int c = 0; c < 4; ++c) dot += zi.c[static_cast<std::size_t>(c)] * s.zdir.c[static_cast<std::size_t>(c)];
  return dot;
}

// -------------------------------- region -----------------------------------

FordRegion compute_region(const GroupSpec& spec, const Tolerances& tol) {
  const Enumeration en = enumerate_group(spec, tol);
  FordRegion region;
  region.field = spec.field;
  region.n = spec.n;
  region.stabilizer = build_stabilizer_domain(spec, tol);
  region.truncation = {spec.word_length, spec.min_radius, spec.dedup_quantum, 0,
                       static_cast<int>(en.elements.size())};
  region.has_matrices = true;

  for (const auto& label : spec.stabilizer_labels) {
    const auto it = std::find(spec.labels.begin(), spec.labels.end(), label);
    region.stab_gens.emplace_back(label, spec.generators[static_cast<std::size_t>(it - spec.labels.begin())]);
  }

  // One sphere per center: a smaller concentric sphere is dominated by the
  // larger one and dropped.
  std::map<std::vector<std::int64_t>, std::size_t> by_center;
  std::vector<IsometricSphere> spheres;
  std::vector<MatrixLift> mats;
  for (const auto& el : en.elements) {
    IsometricSphere s = isometric_sphere(el.mat, el.word);
    if (s.radius < spec.min_radius) {
      ++region.truncation.discarded_small;
      continue;
    }
    std::vector<std::int64_t> key;
    append_quantized(key, s.center, spec.dedup_quantum);
    auto it = by_center.find(key);
    if (it == by_center.end()) {
      by_center.emplace(std::move(key), spheres.size());
      spheres.push_back(std::move(s));
      mats.push_back(el.mat);
    } else if (s.radius > spheres[it->second].radius + spec.dedup_quantum) {
      spheres[it->second] = std::move(s);
      mats[it->second] = el.mat;
    }
  }

  // Largest spheres first; word breaks ties for reproducible output.
  std::vector<std::size_t> order(spheres.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (spheres[a].radius != spheres[b].radius) return spheres[a].radius > spheres[b].radius;
    return spheres[a].word < spheres[b].word;
  });
  for (std::size_t i : order) {
    region.spheres.push_back(spheres[i]);
    region.sphere_mats.push_back(mats[i]);
  }
  region.empty_warning = region.spheres.empty();
  return region;
}

ContainsResult region_contains(const FordRegion& region, const HPoint& z, const Tolerances& tol) {
  if (z.kind != PointKind::Interior)
    throw DomainError("membership is defined for interior points");
  ContainsResult res;
  for (const auto& s : region.stabilizer.slabs) {
    const double band = tol.sphere_band * std::max(1.0, s.half_width);
    const double d = std::fabs(slab_coordinate(s, z)) - s.half_width;
    if (d > band) return {Membership::Outside, s.label};
    if (d >= -band) res.status = Membership::Boundary;
  }
  for (const auto& s : region.spheres) {
    const double ratio = sphere_ratio(s, z);
    if (ratio < 1.0 - tol.sphere_band) return {Membership::Outside, s.word};
    if (ratio < 1.0 + tol.sphere_band) res.status = Membership::Boundary;
  }
  return res;
}

// -------------------------------- reduction --------------------------------

namespace {

// Integer power of a boundary translation, built in closed form.
MatrixLift translation_power(const MatrixLift& gen, long k, Field f, int n) {
  const BruhatDecomposition d = bruhat_decompose(gen);
  const Translation& t = d.iso.n2;
  const double m = static_cast<double>(k);
  ModuleVector u = m * t.u0;
  Scalar tau = m * im(t.tau0);
  tau.c[0] = 0.5 * u.norm2();
  return lift(Translation(tau, u), f, n);
}

std::string power_word(const std::string& label, long k) {
  if (k == 1) return label;
  if (k == -1) return label + "^-1";
  return label + "^" + std::to_string(k);
}

}  // namespace

ReduceResult reduce_to_region(const FordRegion& region, const HPoint& z, int budget,
                              const Tolerances& tol) {
  if (!region.has_matrices)
    throw Error("region was loaded without matrices; recompute it from the group spec");
  if (z.kind != PointKind::Interior) throw DomainError("reduction needs an interior point");

  std::vector<std::string> parts;  // outermost first
  HPoint cur = z;
  int steps = 0;

  auto slab_generator = [&](const std::string& label) -> const MatrixLift& {
    for (const auto& [l, m] : region.stab_gens)
      if (l == label) return m;
    throw Error("no stabilizer generator for slab '" + label + "'");
  };

  for (int moves = 0;; ++moves) {
    // Normalize into the slab closure; heights are unchanged and these moves
    // do not count against the budget.
    for (const auto& s : region.stabilizer.slabs) {
      const double width = 2.0 * s.half_width;
      const long k = std::lround(slab_coordinate(s, cur) / width);
      if (k != 0) {
        cur = act(translation_power(slab_generator(s.label), -k, region.field, region.n), cur);
        parts.insert(parts.begin(), power_word(s.label, -k));
        ++steps;
      }
    }
    const ContainsResult c = region_contains(region, cur, tol);
    if (c.status != Membership::Outside)
      return ReduceResult{parts.empty() ? "id" : [&] {
                            std::string w = parts[0];
                            for (std::size_t i = 1; i < parts.size(); ++i) w += "." + parts[i];
                            return w;
                          }(),
                          cur, steps};
    if (moves >= budget)
      throw BudgetExhausted("reduction did not settle within " + std::to_string(budget) +
                            " moves; the group may be non-discrete or the budget too small");

    // Steepest move: the sphere whose interior holds the point deepest.
    int best = -1;
    double best_ratio = 1.0 - tol.sphere_band;
    for (std::size_t i = 0; i < region.spheres.size(); ++i) {
      const double r = sphere_ratio(region.spheres[i], cur);
      if (r < best_ratio) {
        best_ratio = r;
        best = static_cast<int>(i);
      }
    }
    if (best < 0)
      throw Error("outside the region with no applicable sphere move (blocked by '" +
                  c.blocking_word + "')");
    const double h_before = height_h(cur);
    cur = act(region.sphere_mats[static_cast<std::size_t>(best)], cur);
    ++steps;
    const double h_after = height_h(cur);
    if (h_after < h_before * (1.0 - 1e-9) - 1e-12)
      throw Error("height decreased along a reduction step");
    parts.insert(parts.begin(), region.spheres[static_cast<std::size_t>(best)].word);
  }
}

// ------------------------------- verification ------------------------------

VerifyReport verify_region(const GroupSpec& spec, const FordRegion& region, int samples,
                           std::uint64_t seed, int budget, const Tolerances& tol) {
  const Enumeration en = enumerate_group(spec, tol);
  VerifyReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.empty_region = region.empty_warning;

  rep.max_radius = 0.0;
  for (const auto& s : region.spheres) rep.max_radius = std::max(rep.max_radius, s.radius);
  for (double thr : {1.0, 0.5, 0.1, 0.01, 0.001}) {
    int count = 0;
    for (const auto& s : region.spheres)
      if (s.radius > thr) ++count;
    rep.radius_counts.emplace_back(thr, count);
  }

  // Sampling box from the region data.
  double lateral = 1.0;
  for (const auto& s : region.spheres) {
    lateral = std::max(lateral, 2.0 * s.radius);
    lateral = std::max(lateral, 1.5 * std::sqrt(s.center.v.norm2()));
    lateral = std::max(lateral, 1.5 * abs(im(s.center.zeta)));
  }
  for (const auto& s : region.stabilizer.slabs) lateral = std::max(lateral, 2.0 * s.half_width);
  const double hmax = std::max(1.0, 2.0 * rep.max_radius * rep.max_radius);

  CounterRng rng{seed};
  const int dim = field_dim(spec.field);
  auto sample_point = [&](int i) {
    std::uint64_t idx = static_cast<std::uint64_t>(i) * 64;
    ModuleVector v = ModuleVector::zero(spec.field, spec.n - 1);
    for (auto& s : v.e)
      for (int c = 0; c < dim; ++c) s.c[static_cast<std::size_t>(c)] = rng.symmetric(idx++, lateral);
    Scalar zeta = Scalar::zero(spec.field);
    for (int c = 1; c < dim; ++c) zeta.c[static_cast<std::size_t>(c)] = rng.symmetric(idx++, lateral);
    zeta.c[0] = 0.5 * v.norm2() + 1e-6 + rng.uniform(idx++) * hmax;
    return HPoint::interior(zeta, v);
  };

  // Disjointness on strictly interior samples.
  std::vector<std::uint8_t> inside(static_cast<std::size_t>(samples), 0);
  parallel_for(samples, [&](int i) {
    inside[static_cast<std::size_t>(i)] =
        region_contains(region, sample_point(i), tol).status == Membership::Inside ? 1 : 0;
  });
  std::vector<WordElement> translates = en.elements;
  translates.insert(translates.end(), en.stabilizer.begin(), en.stabilizer.end());
  std::vector<std::string> violation(static_cast<std::size_t>(samples));
  parallel_for(samples, [&](int i) {
    if (!inside[static_cast<std::size_t>(i)]) return;
    const HPoint z = sample_point(i);
    for (const auto& g : translates) {
      const HPoint gz = act(g.mat, z);
      if (region_contains(region, gz, tol).status == Membership::Inside) {
        violation[static_cast<std::size_t>(i)] = g.word;
        return;
      }
    }
  });
  for (int i = 0; i < samples; ++i) {
    if (inside[static_cast<std::size_t>(i)]) ++rep.inside_samples;
    if (!violation[static_cast<std::size_t>(i)].empty()) {
      ++rep.disjointness_total;
      if (rep.disjointness_violations.size() < 32)
        rep.disjointness_violations.push_back({violation[static_cast<std::size_t>(i)], sample_point(i)});
    }
  }

  // Covering by reduction.
  std::vector<std::uint8_t> covered(static_cast<std::size_t>(samples), 0);
  if (region.has_matrices) {
    parallel_for(samples, [&](int i) {
      try {
        reduce_to_region(region, sample_point(i), budget, tol);
        covered[static_cast<std::size_t>(i)] = 1;
      } catch (const BudgetExhausted&) {
        covered[static_cast<std::size_t>(i)] = 0;
      }
    });
    rep.covering_attempts = samples;
    for (int i = 0; i < samples; ++i) {
      if (covered[static_cast<std::size_t>(i)]) continue;
      ++rep.covering_failures;
      if (rep.covering_witnesses.size() < 32) rep.covering_witnesses.push_back({"", sample_point(i)});
    }
  }

  rep.pass = rep.disjointness_total == 0 && rep.covering_failures == 0;
  return rep;
}

}  // namespace rank1
