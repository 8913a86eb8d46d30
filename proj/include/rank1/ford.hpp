#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rank1/spheres.hpp"

namespace rank1 {

// Tolerances threaded through validation, classification and reduction.
struct Tolerances {
  double boundary_height = 1e-9;  // interior/boundary classification
  double sphere_band = 1e-9;      // |ratio - 1| band counted as "on"
  double q_residual = 1e-10;      // generator form-invariance at load
  double structure = 1e-8;        // Bruhat residual block checks
};

struct GroupSpec {
  Field field = Field::R;
  int n = 2;
  std::vector<std::string> labels;
  std::vector<MatrixLift> generators;           // parallel to labels
  std::vector<std::string> stabilizer_labels;   // declared to fix infinity
  int word_length = 6;
  double min_radius = 1e-4;
  double dedup_quantum = 1e-8;
  std::uint64_t seed = 0;

  void validate(const Tolerances& tol = {}) const;
};

struct WordElement {
  std::string word;
  int length = 0;
  MatrixLift mat;
};

struct Enumeration {
  std::vector<WordElement> elements;    // not fixing infinity, sorted by (length, word)
  std::vector<WordElement> stabilizer;  // fixing infinity, identity excluded
  int identity_hits = 0;                // words that collapsed to the identity
  int duplicate_hits = 0;               // words merged by the probe fingerprint
};

// Breadth-first walk over reduced words up to the spec's word length, merged
// by the quantized action on a fixed probe tuple of three interior points.
Enumeration enumerate_group(const GroupSpec& spec, const Tolerances& tol = {});

// One fundamental slab for a cyclic translation subgroup, described by the
// unit direction it translates along and half of the translation length.
struct Slab {
  std::string label;   // generator the slab came from
  bool on_v = true;    // direction lives in V; otherwise in the vertical part
  ModuleVector vdir;   // unit direction (on_v)
  Scalar zdir;         // unit imaginary direction (!on_v)
  double half_width = 0.0;
};

struct StabilizerDomain {
  enum class Kind : std::uint8_t { WholeSpace, Slab } kind = Kind::WholeSpace;
  std::vector<Slab> slabs;
};

// Signed coordinate of z along the slab direction.
double slab_coordinate(const Slab& s, const HPoint& z);

struct TruncationInfo {
  int word_length = 0;
  double min_radius = 0.0;
  double dedup_quantum = 0.0;
  int discarded_small = 0;   // spheres dropped below min_radius
  int element_count = 0;     // enumerated non-stabilizer elements
};

struct FordRegion {
  Field field = Field::R;
  int n = 2;
  std::vector<IsometricSphere> spheres;
  StabilizerDomain stabilizer;
  TruncationInfo truncation;
  bool empty_warning = false;  // no sphere survived; region is the slab alone

  // Runtime companions, absent when a region was loaded from serialized form:
  // matrices matching `spheres` and the declared stabilizer generators.
  std::vector<MatrixLift> sphere_mats;
  std::vector<std::pair<std::string, MatrixLift>> stab_gens;
  bool has_matrices = false;
};

FordRegion compute_region(const GroupSpec& spec, const Tolerances& tol = {});

enum class Membership : std::uint8_t { Inside, Boundary, Outside };

struct ContainsResult {
  Membership status = Membership::Inside;
  std::string blocking_word;  // set when Outside
};

ContainsResult region_contains(const FordRegion& region, const HPoint& z,
                               const Tolerances& tol = {});

struct ReduceResult {
  std::string word;  // "id" when no move was needed
  HPoint image;
  int steps = 0;
};

// Height-increasing reduction: while z sits strictly inside some retained
// sphere apply that element, interleaved with slab normalization; heights
// never decrease along the trajectory.  Throws BudgetExhausted.
ReduceResult reduce_to_region(const FordRegion& region, const HPoint& z, int budget = 256,
                              const Tolerances& tol = {});

struct Witness {
  std::string word;
  HPoint point;
};

struct VerifyReport {
  int samples = 0;
  std::uint64_t seed = 0;
  // translate-disjointness over sampled interior points of the region
  int inside_samples = 0;
  int disjointness_total = 0;             // violating samples (witnesses capped)
  std::vector<Witness> disjointness_violations;
  // covering by reduction
  int covering_attempts = 0;
  int covering_failures = 0;
  std::vector<Witness> covering_witnesses;
  // radius statistics at the truncation scale
  double max_radius = 0.0;
  std::vector<std::pair<double, int>> radius_counts;  // (threshold, #spheres above)
  bool empty_region = false;
  bool pass = false;
};

VerifyReport verify_region(const GroupSpec& spec, const FordRegion& region, int samples,
                           std::uint64_t seed, int budget = 256, const Tolerances& tol = {});

// Deterministic counter-based generator: value i is a pure function of
// (seed, i), so sampling is reproducible under any work split.
struct CounterRng {
  std::uint64_t seed = 0;
  static std::uint64_t mix(std::uint64_t x);
  double uniform(std::uint64_t idx) const;                   // [0,1)
  double symmetric(std::uint64_t idx, double half) const;    // [-half, half)
};

// Worker cap honoring the FORD_RANK1_THREADS environment variable.
int worker_count();

}  // namespace rank1
