#pragma once

#include <string>

#include "rank1/cygan.hpp"
#include "rank1/isometries.hpp"

namespace rank1 {

// Sphere of an isometry not fixing infinity: the locus where its cocycle has
// unit modulus, equivalently the metric sphere around the pullback of
// infinity with radius t^{-1/4}.
struct IsometricSphere {
  HPoint center;       // boundary point g^{-1}(infinity)
  double radius = 1.0;
  std::string word;    // optional label
};

// Radius is computed both from the Bruhat dilation part and from the cocycle
// at infinity; disagreement beyond cross_tol is an internal inconsistency.
IsometricSphere isometric_sphere(const MatrixLift& m, const std::string& word = "",
                                 double cross_tol = 1e-11);
IsometricSphere isometric_sphere(const BruhatIsometry& g, const std::string& word = "",
                                 double cross_tol = 1e-11);

enum class SpherePosition : std::uint8_t { Interior, On, Exterior };

// Distance-to-radius ratio; the On band is |ratio - 1| < band.
double sphere_ratio(const IsometricSphere& s, const HPoint& z);
SpherePosition classify(const IsometricSphere& s, const HPoint& z, double band = 1e-9);

// Cygan distance from z to the sphere center.
double dist_to_center(const IsometricSphere& s, const HPoint& z);

// Height of the image point predicted from the distance-radius ratio alone.
double height_transform(const MatrixLift& m, const HPoint& z);

// Sphere of the conjugated element h g h^{-1} for h fixing infinity.
IsometricSphere conjugate_sphere(const MatrixLift& h_stab, const MatrixLift& g,
                                 const std::string& word = "");

}  // namespace rank1
