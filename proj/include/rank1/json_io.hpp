#pragma once

#include <json.hpp>

#include "rank1/ford.hpp"

namespace rank1 {

using json = nlohmann::json;

// Scalars encode as arrays of 1, 2 or 4 reals over the basis (1, i, j, k).
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j, Field f);

// Points: {"zeta": [...], "v": [[...], ...]} or the literal "infinity".
json point_to_json(const HPoint& z);
HPoint point_from_json(const json& j, Field f, int n, double tol = kBoundaryHeightTol);

// Matrices carry their action convention and are validated on load.
json matrix_to_json(const MatrixLift& m);
MatrixLift matrix_from_json(const json& j, Field f, int n);

json spec_to_json(const GroupSpec& spec);
GroupSpec spec_from_json(const json& j);
GroupSpec spec_from_file(const std::string& path);

json sphere_to_json(const IsometricSphere& s);
json region_to_json(const FordRegion& region);
// Loaded regions carry no matrices; membership works, reduction does not.
FordRegion region_from_json(const json& j);

json verify_report_to_json(const VerifyReport& rep);

json h_type_to_json(const HTypeData& data);
HTypeData h_type_from_json(const json& j);

json parse_json_text(const std::string& text, const std::string& what);
json load_json_file(const std::string& path);

}  // namespace rank1
