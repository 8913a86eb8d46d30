#include "rank1/json_io.hpp"

#include <fstream>

namespace rank1 {

json scalar_to_json(const Scalar& s) {
  json a = json::array();
  for (int k = 0; k < field_dim(s.field); ++k) a.push_back(s.c[static_cast<std::size_t>(k)]);
  return a;
}

Scalar scalar_from_json(const json& j, Field f) {
  if (!j.is_array() || static_cast<int>(j.size()) != field_dim(f))
    throw SpecError("scalar over " + std::string(field_tag(f)) + " needs " +
                    std::to_string(field_dim(f)) + " coefficients");
  Scalar s = Scalar::zero(f);
  for (int k = 0; k < field_dim(f); ++k) {
    if (!j[static_cast<std::size_t>(k)].is_number()) throw SpecError("scalar coefficient is not a number");
    s.c[static_cast<std::size_t>(k)] = j[static_cast<std::size_t>(k)].get<double>();
  }
  return s;
}

json point_to_json(const HPoint& z) {
  if (z.is_infinity()) return json("infinity");
  json v = json::array();
  for (const auto& s : z.v.e) v.push_back(scalar_to_json(s));
  return json{{"zeta", scalar_to_json(z.zeta)}, {"v", v}};
}

HPoint point_from_json(const json& j, Field f, int n, double tol) {
  if (j.is_string()) {
    if (j.get<std::string>() == "infinity") return HPoint::infinity(f, n);
    throw SpecError("unknown point literal '" + j.get<std::string>() + "'");
  }
  if (!j.is_object() || !j.contains("zeta") || !j.contains("v"))
    throw SpecError("point needs 'zeta' and 'v'");
  const Scalar zeta = scalar_from_json(j.at("zeta"), f);
  const json& jv = j.at("v");
  if (!jv.is_array() || static_cast<int>(jv.size()) != n - 1)
    throw SpecError("point needs " + std::to_string(n - 1) + " vector entries");
  ModuleVector v = ModuleVector::zero(f, n - 1);
  for (int k = 0; k < n - 1; ++k) v.e[static_cast<std::size_t>(k)] = scalar_from_json(jv[static_cast<std::size_t>(k)], f);
  return make_h_point(zeta, v, tol);
}

json matrix_to_json(const MatrixLift& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return json{{"convention", "row-right"}, {"entries", rows}};
}

MatrixLift matrix_from_json(const json& j, Field f, int n) {
  if (!j.is_object() || !j.contains("entries")) throw SpecError("matrix needs 'entries'");
  if (j.contains("convention") && j.at("convention").get<std::string>() != "row-right")
    throw SpecError("unsupported matrix convention '" +
                    j.at("convention").get<std::string>() + "' (expected row-right)");
  const json& rows = j.at("entries");
  const int d = n + 1;
  if (!rows.is_array() || static_cast<int>(rows.size()) != d)
    throw SpecError("matrix needs " + std::to_string(d) + " rows");
  MatrixLift m(f, n);
  for (int i = 0; i < d; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw SpecError("matrix row " + std::to_string(i) + " needs " + std::to_string(d) +
                      " entries");
    for (int k = 0; k < d; ++k) m.at(i, k) = scalar_from_json(row[static_cast<std::size_t>(k)], f);
  }
  return m;
}

json spec_to_json(const GroupSpec& spec) {
  json gens = json::array();
  for (std::size_t i = 0; i < spec.generators.size(); ++i)
    gens.push_back(json{{"label", spec.labels[i]}, {"matrix", matrix_to_json(spec.generators[i])}});
  return json{{"field", field_tag(spec.field)},
              {"n", spec.n},
              {"generators", gens},
              {"stabilizer_labels", spec.stabilizer_labels},
              {"word_length", spec.word_length},
              {"min_radius", spec.min_radius},
              {"dedup_quantum", spec.dedup_quantum},
              {"seed", spec.seed}};
}

GroupSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw SpecError("group spec must be an object");
  GroupSpec spec;
  try {
    spec.field = field_from_tag(j.at("field").get<std::string>());
    spec.n = j.at("n").get<int>();
    if (spec.n < 2) throw SpecError("spec needs n >= 2");
    for (const auto& g : j.at("generators")) {
      spec.labels.push_back(g.at("label").get<std::string>());
      spec.generators.push_back(matrix_from_json(g.at("matrix"), spec.field, spec.n));
    }
    if (j.contains("stabilizer_labels"))
      spec.stabilizer_labels = j.at("stabilizer_labels").get<std::vector<std::string>>();
    if (j.contains("word_length")) spec.word_length = j.at("word_length").get<int>();
    if (j.contains("min_radius")) spec.min_radius = j.at("min_radius").get<double>();
    if (j.contains("dedup_quantum")) spec.dedup_quantum = j.at("dedup_quantum").get<double>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed group spec: ") + e.what());
  }
  return spec;
}

GroupSpec spec_from_file(const std::string& path) {
  return spec_from_json(load_json_file(path));
}

json sphere_to_json(const IsometricSphere& s) {
  return json{{"center", point_to_json(s.center)}, {"radius", s.radius}, {"word", s.word}};
}

namespace {

json slab_to_json(const Slab& s) {
  json j{{"label", s.label}, {"axis", s.on_v ? "v" : "z"}, {"half_width", s.half_width}};
  if (s.on_v) {
    json dir = json::array();
    for (const auto& e : s.vdir.e) dir.push_back(scalar_to_json(e));
    j["direction"] = dir;
  } else {
    j["direction"] = scalar_to_json(s.zdir);
  }
  return j;
}

Slab slab_from_json(const json& j, Field f, int n) {
  Slab s;
  s.label = j.at("label").get<std::string>();
  s.half_width = j.at("half_width").get<double>();
  s.on_v = j.at("axis").get<std::string>() == "v";
  if (s.on_v) {
    const json& dir = j.at("direction");
    if (static_cast<int>(dir.size()) != n - 1) throw SpecError("slab direction has wrong length");
    s.vdir = ModuleVector::zero(f, n - 1);
    for (int k = 0; k < n - 1; ++k) s.vdir.e[static_cast<std::size_t>(k)] = scalar_from_json(dir[static_cast<std::size_t>(k)], f);
    s.zdir = Scalar::zero(f);
  } else {
    s.vdir = ModuleVector::zero(f, n - 1);
    s.zdir = scalar_from_json(j.at("direction"), f);
  }
  return s;
}

}  // namespace

json region_to_json(const FordRegion& region) {
  json spheres = json::array();
  for (const auto& s : region.spheres) spheres.push_back(sphere_to_json(s));
  json stab;
  if (region.stabilizer.kind == StabilizerDomain::Kind::WholeSpace) {
    stab = json{{"kind", "whole-space"}};
  } else {
    json slabs = json::array();
    for (const auto& s : region.stabilizer.slabs) slabs.push_back(slab_to_json(s));
    stab = json{{"kind", "slab"}, {"slabs", slabs}};
  }
  return json{{"field", field_tag(region.field)},
              {"n", region.n},
              {"spheres", spheres},
              {"stabilizer", stab},
              {"truncation",
               json{{"word_length", region.truncation.word_length},
                    {"min_radius", region.truncation.min_radius},
                    {"dedup_quantum", region.truncation.dedup_quantum},
                    {"discarded_small", region.truncation.discarded_small},
                    {"element_count", region.truncation.element_count}}},
              {"empty_warning", region.empty_warning}};
}

FordRegion region_from_json(const json& j) {
  FordRegion region;
  try {
    region.field = field_from_tag(j.at("field").get<std::string>());
    region.n = j.at("n").get<int>();
    for (const auto& js : j.at("spheres")) {
      IsometricSphere s;
      s.center = point_from_json(js.at("center"), region.field, region.n, 1e-6);
      s.radius = js.at("radius").get<double>();
      s.word = js.at("word").get<std::string>();
      if (s.center.kind != PointKind::Boundary) throw SpecError("sphere center must be a boundary point");
      region.spheres.push_back(std::move(s));
    }
    const json& stab = j.at("stabilizer");
    if (stab.at("kind").get<std::string>() == "slab") {
      region.stabilizer.kind = StabilizerDomain::Kind::Slab;
      for (const auto& js : stab.at("slabs"))
        region.stabilizer.slabs.push_back(slab_from_json(js, region.field, region.n));
    }
    const json& tr = j.at("truncation");
    region.truncation.word_length = tr.at("word_length").get<int>();
    region.truncation.min_radius = tr.at("min_radius").get<double>();
    region.truncation.dedup_quantum = tr.at("dedup_quantum").get<double>();
    region.truncation.discarded_small = tr.at("discarded_small").get<int>();
    region.truncation.element_count = tr.at("element_count").get<int>();
    region.empty_warning = j.at("empty_warning").get<bool>();
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed region: ") + e.what());
  }
  region.has_matrices = false;
  return region;
}

json verify_report_to_json(const VerifyReport& rep) {
  json dw = json::array();
  for (const auto& w : rep.disjointness_violations)
    dw.push_back(json{{"word", w.word}, {"point", point_to_json(w.point)}});
  json cw = json::array();
  for (const auto& w : rep.covering_witnesses) cw.push_back(json{{"point", point_to_json(w.point)}});
  json counts = json::array();
  for (const auto& [thr, count] : rep.radius_counts)
    counts.push_back(json{{"above", thr}, {"count", count}});
  return json{{"samples", rep.samples},
              {"seed", rep.seed},
              {"inside_samples", rep.inside_samples},
              {"disjointness", json{{"violations", rep.disjointness_total}, {"witnesses", dw}}},
              {"covering", json{{"attempts", rep.covering_attempts},
                                {"failures", rep.covering_failures},
                                {"witnesses", cw}}},
              {"radius_stats", json{{"max_radius", rep.max_radius}, {"counts", counts}}},
              {"empty_region", rep.empty_region},
              {"assumptions",
               json::array({"infinity is an ordinary point of the group (declared, not certified)",
                            "slab stabilizer domains satisfy the closure compatibility of the "
                            "region construction"})},
              {"pass", rep.pass}};
}

json h_type_to_json(const HTypeData& data) {
  json maps = json::array();
  for (const auto& m : data.J) maps.push_back(m);
  return json{{"dim_z", data.dim_z}, {"dim_v", data.dim_v}, {"J", maps}};
}

HTypeData h_type_from_json(const json& j) {
  HTypeData data;
  try {
    data.dim_z = j.at("dim_z").get<int>();
    data.dim_v = j.at("dim_v").get<int>();
    for (const auto& m : j.at("J")) data.J.push_back(m.get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed structure data: ") + e.what());
  }
  data.validate_shape();
  return data;
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(what + ": " + e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open '" + path + "'");
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::parse_error& e) {
    throw SpecError("parse error in '" + path + "': " + e.what());
  }
}

}  // namespace rank1
