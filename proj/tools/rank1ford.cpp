// Command-line front end: validate group specs, compute isometric spheres and
// regions, answer membership and reduction queries, verify regions on samples
// and render 2D slices.
//
// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 budget exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "rank1/json_io.hpp"
#include "rank1/render.hpp"

namespace {

using rank1::json;

struct CommonFlags {
  int word_length = -1;
  double min_radius = -1.0;
  double q_tol = -1.0;
  double sphere_band = -1.0;
  double boundary_tol = -1.0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--word-length", f.word_length, "override the spec's word length");
  cmd->add_option("--min-radius", f.min_radius, "override the spec's sphere radius cutoff");
  cmd->add_option("--q-tol", f.q_tol, "form-invariance residual tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--sphere-band", f.sphere_band, "on-sphere classification band")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--boundary-tol", f.boundary_tol, "boundary height classification tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "sampling seed")->each([&f](const std::string&) { f.seed_set = true; });
}

rank1::Tolerances tolerances_from(const CommonFlags& f) {
  rank1::Tolerances tol;
  if (f.q_tol > 0) tol.q_residual = f.q_tol;
  if (f.sphere_band > 0) tol.sphere_band = f.sphere_band;
  if (f.boundary_tol > 0) tol.boundary_height = f.boundary_tol;
  return tol;
}

rank1::GroupSpec load_spec(const std::string& path, const CommonFlags& f) {
  rank1::GroupSpec spec = rank1::spec_from_file(path);
  if (f.word_length >= 0) spec.word_length = f.word_length;
  if (f.min_radius >= 0) spec.min_radius = f.min_radius;
  if (f.seed_set) spec.seed = f.seed;
  return spec;
}

rank1::HPoint parse_point(const std::string& text, const rank1::GroupSpec& spec,
                          const rank1::Tolerances& tol) {
  const json j = rank1::parse_json_text(text, "point");
  return rank1::point_from_json(j, spec.field, spec.n, tol.boundary_height);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int fail_input(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump(2) << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank-one half-space geometry: isometric spheres and Ford regions"};
  app.require_subcommand(1);

  std::string spec_path, region_path, point_text, out_path, plane = "auto";
  int samples = 1000, budget = 256, resolution = 600;
  double extent = 2.5;
  CommonFlags flags;

  auto* c_validate = app.add_subcommand("validate", "check a group spec file");
  c_validate->add_option("spec", spec_path, "group spec JSON")->required();
  add_common(c_validate, flags);

  auto* c_spheres = app.add_subcommand("spheres", "list isometric spheres of the word ball");
  c_spheres->add_option("spec", spec_path)->required();
  add_common(c_spheres, flags);

  auto* c_region = app.add_subcommand("region", "compute the region");
  c_region->add_option("spec", spec_path)->required();
  add_common(c_region, flags);

  auto* c_contains = app.add_subcommand("contains", "classify a point against the region");
  c_contains->add_option("spec", spec_path, "group spec JSON (computes the region)");
  c_contains->add_option("--region", region_path, "region JSON produced by `region`");
  c_contains->add_option("--point", point_text, "point JSON literal")->required();
  add_common(c_contains, flags);

  auto* c_reduce = app.add_subcommand("reduce", "move a point into the region closure");
  c_reduce->add_option("spec", spec_path)->required();
  c_reduce->add_option("--point", point_text)->required();
  c_reduce->add_option("--budget", budget, "maximum number of moves");
  add_common(c_reduce, flags);

  auto* c_verify = app.add_subcommand("verify", "sample-based region verification");
  c_verify->add_option("spec", spec_path)->required();
  c_verify->add_option("--samples", samples, "sample count");
  c_verify->add_option("--budget", budget, "reduction budget per sample");
  add_common(c_verify, flags);

  auto* c_render = app.add_subcommand("render", "render a 2D slice as SVG");
  c_render->add_option("spec", spec_path)->required();
  c_render->add_option("--out", out_path, "output SVG path")->required();
  c_render->add_option("--plane", plane, "dprime | <a>:<b> with tokens v<k>, z<k>");
  c_render->add_option("--extent", extent, "window half-width");
  c_render->add_option("--resolution", resolution, "grid cells per axis (<= 8192)");
  add_common(c_render, flags);

  CLI11_PARSE(app, argc, argv);
  const rank1::Tolerances tol = tolerances_from(flags);

  try {
    if (c_validate->parsed()) {
      // Parse problems exit 2; semantic failures (form residuals, stabilizer
      // declarations) exit 1 with the per-generator report.
      const rank1::GroupSpec spec = load_spec(spec_path, flags);
      json residuals = json::array();
      for (std::size_t i = 0; i < spec.generators.size(); ++i)
        residuals.push_back(json{{"label", spec.labels[i]},
                                 {"q_residual", rank1::q_residual(spec.generators[i])}});
      try {
        spec.validate(tol);
      } catch (const rank1::SpecError& e) {
        emit(json{{"ok", false}, {"message", e.what()}, {"generators", residuals}});
        return 1;
      }
      emit(json{{"ok", true}, {"generators", residuals}});
      return 0;
    }
    if (c_spheres->parsed()) {
      const rank1::FordRegion region = rank1::compute_region(load_spec(spec_path, flags), tol);
      json out = json::array();
      for (const auto& s : region.spheres) out.push_back(rank1::sphere_to_json(s));
      emit(out);
      return 0;
    }
    if (c_region->parsed()) {
      const rank1::FordRegion region = rank1::compute_region(load_spec(spec_path, flags), tol);
      if (region.empty_warning)
        std::cerr << "warning: no sphere survived enumeration; the region is the stabilizer "
                     "domain alone\n";
      emit(rank1::region_to_json(region));
      return 0;
    }
    if (c_contains->parsed()) {
      rank1::FordRegion region;
      rank1::GroupSpec spec;
      if (!region_path.empty()) {
        region = rank1::region_from_json(rank1::load_json_file(region_path));
        spec.field = region.field;
        spec.n = region.n;
      } else if (!spec_path.empty()) {
        spec = load_spec(spec_path, flags);
        region = rank1::compute_region(spec, tol);
      } else {
        return fail_input("usage", "contains needs a spec or a --region file");
      }
      const rank1::HPoint z = parse_point(point_text, spec, tol);
      const rank1::ContainsResult r = rank1::region_contains(region, z, tol);
      const char* status = r.status == rank1::Membership::Inside
                               ? "Inside"
                               : (r.status == rank1::Membership::Boundary ? "Boundary" : "Outside");
      json out{{"status", status}};
      if (r.status == rank1::Membership::Outside) out["word"] = r.blocking_word;
      emit(out);
      return 0;
    }
    if (c_reduce->parsed()) {
      const rank1::GroupSpec spec = load_spec(spec_path, flags);
      const rank1::FordRegion region = rank1::compute_region(spec, tol);
      const rank1::HPoint z = parse_point(point_text, spec, tol);
      const rank1::ReduceResult r = rank1::reduce_to_region(region, z, budget, tol);
      emit(json{{"word", r.word}, {"image", rank1::point_to_json(r.image)}, {"steps", r.steps}});
      return 0;
    }
    if (c_verify->parsed()) {
      const rank1::GroupSpec spec = load_spec(spec_path, flags);
      const rank1::FordRegion region = rank1::compute_region(spec, tol);
      const std::uint64_t seed = flags.seed_set ? flags.seed : spec.seed;
      const rank1::VerifyReport rep = rank1::verify_region(spec, region, samples, seed, budget, tol);
      emit(rank1::verify_report_to_json(rep));
      return rep.pass ? 0 : 1;
    }
    if (c_render->parsed()) {
      const rank1::FordRegion region = rank1::compute_region(load_spec(spec_path, flags), tol);
      rank1::RenderOptions opt;
      opt.plane = plane;
      opt.extent = extent;
      opt.resolution = resolution;
      const std::string svg = rank1::render_svg(region, opt);
      std::ofstream out(out_path, std::ios::binary);
      if (!out) return fail_input("io", "cannot write '" + out_path + "'");
      out << svg;
      emit(json{{"ok", true}, {"out", out_path}, {"bytes", svg.size()}});
      return 0;
    }
  } catch (const rank1::BudgetExhausted& e) {
    std::cerr << json{{"error", "budget-exhausted"}, {"message", e.what()}}.dump(2) << "\n";
    return 3;
  } catch (const rank1::SpecError& e) {
    return fail_input("spec", e.what());
  } catch (const rank1::Error& e) {
    return fail_input("input", e.what());
  } catch (const std::exception& e) {
    return fail_input("internal", e.what());
  }
  return 0;
}
