#include "rank1/render.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

namespace rank1 {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return colors[i % 8];
}

struct Axis {
  bool on_v = true;
  int index = 0;  // flattened real coordinate
};

Axis parse_axis(const std::string& token, Field f, int n) {
  if (token.size() < 2 || (token[0] != 'v' && token[0] != 'z'))
    throw DomainError("bad plane token '" + token + "'");
  Axis a;
  a.on_v = token[0] == 'v';
  a.index = std::stoi(token.substr(1));
  const int limit = a.on_v ? (n - 1) * field_dim(f) : field_dim(f) - 1;
  if (a.index < 0 || a.index >= limit)
    throw DomainError("slice plane outside coordinate range: '" + token + "'");
  return a;
}

// Marching-squares contour of f = 0 over the window, one merged path.
std::string contour_path(const std::function<double(double, double)>& f, double x0, double x1,
                         double y0, double y1, int res, double w, double h) {
  std::vector<double> grid(static_cast<std::size_t>(res + 1) * (res + 1));
  for (int iy = 0; iy <= res; ++iy)
    for (int ix = 0; ix <= res; ++ix) {
      const double x = x0 + (x1 - x0) * ix / res;
      const double y = y0 + (y1 - y0) * iy / res;
      grid[static_cast<std::size_t>(iy) * (res + 1) + ix] = f(x, y);
    }
  auto sx = [&](double x) { return (x - x0) / (x1 - x0) * w; };
  auto sy = [&](double y) { return h - (y - y0) / (y1 - y0) * h; };
  std::string d;
  for (int iy = 0; iy < res; ++iy)
    for (int ix = 0; ix < res; ++ix) {
      const double x_a = x0 + (x1 - x0) * ix / res, x_b = x0 + (x1 - x0) * (ix + 1) / res;
      const double y_a = y0 + (y1 - y0) * iy / res, y_b = y0 + (y1 - y0) * (iy + 1) / res;
      const double v00 = grid[static_cast<std::size_t>(iy) * (res + 1) + ix];
      const double v10 = grid[static_cast<std::size_t>(iy) * (res + 1) + ix + 1];
      const double v01 = grid[static_cast<std::size_t>(iy + 1) * (res + 1) + ix];
      const double v11 = grid[static_cast<std::size_t>(iy + 1) * (res + 1) + ix + 1];
      if (!std::isfinite(v00) || !std::isfinite(v10) || !std::isfinite(v01) || !std::isfinite(v11))
        continue;
      // Edge crossings by linear interpolation.
      std::vector<std::pair<double, double>> pts;
      auto cross = [&](double fa, double fb, double xa, double ya, double xb, double yb) {
        if ((fa < 0) == (fb < 0)) return;
        const double t = fa / (fa - fb);
        pts.emplace_back(xa + t * (xb - xa), ya + t * (yb - ya));
      };
      cross(v00, v10, x_a, y_a, x_b, y_a);
      cross(v10, v11, x_b, y_a, x_b, y_b);
      cross(v01, v11, x_a, y_b, x_b, y_b);
      cross(v00, v01, x_a, y_a, x_a, y_b);
      if (pts.size() >= 2) {
        d += "M" + fmt(sx(pts[0].first)) + " " + fmt(sy(pts[0].second)) + "L" +
             fmt(sx(pts[1].first)) + " " + fmt(sy(pts[1].second));
        if (pts.size() == 4)
          d += "M" + fmt(sx(pts[2].first)) + " " + fmt(sy(pts[2].second)) + "L" +
               fmt(sx(pts[3].first)) + " " + fmt(sy(pts[3].second));
      }
    }
  return d;
}

}  // namespace

std::string render_svg(const FordRegion& region, const RenderOptions& opt) {
  if (opt.resolution < 8 || opt.resolution > 8192)
    throw DomainError("resolution must be between 8 and 8192");
  if (opt.extent <= 0) throw DomainError("extent must be positive");

  std::string plane = opt.plane;
  if (plane == "auto") {
    if (region.field == Field::R && region.n == 2) plane = "dprime";
    else if (field_dim(region.field) > 1) plane = "v0:z0";
    else plane = "v0:v1";
  }

  const double W = 640, H = 640, LEGEND = 20.0 * (static_cast<double>(region.spheres.size()) + 1.0);
  const int res = opt.resolution;
  double x0 = -opt.extent, x1 = opt.extent, y0 = -opt.extent, y1 = opt.extent;

  // Builds, per sphere, the in-plane defect distance-to-center minus radius.
  std::vector<std::function<double(double, double)>> fs;
  std::function<double(const Slab&, double, double)> slab_coord_xy;

  if (plane == "dprime") {
    if (region.field != Field::R || region.n != 2)
      throw DomainError("the dprime plane needs field R with n = 2");
    y0 = opt.extent * 1e-4;  // stay inside the half-space
    y1 = opt.extent;
    auto map_point = [](double x, double y) {
      return d_to_h(nu(y, std::vector<double>{x}));
    };
    for (const auto& s : region.spheres)
      fs.push_back([&s, map_point](double x, double y) {
        return cygan_h(map_point(x, y), s.center) - s.radius;
      });
    slab_coord_xy = [map_point](const Slab& s, double x, double y) {
      return slab_coordinate(s, map_point(x, y));
    };
  } else {
    const auto colon = plane.find(':');
    if (colon == std::string::npos) throw DomainError("plane must be '<a>:<b>' or 'dprime'");
    const Axis ax = parse_axis(plane.substr(0, colon), region.field, region.n);
    const Axis ay = parse_axis(plane.substr(colon + 1), region.field, region.n);
    if (ax.on_v == ay.on_v && ax.index == ay.index) throw DomainError("plane axes coincide");
    const Field f = region.field;
    const int n = region.n;
    const int d = field_dim(f);
    auto map_point = [f, n, d, ax, ay](double x, double y) {
      ModuleVector v = ModuleVector::zero(f, n - 1);
      Scalar zeta = Scalar::zero(f);
      auto put = [&](const Axis& a, double val) {
        if (a.on_v) v.e[static_cast<std::size_t>(a.index / d)].c[static_cast<std::size_t>(a.index % d)] = val;
        else zeta.c[static_cast<std::size_t>(a.index + 1)] = val;
      };
      put(ax, x);
      put(ay, y);
      zeta.c[0] = 0.5 * v.norm2();
      return HPoint::boundary(zeta, v);
    };
    for (const auto& s : region.spheres)
      fs.push_back([&s, map_point](double x, double y) {
        return cygan_h(map_point(x, y), s.center) - s.radius;
      });
    slab_coord_xy = [map_point](const Slab& s, double x, double y) {
      return slab_coordinate(s, map_point(x, y));
    };
  }

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) + "\" height=\"" +
         fmt(H + LEGEND) + "\" viewBox=\"0 0 " + fmt(W) + " " + fmt(H + LEGEND) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt(W) + "\" height=\"" + fmt(H) +
         "\" fill=\"white\" stroke=\"black\"/>\n";

  // Slab band: drawn by scanning each axis for the in-slab interval.
  for (const auto& s : region.stabilizer.slabs) {
    // Detect pure dependence on x or on y by sampling the coordinate map.
    const double cx0 = slab_coord_xy(s, x0, 0.5 * (y0 + y1));
    const double cx1 = slab_coord_xy(s, x1, 0.5 * (y0 + y1));
    const double cy0 = slab_coord_xy(s, 0.5 * (x0 + x1), y0);
    const double cy1 = slab_coord_xy(s, 0.5 * (x0 + x1), y1);
    const bool on_x = std::fabs(cx1 - cx0) > 1e-12;
    const bool on_y = std::fabs(cy1 - cy0) > 1e-12;
    if (on_x == on_y) continue;  // not aligned with an axis; no shading
    auto to_px = [&](double val, double lo, double hi, double size) {
      return (val - lo) / (hi - lo) * size;
    };
    if (on_x) {
      const double slope = (cx1 - cx0) / (x1 - x0);
      const double xa = (-s.half_width - cx0) / slope + x0;
      const double xb = (s.half_width - cx0) / slope + x0;
      const double pa = to_px(std::min(xa, xb), x0, x1, W), pb = to_px(std::max(xa, xb), x0, x1, W);
      svg += "<rect x=\"" + fmt(std::max(0.0, pa)) + "\" y=\"0\" width=\"" +
             fmt(std::min(W, pb) - std::max(0.0, pa)) + "\" height=\"" + fmt(H) +
             "\" fill=\"#c8e6c9\" fill-opacity=\"0.5\"/>\n";
    } else {
      const double slope = (cy1 - cy0) / (y1 - y0);
      const double ya = (-s.half_width - cy0) / slope + y0;
      const double yb = (s.half_width - cy0) / slope + y0;
      const double pa = H - to_px(std::max(ya, yb), y0, y1, H), pb = H - to_px(std::min(ya, yb), y0, y1, H);
      svg += "<rect x=\"0\" y=\"" + fmt(std::max(0.0, pa)) + "\" width=\"" + fmt(W) +
             "\" height=\"" + fmt(std::min(H, pb) - std::max(0.0, pa)) +
             "\" fill=\"#c8e6c9\" fill-opacity=\"0.5\"/>\n";
    }
  }

  for (std::size_t i = 0; i < region.spheres.size(); ++i) {
    const std::string d = contour_path(fs[i], x0, x1, y0, y1, res, W, H);
    if (!d.empty())
      svg += "<path d=\"" + d + "\" stroke=\"" + palette(i) + "\" fill=\"none\" stroke-width=\"1\"/>\n";
  }

  // Legend.
  svg += "<text x=\"6\" y=\"" + fmt(H + 14.0) + "\" font-size=\"12\">plane " + plane +
         ", extent " + fmt(opt.extent) + (region.empty_warning ? ", slab only" : "") + "</text>\n";
  for (std::size_t i = 0; i < region.spheres.size(); ++i) {
    const double ty = H + 14.0 + 20.0 * (static_cast<double>(i) + 1.0);
    svg += "<rect x=\"6\" y=\"" + fmt(ty - 9.0) + "\" width=\"10\" height=\"10\" fill=\"" +
           palette(i) + "\"/>\n";
    svg += "<text x=\"22\" y=\"" + fmt(ty) + "\" font-size=\"12\">" + region.spheres[i].word +
           "  (R " + fmt(region.spheres[i].radius) + ")</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace rank1
