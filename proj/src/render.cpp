#include "overlap_ifs/render.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

namespace ifs {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// SVG y axis points down; flip against the scene height
void write_group(std::ostream& os, const std::vector<SceneTriangle>& tris,
                 const char* id, const std::string& fill, double height) {
  os << "  <g id=\"" << id << "\" fill=\"" << fill << "\">\n";
  for (const auto& t : tris) {
    os << "    <polygon points=\"";
    for (int i = 0; i < 3; ++i) {
      if (i) os << ' ';
      os << fmt(t.pts[i].x()) << ',' << fmt(height - t.pts[i].y());
    }
    os << "\"/>\n";
  }
  os << "  </g>\n";
}

}  // namespace

void write_svg(std::ostream& os, const Scene& scene, const SvgStyle& style) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 "
     << fmt(scene.width) << ' ' << fmt(scene.height) << "\">\n";
  write_group(os, scene.attractor, "attractor", style.attractor_fill, scene.height);
  write_group(os, scene.gaps, "gaps", style.gap_fill, scene.height);
  write_group(os, scene.overlaps, "overlaps", style.overlap_fill, scene.height);
  os << "</svg>\n";
}

namespace {

constexpr double kInvSqrt3 = 0.57735026918962576450914878050196;

struct Raster {
  int w, h;
  double scale;      // pixels per unit
  std::vector<unsigned char> px;

  Raster(int res, double width, double height)
      : w(res), h(std::max(1, int(std::lround(res * height / width)))),
        scale(res / width), px(size_t(w) * size_t(h), 255) {}

  void fill(const SceneTriangle& t, unsigned char gray) {
    double min_x = t.pts[0].x(), max_x = min_x, min_y = t.pts[0].y(), max_y = min_y;
    for (int i = 1; i < 3; ++i) {
      min_x = std::min(min_x, t.pts[i].x());
      max_x = std::max(max_x, t.pts[i].x());
      min_y = std::min(min_y, t.pts[i].y());
      max_y = std::max(max_y, t.pts[i].y());
    }
    int x0 = std::max(0, int(std::floor(min_x * scale)));
    int x1 = std::min(w - 1, int(std::ceil(max_x * scale)));
    int y0 = std::max(0, int(std::floor(min_y * scale)));
    int y1 = std::min(h - 1, int(std::ceil(max_y * scale)));
    // half-plane test in sheared coordinates recovered from euclidean
    auto corner = [&](int i) {
      double x = t.pts[i].x(), y = t.pts[i].y();
      return std::pair<double, double>(x - y * kInvSqrt3, 2.0 * y * kInvSqrt3);
    };
    auto [s0, t0] = corner(0);
    auto [s1, t1] = corner(1);
    auto [s2, t2] = corner(2);
    double lo_s = std::min({s0, s1, s2});
    double lo_t = std::min({t0, t1, t2});
    double hi = std::max({s0 + t0, s1 + t1, s2 + t2});
    double hi_s = std::max({s0, s1, s2});
    double hi_t = std::max({t0, t1, t2});
    double lo_sum = std::min({s0 + t0, s1 + t1, s2 + t2});
    // the support triple consistent with the orientation has the smaller side
    bool upright = (hi - lo_s - lo_t) <= (hi_s + hi_t - lo_sum);
    for (int py = y0; py <= y1; ++py) {
      double y = (py + 0.5) / scale;
      for (int pxx = x0; pxx <= x1; ++pxx) {
        double x = (pxx + 0.5) / scale;
        double s = x - y * kInvSqrt3;
        double tt = 2.0 * y * kInvSqrt3;
        bool in = upright ? (s >= lo_s && tt >= lo_t && s + tt <= hi)
                          : (s <= hi_s && tt <= hi_t && s + tt >= lo_sum);
        if (in) px[size_t(h - 1 - py) * size_t(w) + size_t(pxx)] = gray;
      }
    }
  }
};

}  // namespace

void write_pgm(std::ostream& os, const Scene& scene, int resolution) {
  Raster r(resolution, scene.width, scene.height);
  for (const auto& t : scene.attractor) r.fill(t, 200);
  for (const auto& t : scene.gaps) r.fill(t, 255);
  for (const auto& t : scene.overlaps) r.fill(t, 80);
  os << "P5\n" << r.w << ' ' << r.h << "\n255\n";
  os.write(reinterpret_cast<const char*>(r.px.data()), std::streamsize(r.px.size()));
}

void write_step_svg(std::ostream& os, const StepFunction<double>& f, double x_lo,
                    double x_hi) {
  const double W = 640.0, H = 360.0, pad = 24.0;
  auto X = [&](double x) { return pad + (x - x_lo) / (x_hi - x_lo) * (W - 2 * pad); };
  auto Y = [&](double v) { return H - pad - v * (H - 2 * pad); };
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 "
     << W << ' ' << H << "\">\n"
     << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
  const auto& bp = f.breakpoints();
  const auto& vals = f.values();
  os << fmt(X(x_lo)) << ',' << fmt(Y(vals[0]));
  for (size_t i = 0; i < bp.size(); ++i) {
    os << ' ' << fmt(X(bp[i])) << ',' << fmt(Y(vals[i]));
    os << ' ' << fmt(X(bp[i])) << ',' << fmt(Y(vals[i + 1]));
  }
  os << ' ' << fmt(X(x_hi)) << ',' << fmt(Y(vals.back()));
  os << "\"/>\n</svg>\n";
}

}  // namespace ifs
