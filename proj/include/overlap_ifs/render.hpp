#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "overlap_ifs/ifs2d.hpp"
#include "overlap_ifs/step_function.hpp"

namespace ifs {

struct SceneTriangle {
  std::array<Eigen::Vector2d, 3> pts;  // euclidean, y up
};

struct Scene {
  double width = 1.0, height = 1.0;
  std::vector<SceneTriangle> attractor;  // level-n cells, light fill
  std::vector<SceneTriangle> overlaps;   // ov(tau^n T), dark fill
  std::vector<SceneTriangle> gaps;       // central gaps, white
};

struct RenderLayers {
  bool attractor = true;
  bool overlaps = true;
  bool gaps = true;
};

struct SvgStyle {
  std::string attractor_fill = "#c9c9c9";
  std::string overlap_fill = "#4a4a4a";
  std::string gap_fill = "#ffffff";
};

void write_svg(std::ostream& os, const Scene& scene, const SvgStyle& style = {});
void write_pgm(std::ostream& os, const Scene& scene, int resolution);
void write_step_svg(std::ostream& os, const StepFunction<double>& f, double x_lo,
                    double x_hi);

namespace detail {

template <class S>
SceneTriangle scene_triangle(const UpTriangle<S>& t) {
  auto v = t.vertices();
  return {{to_euclidean(v[0]), to_euclidean(v[1]), to_euclidean(v[2])}};
}

template <class S>
SceneTriangle scene_triangle(const DownTriangle<S>& t) {
  auto v = t.vertices();
  return {{to_euclidean(v[0]), to_euclidean(v[1]), to_euclidean(v[2])}};
}

template <class S>
DownTriangle<S> map_down(const IFS2D<S>& f, int i, const DownTriangle<S>& t) {
  switch (i) {
    case 0: return {f.lambda * t.hi_s, f.lambda * t.hi_t, f.lambda * t.lo_sum};
    case 1:
      return {f.lambda * (t.hi_s + f.one()), f.lambda * t.hi_t,
              f.lambda * (t.lo_sum + f.one())};
    default:
      return {f.lambda * t.hi_s, f.lambda * (t.hi_t + f.one()),
              f.lambda * (t.lo_sum + f.one())};
  }
}

}  // namespace detail

/// Builds the drawing for depth n: 3^n cells, the level-n overlap set, and
/// the central gaps of levels 0..n-1. Ordering is word-lexicographic
/// throughout, so output is deterministic.
template <class S>
Scene build_scene(const IFS2D<S>& f, int depth, const RenderLayers& layers) {
  f.check_budget(depth, "render");
  Scene scene;
  double b = ScalarOps<S>::to_double(f.support_end());
  scene.width = b;
  scene.height = b * 0.8660254037844386467637231707529362;

  std::vector<UpTriangle<S>> cells{f.envelope()};
  std::vector<std::vector<UpTriangle<S>>> levels{cells};
  for (int k = 0; k < depth; ++k) {
    std::vector<UpTriangle<S>> next;
    next.reserve(cells.size() * 3);
    for (int i = 0; i < 3; ++i)
      for (const auto& c : levels.back()) next.push_back(f.tau(i, c));
    levels.push_back(next);
  }

  if (layers.attractor)
    for (const auto& c : levels.back()) scene.attractor.push_back(detail::scene_triangle(c));

  if (layers.overlaps && depth >= 1) {
    TriangleUnion<S> ov = overlap_level(f, depth);
    for (const auto& t : ov.triangles) scene.overlaps.push_back(detail::scene_triangle(t));
  }

  if (layers.gaps && depth >= 1) {
    if (auto g1 = gap_region(f)) {
      std::vector<DownTriangle<S>> gaps{*g1};
      for (int k = 0; k < depth; ++k) {
        for (const auto& g : gaps) scene.gaps.push_back(detail::scene_triangle(g));
        if (k + 1 < depth) {
          std::vector<DownTriangle<S>> next;
          next.reserve(gaps.size() * 3);
          for (int i = 0; i < 3; ++i)
            for (const auto& g : gaps) next.push_back(detail::map_down(f, i, g));
          gaps = std::move(next);
        }
      }
    }
  }
  return scene;
}

}  // namespace ifs
