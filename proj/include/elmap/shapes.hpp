#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "elmap/trajectory.hpp"
#include "elmap/types.hpp"

namespace elmap {
namespace detail {

/// Samples a polyline through the given vertices at uniform arc length.
inline Matrix sample_polyline(const Matrix& vertices, Index t) {
  Vector cumulative(vertices.rows());
  cumulative[0] = 0.0;
  for (Index i = 1; i < vertices.rows(); ++i)
    cumulative[i] = cumulative[i - 1] +
                    (vertices.row(i) - vertices.row(i - 1)).norm();
  const double total = cumulative[vertices.rows() - 1];
  Matrix out(t, vertices.cols());
  Index seg = 0;
  for (Index k = 0; k < t; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(t - 1);
    while (seg + 2 < vertices.rows() && cumulative[seg + 1] < target) ++seg;
    const double len = cumulative[seg + 1] - cumulative[seg];
    const double frac = len > 0.0 ? (target - cumulative[seg]) / len : 0.0;
    out.row(k) = (1.0 - frac) * vertices.row(seg) + frac * vertices.row(seg + 1);
  }
  out.row(0) = vertices.row(0);
  out.row(t - 1) = vertices.row(vertices.rows() - 1);
  return out;
}

}  // namespace detail

/// Straight diagonal segment.
inline Trajectory shape_line(Index t = 1000) {
  if (t < 2) throw std::invalid_argument("shape_line: need T >= 2");
  Matrix pts(t, 2);
  for (Index k = 0; k < t; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(t - 1);
    pts(k, 0) = u;
    pts(k, 1) = u;
  }
  return Trajectory(std::move(pts));
}

/// Smooth sigmoid S shape.
inline Trajectory shape_s_curve(Index t = 1000) {
  if (t < 2) throw std::invalid_argument("shape_s_curve: need T >= 2");
  Matrix pts(t, 2);
  for (Index k = 0; k < t; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(t - 1);
    pts(k, 0) = u;
    pts(k, 1) = 1.0 / (1.0 + std::exp(-12.0 * (u - 0.5)));
  }
  return Trajectory(std::move(pts));
}

/// Two-period square wave sampled along its arc length.
inline Trajectory shape_square_wave(Index t = 1000) {
  if (t < 2) throw std::invalid_argument("shape_square_wave: need T >= 2");
  Matrix vertices(9, 2);
  vertices << 0.00, 0.0, 0.00, 1.0, 0.25, 1.0, 0.25, 0.0, 0.50, 0.0,
      0.50, 1.0, 0.75, 1.0, 0.75, 0.0, 1.00, 0.0;
  return Trajectory(detail::sample_polyline(vertices, t));
}

/// Archimedean spiral, two turns, sampled uniformly in angle so the point
/// density varies along the curve.
inline Trajectory shape_spiral(Index t = 1000) {
  if (t < 2) throw std::invalid_argument("shape_spiral: need T >= 2");
  Matrix pts(t, 2);
  const double theta_max = 4.0 * M_PI;
  for (Index k = 0; k < t; ++k) {
    const double theta = theta_max * static_cast<double>(k) / static_cast<double>(t - 1);
    const double r = theta / theta_max;
    pts(k, 0) = r * std::cos(theta);
    pts(k, 1) = r * std::sin(theta);
  }
  return Trajectory(std::move(pts));
}

/// L path with one sharp corner.
inline Trajectory shape_sharp_l(Index t = 1000) {
  if (t < 2) throw std::invalid_argument("shape_sharp_l: need T >= 2");
  Matrix vertices(3, 2);
  vertices << 0.0, 0.0, 1.0, 0.0, 1.0, 1.0;
  return Trajectory(detail::sample_polyline(vertices, t));
}

inline const std::vector<std::string>& bundled_shape_names() {
  static const std::vector<std::string> names = {"line", "s_curve", "square_wave",
                                                 "spiral", "sharp_l"};
  return names;
}

inline Trajectory bundled_shape(const std::string& name, Index t = 1000) {
  if (name == "line") return shape_line(t);
  if (name == "s_curve") return shape_s_curve(t);
  if (name == "square_wave") return shape_square_wave(t);
  if (name == "spiral") return shape_spiral(t);
  if (name == "sharp_l") return shape_sharp_l(t);
  throw std::invalid_argument("unknown bundled shape: " + name);
}

/// The five bundled shapes as single-demonstration sets.
inline std::vector<DemonstrationSet> bundled_corpus(Index t = 1000) {
  std::vector<DemonstrationSet> corpus;
  for (const std::string& name : bundled_shape_names())
    corpus.emplace_back(std::vector<Trajectory>{bundled_shape(name, t)});
  return corpus;
}

}  // namespace elmap
