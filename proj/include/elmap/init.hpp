#pragma once

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "elmap/trajectory.hpp"
#include "elmap/types.hpp"

namespace elmap {

enum class InitMethod { Naive, Distance, DouglasPeucker };

inline const char* to_string(InitMethod method) {
  switch (method) {
    case InitMethod::Naive: return "naive";
    case InitMethod::Distance: return "distance";
    case InitMethod::DouglasPeucker: return "dp";
  }
  return "?";
}

inline InitMethod parse_init_method(const std::string& name) {
  if (name == "naive") return InitMethod::Naive;
  if (name == "distance") return InitMethod::Distance;
  if (name == "dp" || name == "douglas_peucker") return InitMethod::DouglasPeucker;
  throw std::invalid_argument("unknown init method: " + name);
}

namespace detail {

inline void check_node_count(Index n, Index m) {
  if (n < 2) throw std::invalid_argument("downsample: N must be >= 2");
  if (n > m) throw std::invalid_argument("downsample: N exceeds data size");
}

/// Distance from point p to the segment [a, b].
inline double point_segment_distance(const Eigen::RowVectorXd& p,
                                     const Eigen::RowVectorXd& a,
                                     const Eigen::RowVectorXd& b) {
  const Eigen::RowVectorXd ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 <= 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

/// Min distance from point index j to the polyline through the selected
/// data indices (in index order).
inline double point_polyline_distance(const Matrix& pts, Index j,
                                      const std::vector<Index>& selected) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t s = 0; s + 1 < selected.size(); ++s) {
    best = std::min(best, point_segment_distance(pts.row(j), pts.row(selected[s]),
                                                 pts.row(selected[s + 1])));
  }
  return best;
}

}  // namespace detail

/// Picks data points at rounded uniform index positions k*(M-1)/(N-1);
/// the first and last data points are always included.
inline Matrix naive_downsample(const StackedData& data, Index n) {
  const Index m = data.size();
  detail::check_node_count(n, m);
  Matrix nodes(n, data.dim());
  const double stride = static_cast<double>(m - 1) / static_cast<double>(n - 1);
  for (Index k = 0; k < n; ++k) {
    const Index idx = static_cast<Index>(std::llround(static_cast<double>(k) * stride));
    nodes.row(k) = data.points.row(std::clamp<Index>(idx, 0, m - 1));
  }
  nodes.row(0) = data.points.row(0);
  nodes.row(n - 1) = data.points.row(m - 1);
  return nodes;
}

/// Picks N data points at arc-length positions k*L/(N-1) along the data
/// polyline, each snapped to the nearest sample at or before that position.
inline Matrix distance_downsample(const StackedData& data, Index n) {
  const Index m = data.size();
  detail::check_node_count(n, m);
  Vector cumulative(m);
  cumulative[0] = 0.0;
  for (Index i = 1; i < m; ++i)
    cumulative[i] = cumulative[i - 1] +
                    (data.points.row(i) - data.points.row(i - 1)).norm();
  const double total = cumulative[m - 1];
  if (total <= 0.0)
    throw std::invalid_argument("distance_downsample: degenerate data (zero length)");
  Matrix nodes(n, data.dim());
  Index cursor = 0;
  for (Index k = 0; k < n; ++k) {
    const double target =
        static_cast<double>(k) * total / static_cast<double>(n - 1);
    while (cursor + 1 < m && cumulative[cursor + 1] <= target) ++cursor;
    nodes.row(k) = data.points.row(cursor);
  }
  nodes.row(n - 1) = data.points.row(m - 1);
  return nodes;
}

/// Starts from the two endpoints and repeatedly inserts the data point
/// farthest from the current polyline (ties to the earliest index) until
/// exactly N nodes are placed. Output preserves time order and every node
/// is an input data point.
inline Matrix douglas_peucker_downsample(const StackedData& data, Index n) {
  const Index m = data.size();
  detail::check_node_count(n, m);
  std::set<std::vector<double>> distinct;
  for (Index i = 0; i < m; ++i) {
    std::vector<double> row(data.points.row(i).begin(), data.points.row(i).end());
    distinct.insert(std::move(row));
  }
  if (n > static_cast<Index>(distinct.size()))
    throw std::invalid_argument("douglas_peucker_downsample: N exceeds distinct points");

  std::vector<Index> selected = {0, m - 1};
  std::vector<char> taken(static_cast<size_t>(m), 0);
  taken[0] = taken[static_cast<size_t>(m - 1)] = 1;
  while (static_cast<Index>(selected.size()) < n) {
    double best = -1.0;
    Index best_idx = -1;
    for (Index j = 0; j < m; ++j) {
      if (taken[static_cast<size_t>(j)]) continue;
      const double dist = detail::point_polyline_distance(data.points, j, selected);
      if (dist > best) {
        best = dist;
        best_idx = j;
      }
    }
    taken[static_cast<size_t>(best_idx)] = 1;
    selected.insert(std::upper_bound(selected.begin(), selected.end(), best_idx),
                    best_idx);
  }
  Matrix nodes(n, data.dim());
  for (Index k = 0; k < n; ++k) nodes.row(k) = data.points.row(selected[static_cast<size_t>(k)]);
  return nodes;
}

inline Matrix initialize_nodes(const StackedData& data, Index n, InitMethod method) {
  switch (method) {
    case InitMethod::Naive: return naive_downsample(data, n);
    case InitMethod::Distance: return distance_downsample(data, n);
    case InitMethod::DouglasPeucker: return douglas_peucker_downsample(data, n);
  }
  throw std::invalid_argument("initialize_nodes: bad method");
}

}  // namespace elmap
