#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "elmap/trajectory.hpp"
#include "elmap/types.hpp"

namespace elmap {

enum class WeightKind { Uniform, Curvature, Jerk };

struct WeightScheme {
  WeightKind kind = WeightKind::Curvature;
  double h = 1.0;  // uniform weight value, in (0, 1]
};

inline const char* to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::Uniform: return "uniform";
    case WeightKind::Curvature: return "curvature";
    case WeightKind::Jerk: return "jerk";
  }
  return "?";
}

inline WeightKind parse_weight_kind(const std::string& name) {
  if (name == "uniform") return WeightKind::Uniform;
  if (name == "curvature") return WeightKind::Curvature;
  if (name == "jerk") return WeightKind::Jerk;
  throw std::invalid_argument("unknown weighting scheme: " + name);
}

namespace detail {

constexpr double kWeightFloorFactor = 1e-8;

/// Raw per-demo feature magnitudes -> stacked-order weights with boundary
/// copies and a small positive floor so no point has zero pull.
inline Vector interleave_with_floor(const std::vector<Vector>& per_demo) {
  const Index m = static_cast<Index>(per_demo.size());
  const Index t = per_demo.front().size();
  Vector stacked(m * t);
  for (Index j = 0; j < t; ++j)
    for (Index k = 0; k < m; ++k) stacked[j * m + k] = per_demo[static_cast<size_t>(k)][j];
  const double max_raw = stacked.maxCoeff();
  const double floor = max_raw > 0.0 ? kWeightFloorFactor * max_raw : kWeightFloorFactor;
  return stacked.cwiseMax(floor);
}

}  // namespace detail

/// All M weights equal to h, 0 < h <= 1.
inline Vector uniform_weights(Index m, double h) {
  if (!(h > 0.0 && h <= 1.0))
    throw std::invalid_argument("uniform_weights: h must be in (0, 1]");
  if (m < 1) throw std::invalid_argument("uniform_weights: M must be >= 1");
  return Vector::Constant(m, h);
}

/// Per-point second-difference magnitudes, computed within each demo and
/// returned in stacked order. Boundary timesteps copy the nearest interior
/// value; a floor of 1e-8 * max keeps straight segments from losing all pull.
inline Vector curvature_weights(const DemonstrationSet& demos) {
  const Index t = demos.length();
  if (t < 3) throw std::invalid_argument("curvature_weights: need T >= 3");
  std::vector<Vector> per_demo;
  per_demo.reserve(static_cast<size_t>(demos.count()));
  for (const Trajectory& demo : demos.demos()) {
    const Matrix& x = demo.points();
    Vector w(t);
    for (Index j = 1; j + 1 < t; ++j)
      w[j] = (x.row(j - 1) - 2.0 * x.row(j) + x.row(j + 1)).norm();
    w[0] = w[1];
    w[t - 1] = w[t - 2];
    per_demo.push_back(std::move(w));
  }
  return detail::interleave_with_floor(per_demo);
}

/// Per-point jerk magnitudes ||-x_{j-2} + 2x_{j-1} - 2x_{j+1} + x_{j+2}||,
/// stacked order; the two timesteps at each end copy the nearest interior
/// value, same floor rule as curvature_weights.
inline Vector jerk_weights(const DemonstrationSet& demos) {
  const Index t = demos.length();
  if (t < 5) throw std::invalid_argument("jerk_weights: need T >= 5");
  std::vector<Vector> per_demo;
  per_demo.reserve(static_cast<size_t>(demos.count()));
  for (const Trajectory& demo : demos.demos()) {
    const Matrix& x = demo.points();
    Vector w(t);
    for (Index j = 2; j + 2 < t; ++j)
      w[j] = (-x.row(j - 2) + 2.0 * x.row(j - 1) - 2.0 * x.row(j + 1) +
              x.row(j + 2))
                 .norm();
    w[0] = w[1] = w[2];
    w[t - 1] = w[t - 2] = w[t - 3];
    per_demo.push_back(std::move(w));
  }
  return detail::interleave_with_floor(per_demo);
}

inline Vector make_weights(const DemonstrationSet& demos, const WeightScheme& scheme) {
  switch (scheme.kind) {
    case WeightKind::Uniform:
      return uniform_weights(demos.count() * demos.length(), scheme.h);
    case WeightKind::Curvature: return curvature_weights(demos);
    case WeightKind::Jerk: return jerk_weights(demos);
  }
  throw std::invalid_argument("make_weights: bad scheme");
}

/// A point the reproduction must pass through, realized as a weight spike
/// inserted into the stacked data. Position is either fractional progress
/// in [0, 1] or an explicit insertion index; omitted weight defaults to
/// 1e6 * mean of the existing weights.
struct Constraint {
  std::optional<double> fraction;  // exactly one of fraction/index is set
  std::optional<Index> index;
  Vector point;
  std::optional<double> weight;

  static Constraint at_fraction(double f, Vector p, std::optional<double> w = {}) {
    Constraint c;
    c.fraction = f;
    c.point = std::move(p);
    c.weight = w;
    return c;
  }
  static Constraint at_index(Index i, Vector p, std::optional<double> w = {}) {
    Constraint c;
    c.index = i;
    c.point = std::move(p);
    c.weight = w;
    return c;
  }
};

constexpr double kDefaultConstraintWeightFactor = 1e6;

/// Inserts each constraint point at its stacked index with its spike weight.
/// Indices are resolved against the input data; a fraction f maps to
/// round(f * M). Original point order is preserved and M grows by the number
/// of constraints.
inline StackedData apply_constraints(const StackedData& data,
                                     std::span<const Constraint> constraints) {
  const Index m = data.size();
  if (constraints.empty()) return data;
  const double mean_weight = data.weights.mean();

  std::vector<std::pair<Index, const Constraint*>> resolved;
  resolved.reserve(constraints.size());
  for (const Constraint& c : constraints) {
    if (c.fraction.has_value() == c.index.has_value())
      throw std::invalid_argument("Constraint: set exactly one of fraction/index");
    if (c.point.size() != data.dim())
      throw std::invalid_argument("Constraint: point dimension mismatch");
    if (!c.point.allFinite())
      throw std::invalid_argument("Constraint: non-finite point");
    Index at = 0;
    if (c.fraction) {
      if (!(*c.fraction >= 0.0 && *c.fraction <= 1.0))
        throw std::invalid_argument("Constraint: fraction outside [0, 1]");
      at = static_cast<Index>(std::llround(*c.fraction * static_cast<double>(m)));
    } else {
      at = *c.index;
      if (at < 0 || at > m)
        throw std::invalid_argument("Constraint: index out of range");
    }
    if (c.weight && !(*c.weight > 0.0))
      throw std::invalid_argument("Constraint: weight must be > 0");
    resolved.emplace_back(at, &c);
  }
  std::stable_sort(resolved.begin(), resolved.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  const Index m_out = m + static_cast<Index>(resolved.size());
  Matrix points(m_out, data.dim());
  Vector weights(m_out);
  Index src = 0, dst = 0;
  size_t next = 0;
  while (dst < m_out) {
    if (next < resolved.size() && resolved[next].first == src) {
      const Constraint& c = *resolved[next].second;
      points.row(dst) = c.point.transpose();
      weights[dst] = c.weight.value_or(kDefaultConstraintWeightFactor * mean_weight);
      ++next;
    } else {
      points.row(dst) = data.points.row(src);
      weights[dst] = data.weights[src];
      ++src;
    }
    ++dst;
  }
  return StackedData(std::move(points), std::move(weights));
}

}  // namespace elmap
