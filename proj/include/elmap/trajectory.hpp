#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "elmap/types.hpp"

namespace elmap {

/// One demonstration: an ordered sequence of T points of dimension d,
/// stored one point per row. Immutable after construction.
class Trajectory {
 public:
  explicit Trajectory(Matrix points) : points_(std::move(points)) {
    if (points_.rows() < 2)
      throw std::invalid_argument("Trajectory: need at least 2 points");
    if (points_.cols() < 1)
      throw std::invalid_argument("Trajectory: need dimension >= 1");
    if (!points_.allFinite())
      throw std::invalid_argument("Trajectory: non-finite coordinate");
  }

  Index length() const { return points_.rows(); }
  Index dim() const { return points_.cols(); }
  const Matrix& points() const { return points_; }

 private:
  Matrix points_;
};

/// Resamples to exactly t_target points by evaluating the piecewise-linear
/// interpolant at uniform fractional index positions. Endpoints are kept
/// exactly; resampling at the trajectory's own length is the identity.
inline Trajectory resample(const Trajectory& traj, Index t_target) {
  if (t_target < 2)
    throw std::invalid_argument("resample: T_target must be >= 2");
  const Matrix& src = traj.points();
  const Index t = src.rows();
  Matrix out(t_target, src.cols());
  const double step = static_cast<double>(t - 1) / static_cast<double>(t_target - 1);
  for (Index k = 0; k < t_target; ++k) {
    const double pos = static_cast<double>(k) * step;
    const Index lo = std::min<Index>(static_cast<Index>(std::floor(pos)), t - 2);
    const double frac = pos - static_cast<double>(lo);
    out.row(k) = (1.0 - frac) * src.row(lo) + frac * src.row(lo + 1);
  }
  out.row(0) = src.row(0);
  out.row(t_target - 1) = src.row(t - 1);
  return Trajectory(std::move(out));
}

/// A set of m demonstrations sharing the same T and d.
class DemonstrationSet {
 public:
  explicit DemonstrationSet(std::vector<Trajectory> demos)
      : demos_(std::move(demos)) {
    if (demos_.empty())
      throw std::invalid_argument("DemonstrationSet: need at least one demo");
    const Index t = demos_.front().length();
    const Index d = demos_.front().dim();
    for (const Trajectory& demo : demos_) {
      if (demo.length() != t)
        throw std::invalid_argument("DemonstrationSet: mismatched lengths");
      if (demo.dim() != d)
        throw std::invalid_argument("DemonstrationSet: mismatched dimensions");
    }
  }

  /// Builds a set from demos of unequal length by resampling every demo to
  /// the maximum length among them.
  static DemonstrationSet aligned(std::vector<Trajectory> demos) {
    if (demos.empty())
      throw std::invalid_argument("DemonstrationSet: need at least one demo");
    Index t_max = 0;
    for (const Trajectory& demo : demos) t_max = std::max(t_max, demo.length());
    std::vector<Trajectory> out;
    out.reserve(demos.size());
    for (Trajectory& demo : demos) {
      out.push_back(demo.length() == t_max ? std::move(demo)
                                           : resample(demo, t_max));
    }
    return DemonstrationSet(std::move(out));
  }

  Index count() const { return static_cast<Index>(demos_.size()); }
  Index length() const { return demos_.front().length(); }
  Index dim() const { return demos_.front().dim(); }
  const Trajectory& demo(Index i) const { return demos_[static_cast<size_t>(i)]; }
  const std::vector<Trajectory>& demos() const { return demos_; }

  /// Per-timestep mean across demonstrations.
  Matrix mean_trajectory() const {
    Matrix mean = Matrix::Zero(length(), dim());
    for (const Trajectory& demo : demos_) mean += demo.points();
    return mean / static_cast<double>(demos_.size());
  }

 private:
  std::vector<Trajectory> demos_;
};

/// All demonstration points interleaved in time order with per-point weights:
/// stacked index i holds demo (i mod m) at timestep floor(i / m).
struct StackedData {
  Matrix points;   // M x d
  Vector weights;  // M, non-negative, at least one positive

  StackedData(Matrix pts, Vector w)
      : points(std::move(pts)), weights(std::move(w)) {
    if (points.rows() != weights.size())
      throw std::invalid_argument("StackedData: points/weights size mismatch");
    if (points.rows() == 0)
      throw std::invalid_argument("StackedData: empty");
    if (!points.allFinite() || !weights.allFinite())
      throw std::invalid_argument("StackedData: non-finite entry");
    if ((weights.array() < 0.0).any())
      throw std::invalid_argument("StackedData: negative weight");
    if (weights.maxCoeff() <= 0.0)
      throw std::invalid_argument("StackedData: all weights zero");
  }

  Index size() const { return points.rows(); }
  Index dim() const { return points.cols(); }
};

/// Stacks all demonstrations into the time-ordered interleaved vector
/// [x_1^1, x_1^2, ..., x_1^m, x_2^1, ..., x_T^m], all weights 1.
inline StackedData stack(const DemonstrationSet& demos) {
  const Index m = demos.count();
  const Index t = demos.length();
  Matrix points(m * t, demos.dim());
  for (Index j = 0; j < t; ++j)
    for (Index k = 0; k < m; ++k)
      points.row(j * m + k) = demos.demo(k).points().row(j);
  return StackedData(std::move(points), Vector::Ones(m * t));
}

}  // namespace elmap
