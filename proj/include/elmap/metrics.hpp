#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "elmap/trajectory.hpp"
#include "elmap/types.hpp"

namespace elmap {

/// Discrete Frechet distance between two polylines (one point per row):
/// the minimum over monotone couplings of the maximum pointwise distance.
inline double discrete_frechet(const Matrix& p, const Matrix& q) {
  const Index a = p.rows();
  const Index b = q.rows();
  if (a < 1 || b < 1) throw std::invalid_argument("discrete_frechet: empty input");
  if (p.cols() != q.cols())
    throw std::invalid_argument("discrete_frechet: dimension mismatch");
  Matrix table(a, b);
  for (Index i = 0; i < a; ++i) {
    for (Index j = 0; j < b; ++j) {
      const double dist = (p.row(i) - q.row(j)).norm();
      if (i == 0 && j == 0) {
        table(i, j) = dist;
      } else if (i == 0) {
        table(i, j) = std::max(table(i, j - 1), dist);
      } else if (j == 0) {
        table(i, j) = std::max(table(i - 1, j), dist);
      } else {
        table(i, j) = std::max(
            std::min({table(i - 1, j), table(i, j - 1), table(i - 1, j - 1)}),
            dist);
      }
    }
  }
  return table(a - 1, b - 1);
}

/// Per-point curvature magnitudes ||P_{j-1} - 2 P_j + P_{j+1}|| at the
/// interior points, as a 1-D trajectory of length |P| - 2.
inline Matrix curvature_signature(const Matrix& p) {
  if (p.rows() < 3)
    throw std::invalid_argument("curvature_signature: need at least 3 points");
  Matrix signature(p.rows() - 2, 1);
  for (Index j = 1; j + 1 < p.rows(); ++j)
    signature(j - 1, 0) = (p.row(j - 1) - 2.0 * p.row(j) + p.row(j + 1)).norm();
  return signature;
}

/// Frechet distance between the curvature signatures of two trajectories.
inline double frechet_curvature(const Matrix& p, const Matrix& q) {
  return discrete_frechet(curvature_signature(p), curvature_signature(q));
}

/// Mean of (1 - cos theta)/2 over the segment directions of both
/// trajectories after resampling to a common length. Zero-length segments
/// contribute the previous index's value (0 at the start).
inline double angular_dissimilarity(const Matrix& p, const Matrix& q,
                                    Index common_length = 100) {
  if (p.rows() < 2 || q.rows() < 2)
    throw std::invalid_argument("angular_dissimilarity: need at least 2 points");
  if (p.cols() != q.cols())
    throw std::invalid_argument("angular_dissimilarity: dimension mismatch");
  if (common_length < 2)
    throw std::invalid_argument("angular_dissimilarity: common length must be >= 2");
  const Matrix rp = resample(Trajectory(p), common_length).points();
  const Matrix rq = resample(Trajectory(q), common_length).points();
  double acc = 0.0;
  double last = 0.0;
  for (Index k = 0; k + 1 < common_length; ++k) {
    const Eigen::RowVectorXd u = rp.row(k + 1) - rp.row(k);
    const Eigen::RowVectorXd v = rq.row(k + 1) - rq.row(k);
    const double nu = u.norm();
    const double nv = v.norm();
    if (nu > 0.0 && nv > 0.0) {
      const double cos_theta = std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
      last = 0.5 * (1.0 - cos_theta);
    }
    acc += last;
  }
  return acc / static_cast<double>(common_length - 1);
}

/// Sum of third-difference magnitudes along the trajectory, using the
/// stencil (-1, 3, -3, 1) on consecutive points.
inline double total_jerk(const Matrix& p) {
  if (p.rows() < 4) throw std::invalid_argument("total_jerk: need at least 4 points");
  double acc = 0.0;
  for (Index j = 0; j + 3 < p.rows(); ++j)
    acc += (-p.row(j) + 3.0 * p.row(j + 1) - 3.0 * p.row(j + 2) + p.row(j + 3))
               .norm();
  return acc;
}

struct MetricReport {
  double frechet = 0.0;
  double frechet_curvature = 0.0;
  double angular = 0.0;
  double total_jerk = 0.0;
  double compute_time = 0.0;  // seconds
};

/// Scores a reproduction against a reference trajectory. Jerk is a property
/// of the reproduction alone; compute_time is supplied by the caller.
inline MetricReport compute_metrics(const Matrix& reproduction,
                                    const Matrix& reference,
                                    double compute_time = 0.0) {
  MetricReport report;
  report.frechet = discrete_frechet(reproduction, reference);
  report.frechet_curvature = frechet_curvature(reproduction, reference);
  report.angular = angular_dissimilarity(reproduction, reference);
  report.total_jerk = total_jerk(reproduction);
  report.compute_time = compute_time;
  return report;
}

}  // namespace elmap
