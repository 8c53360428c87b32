#pragma once

#include <Eigen/Dense>

namespace elmap {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Diagonal length of the axis-aligned bounding box of a point set
/// (one point per row). Zero for coincident or empty data.
inline double bounding_box_diagonal(const Matrix& points) {
  if (points.rows() == 0) return 0.0;
  const Vector extent =
      points.colwise().maxCoeff() - points.colwise().minCoeff();
  return extent.norm();
}

}  // namespace elmap
