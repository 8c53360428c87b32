#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "elmap/emap.hpp"
#include "elmap/trajectory.hpp"
#include "elmap/types.hpp"

namespace elmap {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stiffness matrices derived from the energy gradients: for any node array Y,
/// E*Y is half the stretching-energy gradient and S*Y half the bending one,
/// so Y'EY and Y'SY reproduce the energies as quadratic forms. E is
/// tridiagonal (first-difference stencil accumulated per edge), S is
/// pentadiagonal (second-difference stencil accumulated per rib).
inline std::pair<Matrix, Matrix> build_matrices(Index n, double lambda, double mu) {
  if (n < 2) throw std::invalid_argument("build_matrices: N must be >= 2");
  if (lambda < 0.0 || mu < 0.0)
    throw std::invalid_argument("build_matrices: stiffness must be >= 0");
  Matrix e = Matrix::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) {
    constexpr double stencil[2] = {-1.0, 1.0};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) e(i + a, i + b) += stencil[a] * stencil[b];
  }
  Matrix s = Matrix::Zero(n, n);
  for (Index i = 0; i + 2 < n; ++i) {
    constexpr double stencil[3] = {1.0, -2.0, 1.0};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) s(i + a, i + b) += stencil[a] * stencil[b];
  }
  return {lambda * e, mu * s};
}

/// Expectation step: assign every data point to its Euclidean-nearest node,
/// ties to the lowest node index.
inline Clustering expectation(const StackedData& data, const Matrix& nodes) {
  if (nodes.rows() < 1) throw std::invalid_argument("expectation: empty nodes");
  if (nodes.cols() != data.dim())
    throw std::invalid_argument("expectation: dimension mismatch");
  Clustering clusters;
  clusters.assignment.resize(static_cast<size_t>(data.size()));
  for (Index j = 0; j < data.size(); ++j) {
    Index best = 0;
    double best_dist = (data.points.row(j) - nodes.row(0)).squaredNorm();
    for (Index i = 1; i < nodes.rows(); ++i) {
      const double dist = (data.points.row(j) - nodes.row(i)).squaredNorm();
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    clusters.assignment[static_cast<size_t>(j)] = best;
  }
  return clusters;
}

/// The linear system of one maximization step: A = V/b + E + S with V the
/// diagonal of cluster weight sums, C the weighted cluster centers over b.
struct SystemMatrices {
  Matrix E;        // N x N, tridiagonal
  Matrix S;        // N x N, pentadiagonal
  Vector V_diag;   // cluster weight sums
  Matrix A;        // V/b + E + S
  Matrix C;        // N x d right-hand side
  double b = 0.0;  // total weight
};

inline SystemMatrices assemble_system(const StackedData& data,
                                      const Clustering& clusters,
                                      const Matrix& e_mat, const Matrix& s_mat) {
  const Index n = e_mat.rows();
  if (static_cast<Index>(clusters.assignment.size()) != data.size())
    throw std::invalid_argument("assemble_system: clustering size mismatch");
  SystemMatrices sys;
  sys.E = e_mat;
  sys.S = s_mat;
  sys.b = data.weights.sum();
  sys.V_diag = Vector::Zero(n);
  sys.C = Matrix::Zero(n, data.dim());
  for (Index j = 0; j < data.size(); ++j) {
    const Index i = clusters.assignment[static_cast<size_t>(j)];
    if (i < 0 || i >= n)
      throw std::invalid_argument("assemble_system: node index out of range");
    sys.V_diag[i] += data.weights[j];
    sys.C.row(i) += data.weights[j] * data.points.row(j);
  }
  sys.C /= sys.b;
  sys.A = sys.E + sys.S;
  sys.A.diagonal() += sys.V_diag / sys.b;
  return sys;
}

namespace detail {

constexpr double kResidualBound = 1e-10;

/// Direct symmetric solve of A Y = C with one refinement pass; enforces the
/// residual bound ||A Y - C||_inf <= 1e-10 ||C||_inf.
inline Matrix solve_system(const SystemMatrices& sys) {
  const Eigen::LDLT<Matrix> ldlt(sys.A);
  Matrix y = ldlt.solve(sys.C);
  const double bound = kResidualBound * sys.C.lpNorm<Eigen::Infinity>();
  Matrix residual = sys.C - sys.A * y;
  if (!(residual.lpNorm<Eigen::Infinity>() <= bound)) {
    y += ldlt.solve(residual);
    residual = sys.C - sys.A * y;
  }
  if (!y.allFinite() || !(residual.lpNorm<Eigen::Infinity>() <= bound))
    throw SolverError("maximization: singular or ill-conditioned system");
  return y;
}

}  // namespace detail

/// Maximization step: exact minimizer of the fixed-cluster energy,
/// obtained by solving A Y = C.
inline Matrix maximization(const StackedData& data, const Clustering& clusters,
                           const Matrix& e_mat, const Matrix& s_mat) {
  return detail::solve_system(assemble_system(data, clusters, e_mat, s_mat));
}

struct FitOptions {
  double tolerance = 1e-8;  // relative to the data bounding-box diagonal
  int max_iterations = 200;
};

struct FitReport {
  int iterations = 0;
  std::vector<double> energy_trace;            // one entry per iteration
  std::vector<double> max_displacement_trace;  // max node movement per iteration
  double final_energy = 0.0;
  bool converged = false;
};

struct FitResult {
  Matrix nodes;
  FitReport report;
};

/// EM fit: alternates nearest-node clustering with the exact linear solve
/// until the maximum node displacement drops below tolerance or the
/// iteration cap is reached. A 2-cycle between equal-energy clusterings
/// terminates at the newer (not worse) configuration.
inline FitResult fit(const StackedData& data, Matrix init_nodes, double lambda,
                     double mu, const FitOptions& opts = {}) {
  if (init_nodes.rows() < 2)
    throw std::invalid_argument("fit: need at least 2 initial nodes");
  if (init_nodes.cols() != data.dim())
    throw std::invalid_argument("fit: node/data dimension mismatch");
  if (!(opts.tolerance > 0.0)) throw std::invalid_argument("fit: tolerance must be > 0");
  if (opts.max_iterations < 1)
    throw std::invalid_argument("fit: max_iterations must be >= 1");

  const auto [e_mat, s_mat] = build_matrices(init_nodes.rows(), lambda, mu);
  const double tol_abs = opts.tolerance * bounding_box_diagonal(data.points);

  FitResult result;
  result.nodes = std::move(init_nodes);
  Matrix previous = result.nodes;
  Matrix before_previous;

  for (int it = 0; it < opts.max_iterations; ++it) {
    const Clustering clusters = expectation(data, result.nodes);
    Matrix updated = maximization(data, clusters, e_mat, s_mat);

    const double displacement =
        (updated - result.nodes).rowwise().norm().maxCoeff();
    const double energy =
        total_energy(ElasticMap(updated, lambda, mu), data, clusters);
    result.report.energy_trace.push_back(energy);
    result.report.max_displacement_trace.push_back(displacement);
    ++result.report.iterations;

    before_previous = std::move(previous);
    previous = result.nodes;
    result.nodes = std::move(updated);

    if (displacement <= tol_abs) {
      result.report.converged = true;
      break;
    }
    // Alternating between two clusterings of equal energy.
    if (it >= 1 &&
        (result.nodes - before_previous).rowwise().norm().maxCoeff() <= tol_abs) {
      result.report.converged = true;
      break;
    }
  }
  result.report.final_energy = result.report.energy_trace.back();
  return result;
}

}  // namespace elmap
