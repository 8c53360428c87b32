#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "elmap/trajectory.hpp"
#include "elmap/types.hpp"

namespace elmap {

/// Polyline elastic map: N nodes (one per row) joined by implicit edges
/// {y_i, y_i+1} and ribs {y_i, y_i+1, y_i+2}, with constant stretching and
/// bending stiffnesses. lambda, mu >= 0 keeps the energy convex.
struct ElasticMap {
  Matrix nodes;  // N x d
  double lambda = 0.0;
  double mu = 0.0;

  ElasticMap(Matrix node_array, double lambda_, double mu_)
      : nodes(std::move(node_array)), lambda(lambda_), mu(mu_) {
    if (nodes.rows() < 2)
      throw std::invalid_argument("ElasticMap: need at least 2 nodes");
    if (!nodes.allFinite())
      throw std::invalid_argument("ElasticMap: non-finite node");
    if (lambda < 0.0 || mu < 0.0)
      throw std::invalid_argument("ElasticMap: stiffness must be >= 0");
  }

  Index node_count() const { return nodes.rows(); }
  Index dim() const { return nodes.cols(); }
  Index edge_count() const { return nodes.rows() - 1; }
  Index rib_count() const { return nodes.rows() >= 3 ? nodes.rows() - 2 : 0; }
};

/// Assignment of every data point to its Euclidean-nearest node,
/// ties broken toward the lowest node index.
struct Clustering {
  std::vector<Index> assignment;  // size M, values in [0, N)
};

/// Weighted mean squared distance between data points and their cluster
/// nodes, normalized by the total weight.
inline double approximation_energy(const ElasticMap& map,
                                   const StackedData& data,
                                   const Clustering& clusters) {
  if (static_cast<Index>(clusters.assignment.size()) != data.size())
    throw std::invalid_argument("approximation_energy: clustering size mismatch");
  const double total_weight = data.weights.sum();
  if (total_weight <= 0.0)
    throw std::invalid_argument("approximation_energy: all weights zero");
  double acc = 0.0;
  for (Index j = 0; j < data.size(); ++j) {
    const Index i = clusters.assignment[static_cast<size_t>(j)];
    if (i < 0 || i >= map.node_count())
      throw std::invalid_argument("approximation_energy: node index out of range");
    acc += data.weights[j] * (data.points.row(j) - map.nodes.row(i)).squaredNorm();
  }
  return acc / total_weight;
}

/// lambda * sum of squared edge lengths.
inline double stretching_energy(const ElasticMap& map) {
  double acc = 0.0;
  for (Index i = 0; i + 1 < map.node_count(); ++i)
    acc += (map.nodes.row(i + 1) - map.nodes.row(i)).squaredNorm();
  return map.lambda * acc;
}

/// mu * sum of squared second differences over ribs; zero for N < 3.
inline double bending_energy(const ElasticMap& map) {
  double acc = 0.0;
  for (Index i = 0; i + 2 < map.node_count(); ++i)
    acc += (map.nodes.row(i) - 2.0 * map.nodes.row(i + 1) + map.nodes.row(i + 2))
               .squaredNorm();
  return map.mu * acc;
}

inline double total_energy(const ElasticMap& map, const StackedData& data,
                           const Clustering& clusters) {
  return approximation_energy(map, data, clusters) + stretching_energy(map) +
         bending_energy(map);
}

}  // namespace elmap
