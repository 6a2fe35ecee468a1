#pragma once

#include "tdmaxwell/mesh.hpp"

#include <Eigen/Dense>

#include <array>

namespace tdmaxwell {

/// Affine tetrahedron data for lowest-order nodal and Whitney edge bases.
/// Element matrices use local edge orientation (kLocalEdges) and unit
/// material coefficient; callers apply edge signs and cell coefficients.
struct TetElement {
  std::array<Point, 4> grad_lambda; ///< gradients of the barycentric coordinates
  double volume = 0.0;

  explicit TetElement(const std::array<Point, 4> &vertices);

  /// int grad(l_i) . grad(l_j)
  Eigen::Matrix4d stiffness() const;
  /// int w_k . w_l
  Eigen::Matrix<double, 6, 6> edge_mass() const;
  /// int curl(w_k) . curl(w_l)
  Eigen::Matrix<double, 6, 6> curl_curl() const;
  /// int grad(l_j) . w_k   (rows: local edges, cols: local nodes)
  Eigen::Matrix<double, 6, 4> gradient_coupling() const;
  /// int w_k   (vector per local edge)
  std::array<Point, 6> edge_integrals() const;

  /// Constant curl of w_k.
  Point edge_curl(int k) const;
  /// w_k at barycentric coordinates `lambda`.
  Point edge_value(int k, const Eigen::Vector4d &lambda) const;
};

/// Per-cell constant field from edge coefficients: sum_k s_k a_{e_k} curl(w_k).
Point cell_curl(const Mesh &mesh, Index cell, const Eigen::VectorXd &edge_values);
/// Edge field evaluated at the cell centroid.
Point cell_centroid_value(const Mesh &mesh, Index cell, const Eigen::VectorXd &edge_values);
/// Constant nodal gradient sum_i u_i grad(l_i).
Point cell_gradient(const Mesh &mesh, Index cell, const Eigen::VectorXd &node_values);

} // namespace tdmaxwell
