#include "tdmaxwell/whitney.hpp"

#include "tdmaxwell/errors.hpp"

namespace tdmaxwell {

TetElement::TetElement(const std::array<Point, 4> &v) {
  Eigen::Matrix3d jac;
  jac << v[1] - v[0], v[2] - v[0], v[3] - v[0];
  const double det = jac.determinant();
  if (!(det > 0.0))
    throw InputError("degenerate or negatively oriented tetrahedron");
  volume = det / 6.0;
  // Rows of J^-1 are the gradients of lambda_1..lambda_3.
  const Eigen::Matrix3d inv = jac.inverse();
  for (int i = 0; i < 3; ++i)
    grad_lambda[static_cast<std::size_t>(i) + 1] = inv.row(i).transpose();
  grad_lambda[0] = -(grad_lambda[1] + grad_lambda[2] + grad_lambda[3]);
}

Eigen::Matrix4d TetElement::stiffness() const {
  Eigen::Matrix4d k;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      k(i, j) = volume * grad_lambda[i].dot(grad_lambda[j]);
  return k;
}

namespace {
// int lambda_i lambda_j dV over the tet, divided by the volume.
double lambda_product(int i, int j) { return i == j ? 1.0 / 10.0 : 1.0 / 20.0; }
} // namespace

Eigen::Matrix<double, 6, 6> TetElement::edge_mass() const {
  Eigen::Matrix<double, 6, 6> m;
  for (int k = 0; k < 6; ++k) {
    const int a = kLocalEdges[k][0], b = kLocalEdges[k][1];
    for (int l = 0; l < 6; ++l) {
      const int c = kLocalEdges[l][0], d = kLocalEdges[l][1];
      // (l_a gl_b - l_b gl_a) . (l_c gl_d - l_d gl_c)
      m(k, l) = volume * (grad_lambda[b].dot(grad_lambda[d]) * lambda_product(a, c) -
                          grad_lambda[b].dot(grad_lambda[c]) * lambda_product(a, d) -
                          grad_lambda[a].dot(grad_lambda[d]) * lambda_product(b, c) +
                          grad_lambda[a].dot(grad_lambda[c]) * lambda_product(b, d));
    }
  }
  return m;
}

Point TetElement::edge_curl(int k) const {
  const int a = kLocalEdges[k][0], b = kLocalEdges[k][1];
  return 2.0 * grad_lambda[a].cross(grad_lambda[b]);
}

Point TetElement::edge_value(int k, const Eigen::Vector4d &lambda) const {
  const int a = kLocalEdges[k][0], b = kLocalEdges[k][1];
  return lambda[a] * grad_lambda[b] - lambda[b] * grad_lambda[a];
}

Eigen::Matrix<double, 6, 6> TetElement::curl_curl() const {
  Eigen::Matrix<double, 6, 6> m;
  std::array<Point, 6> curls;
  for (int k = 0; k < 6; ++k)
    curls[k] = edge_curl(k);
  for (int k = 0; k < 6; ++k)
    for (int l = 0; l < 6; ++l)
      m(k, l) = volume * curls[k].dot(curls[l]);
  return m;
}

std::array<Point, 6> TetElement::edge_integrals() const {
  std::array<Point, 6> out;
  for (int k = 0; k < 6; ++k) {
    const int a = kLocalEdges[k][0], b = kLocalEdges[k][1];
    out[k] = 0.25 * volume * (grad_lambda[b] - grad_lambda[a]);
  }
  return out;
}

Eigen::Matrix<double, 6, 4> TetElement::gradient_coupling() const {
  const auto w = edge_integrals();
  Eigen::Matrix<double, 6, 4> g;
  for (int k = 0; k < 6; ++k)
    for (int j = 0; j < 4; ++j)
      g(k, j) = grad_lambda[j].dot(w[k]);
  return g;
}

Point cell_curl(const Mesh &mesh, Index c, const Eigen::VectorXd &edge_values) {
  const TetElement el(mesh.cell_points(c));
  const auto &cell = mesh.cells[static_cast<std::size_t>(c)];
  Point b = Point::Zero();
  for (int k = 0; k < 6; ++k)
    b += cell.edge_signs[k] * edge_values[cell.edges[k]] * el.edge_curl(k);
  return b;
}

Point cell_centroid_value(const Mesh &mesh, Index c, const Eigen::VectorXd &edge_values) {
  const TetElement el(mesh.cell_points(c));
  const auto &cell = mesh.cells[static_cast<std::size_t>(c)];
  const Eigen::Vector4d centroid = Eigen::Vector4d::Constant(0.25);
  Point v = Point::Zero();
  for (int k = 0; k < 6; ++k)
    v += cell.edge_signs[k] * edge_values[cell.edges[k]] * el.edge_value(k, centroid);
  return v;
}

Point cell_gradient(const Mesh &mesh, Index c, const Eigen::VectorXd &node_values) {
  const TetElement el(mesh.cell_points(c));
  const auto &cell = mesh.cells[static_cast<std::size_t>(c)];
  Point g = Point::Zero();
  for (int i = 0; i < 4; ++i)
    g += node_values[cell.nodes[i]] * el.grad_lambda[i];
  return g;
}

} // namespace tdmaxwell
