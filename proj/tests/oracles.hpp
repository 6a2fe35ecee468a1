#pragma once

// Reference computations for the tests. Nothing here calls the library's
// element routines: gradients come from face cross products, integrals from
// a 4-point quadrature rule, curls from face circulations (Stokes).

#include "tdmaxwell/mesh.hpp"
#include "tdmaxwell/sparse.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <vector>

namespace oracle {

using tdmaxwell::Index;
using tdmaxwell::Point;

struct Tet {
  std::array<Point, 4> p;
  std::array<Point, 4> grad; // gradients of the barycentric coordinates
  double volume = 0.0;

  explicit Tet(const std::array<Point, 4> &pts) : p(pts) {
    volume = std::abs((p[1] - p[0]).dot((p[2] - p[0]).cross(p[3] - p[0]))) / 6.0;
    for (int i = 0; i < 4; ++i) {
      const Point &a = p[(i + 1) % 4];
      const Point &b = p[(i + 2) % 4];
      const Point &c = p[(i + 3) % 4];
      Point n = (b - a).cross(c - a);
      // lambda_i is 1 at p[i] and 0 on the opposite face
      n /= n.dot(p[i] - a);
      grad[i] = n;
    }
  }

  Eigen::Vector4d lambda(const Point &x) const {
    Eigen::Vector4d l;
    for (int i = 0; i < 4; ++i)
      l[i] = 1.0 + grad[i].dot(x - p[i]);
    return l;
  }

  /// Degree-2 rule: 4 points, equal weights.
  std::array<Point, 4> quad_points() const {
    const double a = 0.5854101966249685, b = 0.1381966011250105;
    std::array<Point, 4> q;
    for (int i = 0; i < 4; ++i) {
      q[i] = Point::Zero();
      for (int j = 0; j < 4; ++j)
        q[i] += (i == j ? a : b) * p[j];
    }
    return q;
  }

  /// Whitney function of the oriented vertex pair (i -> j) at x.
  Point whitney(int i, int j, const Point &x) const {
    const auto l = lambda(x);
    return l[i] * grad[j] - l[j] * grad[i];
  }

  /// Constant curl of the Whitney function (i -> j) from its circulation
  /// around three faces: curl . area_f = sum of the edge's circulation on f.
  Point whitney_curl(int i, int j) const {
    Eigen::Matrix3d areas;
    Eigen::Vector3d circ;
    int row = 0;
    for (int f = 0; f < 4 && row < 3; ++f) {
      // face opposite vertex f, vertices in increasing local order
      std::array<int, 3> v;
      int k = 0;
      for (int m = 0; m < 4; ++m)
        if (m != f)
          v[k++] = m;
      const Point area = 0.5 * (p[v[1]] - p[v[0]]).cross(p[v[2]] - p[v[0]]);
      // boundary loop v0 -> v1 -> v2 -> v0; each Whitney function has unit
      // circulation along its own edge and zero along the others
      double c = 0.0;
      const std::array<std::array<int, 2>, 3> loop{{{v[0], v[1]}, {v[1], v[2]}, {v[2], v[0]}}};
      for (const auto &e : loop) {
        if (e[0] == i && e[1] == j)
          c += 1.0;
        else if (e[0] == j && e[1] == i)
          c -= 1.0;
      }
      areas.row(row) = area.transpose();
      circ[row] = c;
      ++row;
    }
    return areas.fullPivLu().solve(circ);
  }
};

/// Dense oracle matrices for one tet, local vertex numbering, edge pairs in
/// the given order (each pair oriented first -> second).
struct TetMatrices {
  Eigen::MatrixXd stiff, mass, curl, grad_coupling;
};

inline TetMatrices tet_matrices(const Tet &t, const std::vector<std::array<int, 2>> &pairs) {
  const auto n = static_cast<Eigen::Index>(pairs.size());
  TetMatrices m;
  m.stiff = Eigen::MatrixXd::Zero(4, 4);
  m.mass = Eigen::MatrixXd::Zero(n, n);
  m.curl = Eigen::MatrixXd::Zero(n, n);
  m.grad_coupling = Eigen::MatrixXd::Zero(n, 4);
  const auto q = t.quad_points();
  const double w = t.volume / 4.0;
  for (const auto &x : q) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        m.stiff(i, j) += w * t.grad[i].dot(t.grad[j]);
    for (Eigen::Index a = 0; a < n; ++a) {
      const Point wa = t.whitney(pairs[a][0], pairs[a][1], x);
      for (Eigen::Index b = 0; b < n; ++b)
        m.mass(a, b) += w * wa.dot(t.whitney(pairs[b][0], pairs[b][1], x));
      for (int j = 0; j < 4; ++j)
        m.grad_coupling(a, j) += w * wa.dot(t.grad[j]);
    }
  }
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      m.curl(a, b) = t.volume * t.whitney_curl(pairs[a][0], pairs[a][1])
                                    .dot(t.whitney_curl(pairs[b][0], pairs[b][1]));
  return m;
}

/// Naive dense global matrices with cell coefficients; edges oriented
/// low -> high node id, located by a linear search over the edge table.
struct GlobalMatrices {
  Eigen::MatrixXd stiff, mass, curl, grad_coupling;
};

inline Index find_edge_linear(const tdmaxwell::Mesh &mesh, Index a, Index b) {
  if (a > b)
    std::swap(a, b);
  for (Index e = 0; e < mesh.num_edges(); ++e)
    if (mesh.edges[static_cast<std::size_t>(e)][0] == a &&
        mesh.edges[static_cast<std::size_t>(e)][1] == b)
      return e;
  return -1;
}

inline GlobalMatrices global_matrices(const tdmaxwell::Mesh &mesh, const std::vector<double> &coeff) {
  const Index nn = mesh.num_nodes(), ne = mesh.num_edges();
  GlobalMatrices g;
  g.stiff = Eigen::MatrixXd::Zero(nn, nn);
  g.mass = Eigen::MatrixXd::Zero(ne, ne);
  g.curl = Eigen::MatrixXd::Zero(ne, ne);
  g.grad_coupling = Eigen::MatrixXd::Zero(ne, nn);
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const auto &nodes = mesh.cells[static_cast<std::size_t>(c)].nodes;
    std::array<Point, 4> pts;
    for (int i = 0; i < 4; ++i)
      pts[i] = mesh.nodes[static_cast<std::size_t>(nodes[i])];
    const Tet t(pts);
    std::vector<std::array<int, 2>> pairs;
    std::vector<Index> ids;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        // orient by global node id
        if (nodes[i] < nodes[j])
          pairs.push_back({i, j});
        else
          pairs.push_back({j, i});
        ids.push_back(find_edge_linear(mesh, nodes[i], nodes[j]));
      }
    const auto m = tet_matrices(t, pairs);
    const double k = coeff[static_cast<std::size_t>(c)];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        g.stiff(nodes[i], nodes[j]) += k * m.stiff(i, j);
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        g.mass(ids[a], ids[b]) += k * m.mass(a, b);
        g.curl(ids[a], ids[b]) += k * m.curl(a, b);
      }
      for (int j = 0; j < 4; ++j)
        g.grad_coupling(ids[a], nodes[j]) += k * m.grad_coupling(a, j);
    }
  }
  return g;
}

/// max |A - B| / max(max |B|, tiny)
inline double rel_diff(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) {
  const double scale = std::max(b.cwiseAbs().maxCoeff(), 1e-300);
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

/// Unit reference tetrahedron (0,0,0), (1,0,0), (0,1,0), (0,0,1).
inline std::array<Point, 4> reference_tet() {
  return {Point(0, 0, 0), Point(1, 0, 0), Point(0, 1, 0), Point(0, 0, 1)};
}

/// A skewed, positively oriented tetrahedron.
inline std::array<Point, 4> skewed_tet() {
  return {Point(0.1, -0.2, 0.05), Point(1.3, 0.1, -0.1), Point(0.2, 0.9, 0.3),
          Point(0.4, 0.3, 1.1)};
}

} // namespace oracle
