#pragma once

#include "tdmaxwell/mesh.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace testutil {

using tdmaxwell::Index;
using tdmaxwell::Mesh;
using tdmaxwell::Point;

/// Mesh holding exactly one tetrahedron (nodes 0..3, lattice ids faked as
/// the unit-cube corners they would occupy for the reference tet).
inline Mesh single_tet_mesh(const std::array<Point, 4> &p) {
  Mesh m;
  m.planes = {std::vector<double>{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}};
  m.nodes.assign(p.begin(), p.end());
  m.node_lattice = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (Index a = 0; a < 4; ++a)
    for (Index b = a + 1; b < 4; ++b)
      m.edges.push_back({a, b});
  m.faces = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  tdmaxwell::Cell cell;
  cell.nodes = {0, 1, 2, 3};
  for (std::size_t e = 0; e < 6; ++e) {
    cell.edges[e] = m.find_edge(tdmaxwell::kLocalEdges[e][0], tdmaxwell::kLocalEdges[e][1]);
    cell.edge_signs[e] = 1;
  }
  m.cells.push_back(cell);
  m.cell_region = {0};
  return m;
}

inline std::vector<double> ones(Index n) { return std::vector<double>(static_cast<std::size_t>(n), 1.0); }

/// Deterministic, non-uniform per-cell coefficients.
inline std::vector<double> varied(Index n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = 1.0 + 0.37 * ((i * 7) % 5);
  return v;
}

} // namespace testutil

#include "tdmaxwell/assembly.hpp"

namespace testutil {

inline tdmaxwell::SparseMatrix scalar_matrix(double v) {
  std::vector<tdmaxwell::Triplet> t{{0, 0, v}};
  return tdmaxwell::from_triplets(1, 1, t);
}

/// One free node, no Dirichlet nodes: C du/dt + G u = qdot.
inline tdmaxwell::AssembledOperators rc_operators(double g, double c) {
  tdmaxwell::AssembledOperators ops;
  ops.k_sigma_ff = ops.k_sigma_full = scalar_matrix(g);
  ops.k_eps_ff = ops.k_eps_full = scalar_matrix(c);
  ops.k_sigma_fd = ops.k_eps_fd = tdmaxwell::SparseMatrix(1, 0);
  return ops;
}

/// One free edge: m a'' + c a' + k a = j, with no nodal coupling.
inline tdmaxwell::AssembledOperators oscillator_operators(double m, double c, double k) {
  tdmaxwell::AssembledOperators ops;
  ops.m_eps = scalar_matrix(m);
  ops.m_sigma = scalar_matrix(c);
  ops.k_nu = scalar_matrix(k);
  ops.g_sigma = ops.g_eps = tdmaxwell::SparseMatrix(1, 0);
  return ops;
}

} // namespace testutil
