#include "tdmaxwell/boundary.hpp"

#include "tdmaxwell/errors.hpp"

#include <algorithm>

namespace tdmaxwell {

namespace {

bool inside_window(const Mesh &mesh, const BoundaryPatch &patch, Index node) {
  if (!patch.window)
    return true;
  const Point &p = mesh.nodes[static_cast<std::size_t>(node)];
  for (int a = 0; a < 3; ++a) {
    const auto &pl = mesh.planes[a];
    const double tol = 1e-9 * (pl.back() - pl.front());
    if (p[a] < patch.window->lo[a] - tol || p[a] > patch.window->hi[a] + tol)
      return false;
  }
  return true;
}

bool in_patch(const Mesh &mesh, const BoundaryPatch &patch, Index node) {
  return mesh.on_side(node, patch.side) && inside_window(mesh, patch, node);
}

} // namespace

std::vector<Index> patch_nodes(const Mesh &mesh, const BoundaryPatch &patch) {
  std::vector<Index> out;
  for (Index n = 0; n < mesh.num_nodes(); ++n)
    if (in_patch(mesh, patch, n))
      out.push_back(n);
  return out;
}

std::vector<Index> patch_faces(const Mesh &mesh, const BoundaryPatch &patch) {
  std::vector<Index> out;
  for (const Index f : mesh.boundary_faces[static_cast<std::size_t>(patch.side)]) {
    const auto &tri = mesh.faces[static_cast<std::size_t>(f)];
    if (std::all_of(tri.begin(), tri.end(),
                    [&](Index n) { return inside_window(mesh, patch, n); }))
      out.push_back(f);
  }
  return out;
}

DofMap classify_dofs(const Mesh &mesh, const BoundaryConditions &bc) {
  DofMap dofs;
  const auto nn = static_cast<std::size_t>(mesh.num_nodes());
  const auto ne = static_cast<std::size_t>(mesh.num_edges());

  // 0 = free, 1 = ground, 2 = drive
  std::vector<int> node_kind(nn, 0);
  for (const auto &sd : bc.scalar) {
    const int kind = sd.value == ScalarValue::Ground ? 1 : 2;
    for (const Index n : patch_nodes(mesh, sd.patch)) {
      auto &k = node_kind[static_cast<std::size_t>(n)];
      if (k != 0 && k != kind)
        throw ConfigError("ground and driven scalar patches overlap at node " +
                          std::to_string(n));
      k = kind;
    }
  }
  dofs.node_to_free.assign(nn, -1);
  for (std::size_t n = 0; n < nn; ++n) {
    if (node_kind[n] == 0) {
      dofs.node_to_free[n] = static_cast<Index>(dofs.free_nodes.size());
      dofs.free_nodes.push_back(static_cast<Index>(n));
    } else {
      dofs.dirichlet_nodes.push_back(static_cast<Index>(n));
      dofs.dirichlet_values.push_back(node_kind[n] == 1 ? ScalarValue::Ground
                                                        : ScalarValue::Drive);
    }
  }

  std::vector<char> edge_fixed(ne, 0);
  std::vector<char> node_on_vector_patch(nn, 0);
  for (const auto &patch : bc.vector_dirichlet) {
    for (Index e = 0; e < mesh.num_edges(); ++e) {
      const auto &ed = mesh.edges[static_cast<std::size_t>(e)];
      if (in_patch(mesh, patch, ed[0]) && in_patch(mesh, patch, ed[1]))
        edge_fixed[static_cast<std::size_t>(e)] = 1;
    }
    for (const Index n : patch_nodes(mesh, patch))
      node_on_vector_patch[static_cast<std::size_t>(n)] = 1;
  }
  dofs.edge_to_free.assign(ne, -1);
  for (std::size_t e = 0; e < ne; ++e)
    if (!edge_fixed[e]) {
      dofs.edge_to_free[e] = static_cast<Index>(dofs.free_edges.size());
      dofs.free_edges.push_back(static_cast<Index>(e));
    }
  for (std::size_t n = 0; n < nn; ++n)
    if (node_on_vector_patch[n])
      dofs.vector_dirichlet_nodes.push_back(static_cast<Index>(n));

  if (dofs.free_nodes.empty())
    throw ConfigError("boundary conditions leave no free scalar-potential nodes");
  if (dofs.free_edges.empty())
    throw ConfigError("boundary conditions leave no free vector-potential edges");
  return dofs;
}

} // namespace tdmaxwell
