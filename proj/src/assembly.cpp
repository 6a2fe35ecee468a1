#include "tdmaxwell/assembly.hpp"

#include "tdmaxwell/errors.hpp"
#include "tdmaxwell/whitney.hpp"

#include <string>

namespace tdmaxwell {

CellFields cell_fields(const Mesh &mesh, const MaterialSpec &materials) {
  CellFields f;
  const auto nc = static_cast<std::size_t>(mesh.num_cells());
  f.sigma.resize(nc);
  f.eps.resize(nc);
  f.nu.resize(nc);
  for (const auto &[id, m] : materials) {
    if (!(m.eps > 0.0))
      throw ConfigError("material of region " + std::to_string(id) + ": eps must be > 0");
    if (!(m.nu > 0.0))
      throw ConfigError("material of region " + std::to_string(id) + ": nu must be > 0");
    if (!(m.sigma >= 0.0))
      throw ConfigError("material of region " + std::to_string(id) + ": sigma must be >= 0");
  }
  for (std::size_t c = 0; c < nc; ++c) {
    const auto it = materials.find(mesh.cell_region[c]);
    if (it == materials.end())
      throw ConfigError("no material for region " + std::to_string(mesh.cell_region[c]));
    f.sigma[c] = it->second.sigma;
    f.eps[c] = it->second.eps;
    f.nu[c] = it->second.nu;
  }
  return f;
}

namespace {

void check_coeff(const Mesh &mesh, std::span<const double> coeff) {
  if (coeff.size() != static_cast<std::size_t>(mesh.num_cells()))
    throw InputError("cell coefficient length does not match the cell count");
}

} // namespace

SparseMatrix assemble_stiff_grad(const Mesh &mesh, std::span<const double> coeff) {
  check_coeff(mesh, coeff);
  std::vector<Triplet> t;
  t.reserve(16 * coeff.size());
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const double k = coeff[static_cast<std::size_t>(c)];
    if (k == 0.0)
      continue;
    const auto &cell = mesh.cells[static_cast<std::size_t>(c)];
    const Eigen::Matrix4d local = TetElement(mesh.cell_points(c)).stiffness();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        t.emplace_back(cell.nodes[i], cell.nodes[j], k * local(i, j));
  }
  return from_triplets(mesh.num_nodes(), mesh.num_nodes(), t);
}

SparseMatrix assemble_grad_coupling(const Mesh &mesh, std::span<const double> coeff) {
  check_coeff(mesh, coeff);
  std::vector<Triplet> t;
  t.reserve(24 * coeff.size());
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const double k = coeff[static_cast<std::size_t>(c)];
    if (k == 0.0)
      continue;
    const auto &cell = mesh.cells[static_cast<std::size_t>(c)];
    const auto local = TetElement(mesh.cell_points(c)).gradient_coupling();
    for (int e = 0; e < 6; ++e)
      for (int j = 0; j < 4; ++j)
        t.emplace_back(cell.edges[e], cell.nodes[j], k * cell.edge_signs[e] * local(e, j));
  }
  return from_triplets(mesh.num_edges(), mesh.num_nodes(), t);
}

namespace {

template <typename LocalFn>
SparseMatrix assemble_edge_edge(const Mesh &mesh, std::span<const double> coeff, LocalFn local_fn) {
  check_coeff(mesh, coeff);
  std::vector<Triplet> t;
  t.reserve(36 * coeff.size());
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const double k = coeff[static_cast<std::size_t>(c)];
    if (k == 0.0)
      continue;
    const auto &cell = mesh.cells[static_cast<std::size_t>(c)];
    const Eigen::Matrix<double, 6, 6> local = local_fn(TetElement(mesh.cell_points(c)));
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        t.emplace_back(cell.edges[a], cell.edges[b],
                       k * cell.edge_signs[a] * cell.edge_signs[b] * local(a, b));
  }
  return from_triplets(mesh.num_edges(), mesh.num_edges(), t);
}

} // namespace

SparseMatrix assemble_mass_curl(const Mesh &mesh, std::span<const double> coeff) {
  return assemble_edge_edge(mesh, coeff, [](const TetElement &el) { return el.edge_mass(); });
}

SparseMatrix assemble_curlcurl(const Mesh &mesh, std::span<const double> coeff) {
  return assemble_edge_edge(mesh, coeff, [](const TetElement &el) { return el.curl_curl(); });
}

namespace {

std::vector<Index> all_indices(Index n) {
  std::vector<Index> v(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = i;
  return v;
}

void set_sigma_parts(AssembledOperators &ops, const Mesh &mesh, const DofMap &dofs,
                     std::span<const double> sigma) {
  const auto all_nodes = all_indices(mesh.num_nodes());
  ops.k_sigma_full = assemble_stiff_grad(mesh, sigma);
  ops.k_sigma_ff = select(ops.k_sigma_full, dofs.free_nodes, dofs.free_nodes);
  ops.k_sigma_fd = select(ops.k_sigma_full, dofs.free_nodes, dofs.dirichlet_nodes);
  ops.g_sigma = select(assemble_grad_coupling(mesh, sigma), dofs.free_edges, all_nodes);
  ops.m_sigma = select(assemble_mass_curl(mesh, sigma), dofs.free_edges, dofs.free_edges);
}

} // namespace

AssembledOperators build_operators(const Mesh &mesh, const DofMap &dofs,
                                   const CellFields &fields) {
  AssembledOperators ops;
  set_sigma_parts(ops, mesh, dofs, fields.sigma);
  const auto all_nodes = all_indices(mesh.num_nodes());
  ops.k_eps_full = assemble_stiff_grad(mesh, fields.eps);
  ops.k_eps_ff = select(ops.k_eps_full, dofs.free_nodes, dofs.free_nodes);
  ops.k_eps_fd = select(ops.k_eps_full, dofs.free_nodes, dofs.dirichlet_nodes);
  ops.g_eps = select(assemble_grad_coupling(mesh, fields.eps), dofs.free_edges, all_nodes);
  ops.m_eps = select(assemble_mass_curl(mesh, fields.eps), dofs.free_edges, dofs.free_edges);
  ops.k_nu = select(assemble_curlcurl(mesh, fields.nu), dofs.free_edges, dofs.free_edges);
  return ops;
}

void refresh_conductivity(AssembledOperators &ops, const Mesh &mesh, const DofMap &dofs,
                          std::span<const double> sigma) {
  set_sigma_parts(ops, mesh, dofs, sigma);
}

} // namespace tdmaxwell
