#include "tdmaxwell/sources.hpp"

#include "tdmaxwell/errors.hpp"
#include "tdmaxwell/whitney.hpp"

#include <cmath>
#include <numbers>

namespace tdmaxwell {

double SineDrive::angular_frequency() const { return 2.0 * std::numbers::pi * frequency; }

double SineDrive::value(double t) const {
  if (amplitude == 0.0)
    return 0.0;
  return amplitude * std::sin(angular_frequency() * t);
}

namespace {

double profile_factor(TimeProfile p, const SineDrive &drive, double t) {
  return p == TimeProfile::Constant ? 1.0 : std::sin(drive.angular_frequency() * t);
}

} // namespace

Vector dirichlet_values(const DofMap &dofs, const SineDrive &drive, double t) {
  Vector g = Vector::Zero(static_cast<Eigen::Index>(dofs.dirichlet_nodes.size()));
  const double v = drive.value(t);
  for (std::size_t i = 0; i < dofs.dirichlet_nodes.size(); ++i)
    if (dofs.dirichlet_values[i] == ScalarValue::Drive)
      g[static_cast<Eigen::Index>(i)] = v;
  return g;
}

SourceVectors assemble_sources(const Mesh &mesh, const DofMap &dofs, const SourceSpec &sources,
                               double t) {
  if (t < 0.0)
    throw InputError("source evaluation before t = 0");
  if (sources.drive.amplitude != 0.0 && !(sources.drive.frequency > 0.0))
    throw InputError("sinusoidal drive needs a positive frequency");

  SourceVectors out;
  out.qdot = Vector::Zero(dofs.num_free_nodes());
  out.j_s = Vector::Zero(dofs.num_free_edges());
  out.dirichlet = dirichlet_values(dofs, sources.drive, t);

  if (sources.currents.empty() && sources.charges.empty())
    return out;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const int region = mesh.cell_region[static_cast<std::size_t>(c)];
    const auto &cell = mesh.cells[static_cast<std::size_t>(c)];
    const TetElement el(mesh.cell_points(c));
    for (const auto &cur : sources.currents) {
      if (cur.region != region)
        continue;
      const Point j = cur.density * profile_factor(cur.profile, sources.drive, t);
      const auto w = el.edge_integrals();
      for (int k = 0; k < 6; ++k) {
        const Index fe = dofs.edge_to_free[static_cast<std::size_t>(cell.edges[k])];
        if (fe >= 0)
          out.j_s[fe] += cell.edge_signs[k] * j.dot(w[k]);
      }
    }
    for (const auto &q : sources.charges) {
      if (q.region != region)
        continue;
      const double rate = q.rate * profile_factor(q.profile, sources.drive, t);
      for (int i = 0; i < 4; ++i) {
        const Index fn = dofs.node_to_free[static_cast<std::size_t>(cell.nodes[i])];
        if (fn >= 0)
          out.qdot[fn] += rate * el.volume / 4.0;
      }
    }
  }
  return out;
}

Vector full_nodal(const DofMap &dofs, const Vector &free_values, const Vector &dirichlet) {
  if (free_values.size() != dofs.num_free_nodes() ||
      dirichlet.size() != static_cast<Eigen::Index>(dofs.dirichlet_nodes.size()))
    throw InputError("full_nodal: dimension mismatch");
  Vector u(static_cast<Eigen::Index>(dofs.node_to_free.size()));
  for (std::size_t i = 0; i < dofs.free_nodes.size(); ++i)
    u[dofs.free_nodes[i]] = free_values[static_cast<Eigen::Index>(i)];
  for (std::size_t i = 0; i < dofs.dirichlet_nodes.size(); ++i)
    u[dofs.dirichlet_nodes[i]] = dirichlet[static_cast<Eigen::Index>(i)];
  return u;
}

Vector full_edges(const DofMap &dofs, Index num_edges, const Vector &free_values) {
  if (free_values.size() != dofs.num_free_edges())
    throw InputError("full_edges: dimension mismatch");
  Vector a = Vector::Zero(num_edges);
  for (std::size_t i = 0; i < dofs.free_edges.size(); ++i)
    a[dofs.free_edges[i]] = free_values[static_cast<Eigen::Index>(i)];
  return a;
}

} // namespace tdmaxwell
