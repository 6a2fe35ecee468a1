#include "tdmaxwell/mesh.hpp"

#include "tdmaxwell/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace tdmaxwell {

const char *side_name(BoxSide side) {
  switch (side) {
  case BoxSide::XMin: return "xmin";
  case BoxSide::XMax: return "xmax";
  case BoxSide::YMin: return "ymin";
  case BoxSide::YMax: return "ymax";
  case BoxSide::ZMin: return "zmin";
  case BoxSide::ZMax: return "zmax";
  }
  return "?";
}

std::array<Index, 3> Mesh::divisions() const {
  return {static_cast<Index>(planes[0].size()) - 1, static_cast<Index>(planes[1].size()) - 1,
          static_cast<Index>(planes[2].size()) - 1};
}

bool Mesh::on_side(Index node, BoxSide side) const {
  const auto s = static_cast<int>(side);
  const int axis = s / 2;
  const Index target = (s % 2 == 0) ? 0 : static_cast<Index>(planes[axis].size()) - 1;
  return node_lattice[static_cast<std::size_t>(node)][axis] == target;
}

std::array<Point, 4> Mesh::cell_points(Index c) const {
  const auto &cell = cells[static_cast<std::size_t>(c)];
  return {nodes[cell.nodes[0]], nodes[cell.nodes[1]], nodes[cell.nodes[2]], nodes[cell.nodes[3]]};
}

double Mesh::cell_volume(Index c) const {
  const auto p = cell_points(c);
  Eigen::Matrix3d j;
  j << p[1] - p[0], p[2] - p[0], p[3] - p[0];
  return j.determinant() / 6.0;
}

Point Mesh::cell_centroid(Index c) const {
  const auto p = cell_points(c);
  return 0.25 * (p[0] + p[1] + p[2] + p[3]);
}

Index Mesh::find_edge(Index a, Index b) const {
  const std::array<Index, 2> key{std::min(a, b), std::max(a, b)};
  const auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || *it != key)
    return -1;
  return static_cast<Index>(it - edges.begin());
}

namespace {

bool on_lattice_plane(const std::vector<double> &planes, double x) {
  const double span = planes.back() - planes.front();
  return std::any_of(planes.begin(), planes.end(),
                     [&](double p) { return std::abs(p - x) <= 1e-9 * span; });
}

void validate_planes(const std::array<std::vector<double>, 3> &planes) {
  for (int a = 0; a < 3; ++a) {
    const auto &p = planes[a];
    if (p.size() < 2)
      throw InputError("lattice axis " + std::to_string(a) + " needs at least one division");
    for (std::size_t i = 1; i < p.size(); ++i)
      if (!(p[i] > p[i - 1]))
        throw InputError("lattice planes must be strictly increasing on axis " +
                         std::to_string(a));
  }
}

void validate_regions(const std::array<std::vector<double>, 3> &planes,
                      const std::vector<RegionBox> &regions) {
  for (const auto &r : regions) {
    for (int a = 0; a < 3; ++a) {
      const auto &p = planes[a];
      const double tol = 1e-9 * (p.back() - p.front());
      if (r.lo[a] > r.hi[a])
        throw InputError("region " + std::to_string(r.id) + ": lo > hi");
      if (r.lo[a] < p.front() - tol || r.hi[a] > p.back() + tol)
        throw InputError("region " + std::to_string(r.id) + " leaves the mesh extent");
      if (!on_lattice_plane(p, r.lo[a]) || !on_lattice_plane(p, r.hi[a])) {
        std::ostringstream msg;
        msg << "region " << r.id << " face on axis " << a
            << " does not coincide with a lattice plane";
        throw InputError(msg.str());
      }
    }
  }
}

} // namespace

Mesh build_box_mesh(const Point &extent, const std::array<Index, 3> &divisions,
                    const std::vector<RegionBox> &regions) {
  std::array<std::vector<double>, 3> planes;
  for (int a = 0; a < 3; ++a) {
    if (!(extent[a] > 0.0))
      throw InputError("box extent must be positive");
    if (divisions[a] < 1)
      throw InputError("box divisions must be >= 1");
    planes[a].resize(static_cast<std::size_t>(divisions[a]) + 1);
    for (Index i = 0; i <= divisions[a]; ++i)
      planes[a][static_cast<std::size_t>(i)] = extent[a] * i / divisions[a];
  }
  return build_lattice_mesh(planes, regions);
}

Mesh build_lattice_mesh(const std::array<std::vector<double>, 3> &planes,
                        const std::vector<RegionBox> &regions) {
  validate_planes(planes);
  validate_regions(planes, regions);

  Mesh mesh;
  mesh.planes = planes;
  const Index nx = static_cast<Index>(planes[0].size());
  const Index ny = static_cast<Index>(planes[1].size());
  const Index nz = static_cast<Index>(planes[2].size());
  const auto node_id = [&](Index i, Index j, Index k) { return i + nx * (j + ny * k); };

  mesh.nodes.reserve(static_cast<std::size_t>(nx * ny * nz));
  for (Index k = 0; k < nz; ++k)
    for (Index j = 0; j < ny; ++j)
      for (Index i = 0; i < nx; ++i) {
        mesh.nodes.emplace_back(planes[0][i], planes[1][j], planes[2][k]);
        mesh.node_lattice.push_back({i, j, k});
      }

  // Kuhn split: one tet per monotone lattice path from corner 000 to 111.
  static constexpr std::array<std::array<int, 3>, 6> kPermutations{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::vector<std::array<Index, 4>> tets;
  tets.reserve(static_cast<std::size_t>(6 * (nx - 1) * (ny - 1) * (nz - 1)));
  for (Index k = 0; k + 1 < nz; ++k)
    for (Index j = 0; j + 1 < ny; ++j)
      for (Index i = 0; i + 1 < nx; ++i)
        for (const auto &perm : kPermutations) {
          std::array<Index, 3> at{i, j, k};
          std::array<Index, 4> tet{};
          tet[0] = node_id(at[0], at[1], at[2]);
          for (int step = 0; step < 3; ++step) {
            ++at[static_cast<std::size_t>(perm[static_cast<std::size_t>(step)])];
            tet[static_cast<std::size_t>(step) + 1] = node_id(at[0], at[1], at[2]);
          }
          tets.push_back(tet);
        }

  // Orient positively.
  for (auto &t : tets) {
    const Point &p0 = mesh.nodes[t[0]];
    Eigen::Matrix3d jac;
    jac << mesh.nodes[t[1]] - p0, mesh.nodes[t[2]] - p0, mesh.nodes[t[3]] - p0;
    if (jac.determinant() < 0.0)
      std::swap(t[2], t[3]);
  }

  for (const auto &t : tets)
    for (const auto &le : kLocalEdges) {
      const Index a = t[le[0]], b = t[le[1]];
      mesh.edges.push_back({std::min(a, b), std::max(a, b)});
    }
  std::sort(mesh.edges.begin(), mesh.edges.end());
  mesh.edges.erase(std::unique(mesh.edges.begin(), mesh.edges.end()), mesh.edges.end());

  static constexpr std::array<std::array<int, 3>, 4> kLocalFaces{
      {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};
  for (const auto &t : tets)
    for (const auto &lf : kLocalFaces) {
      std::array<Index, 3> f{t[lf[0]], t[lf[1]], t[lf[2]]};
      std::sort(f.begin(), f.end());
      mesh.faces.push_back(f);
    }
  std::sort(mesh.faces.begin(), mesh.faces.end());
  mesh.faces.erase(std::unique(mesh.faces.begin(), mesh.faces.end()), mesh.faces.end());

  mesh.cells.reserve(tets.size());
  for (const auto &t : tets) {
    Cell cell;
    cell.nodes = t;
    for (std::size_t e = 0; e < 6; ++e) {
      const Index a = t[kLocalEdges[e][0]], b = t[kLocalEdges[e][1]];
      cell.edges[e] = mesh.find_edge(a, b);
      cell.edge_signs[e] = a < b ? 1 : -1;
    }
    mesh.cells.push_back(cell);
  }

  mesh.cell_region.assign(mesh.cells.size(), 0);
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const Point centroid = mesh.cell_centroid(c);
    for (const auto &r : regions)
      if ((centroid.array() >= r.lo.array()).all() && (centroid.array() <= r.hi.array()).all())
        mesh.cell_region[static_cast<std::size_t>(c)] = r.id;
  }

  for (Index f = 0; f < mesh.num_faces(); ++f)
    for (const BoxSide side : kAllSides) {
      const auto &tri = mesh.faces[static_cast<std::size_t>(f)];
      if (mesh.on_side(tri[0], side) && mesh.on_side(tri[1], side) && mesh.on_side(tri[2], side))
        mesh.boundary_faces[static_cast<std::size_t>(side)].push_back(f);
    }
  return mesh;
}

SparseMatrix topological_gradient(const Mesh &mesh) {
  std::vector<Triplet> entries;
  entries.reserve(2 * mesh.edges.size());
  for (Index e = 0; e < mesh.num_edges(); ++e) {
    entries.emplace_back(e, mesh.edges[static_cast<std::size_t>(e)][0], -1.0);
    entries.emplace_back(e, mesh.edges[static_cast<std::size_t>(e)][1], 1.0);
  }
  return from_triplets(mesh.num_edges(), mesh.num_nodes(), entries);
}

SparseMatrix topological_curl(const Mesh &mesh) {
  std::vector<Triplet> entries;
  entries.reserve(3 * mesh.faces.size());
  for (Index f = 0; f < mesh.num_faces(); ++f) {
    const auto &t = mesh.faces[static_cast<std::size_t>(f)];
    entries.emplace_back(f, mesh.find_edge(t[0], t[1]), 1.0);
    entries.emplace_back(f, mesh.find_edge(t[1], t[2]), 1.0);
    entries.emplace_back(f, mesh.find_edge(t[0], t[2]), -1.0);
  }
  return from_triplets(mesh.num_faces(), mesh.num_edges(), entries);
}

} // namespace tdmaxwell
