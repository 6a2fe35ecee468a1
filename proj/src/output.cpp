#include "tdmaxwell/output.hpp"

#include "tdmaxwell/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace tdmaxwell {

std::string format_number(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string quote(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos)
    return s;
  std::string q = "\"";
  for (const char c : s) {
    if (c == '"')
      q += '"';
    q += c;
  }
  return q + "\"";
}

std::ofstream open_or_throw(const std::filesystem::path &path) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out)
    throw InputError("cannot write " + path.string());
  return out;
}

} // namespace

CsvWriter::CsvWriter(const std::filesystem::path &path, std::vector<std::string> header)
    : path_(path), tmp_(path.string() + ".part"), columns_(header.size()) {
  out_ = open_or_throw(tmp_);
  open_ = true;
  row_text(header);
}

CsvWriter::~CsvWriter() {
  try {
    close();
  } catch (...) {
  }
}

void CsvWriter::row(const std::vector<double> &values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (const double v : values)
    cells.push_back(format_number(v));
  row_text(cells);
}

void CsvWriter::row_text(const std::vector<std::string> &cells) {
  if (!open_)
    throw InputError("CSV writer is closed");
  if (cells.size() != columns_)
    throw InputError("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                     std::to_string(columns_));
  for (std::size_t i = 0; i < cells.size(); ++i)
    out_ << (i ? "," : "") << quote(cells[i]);
  out_ << "\r\n";
  out_.flush();
}

void CsvWriter::close() {
  if (!open_)
    return;
  open_ = false;
  out_.close();
  std::filesystem::rename(tmp_, path_);
}

void write_vtk(const Mesh &mesh, const VtkFields &fields, const std::filesystem::path &path) {
  const auto nn = static_cast<std::size_t>(mesh.num_nodes());
  const auto nc = static_cast<std::size_t>(mesh.num_cells());
  if (!fields.point_scalar.empty() && fields.point_scalar.size() != nn)
    throw InputError("VTK: point scalar length does not match the node count");
  if (!fields.cell_region.empty() && fields.cell_region.size() != nc)
    throw InputError("VTK: cell scalar length does not match the cell count");
  for (const auto &v : fields.cell_vectors)
    if (v.values.size() != nc)
      throw InputError("VTK: cell vector '" + v.name + "' does not match the cell count");

  const std::filesystem::path tmp = path.string() + ".part";
  {
    std::ofstream out = open_or_throw(tmp);
    out << "# vtk DataFile Version 3.0\ntdmaxwell\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << nn << " double\n";
    for (const auto &p : mesh.nodes)
      out << format_number(p.x()) << ' ' << format_number(p.y()) << ' ' << format_number(p.z())
          << '\n';
    out << "CELLS " << nc << ' ' << 5 * nc << '\n';
    for (const auto &c : mesh.cells)
      out << "4 " << c.nodes[0] << ' ' << c.nodes[1] << ' ' << c.nodes[2] << ' ' << c.nodes[3]
          << '\n';
    out << "CELL_TYPES " << nc << '\n';
    for (std::size_t c = 0; c < nc; ++c)
      out << "10\n";
    if (!fields.cell_vectors.empty() || !fields.cell_region.empty()) {
      out << "CELL_DATA " << nc << '\n';
      if (!fields.cell_region.empty()) {
        out << "SCALARS region double 1\nLOOKUP_TABLE default\n";
        for (const double v : fields.cell_region)
          out << format_number(v) << '\n';
      }
      for (const auto &v : fields.cell_vectors) {
        out << "VECTORS " << v.name << " double\n";
        for (const auto &p : v.values)
          out << format_number(p.x()) << ' ' << format_number(p.y()) << ' '
              << format_number(p.z()) << '\n';
      }
    }
    if (!fields.point_scalar.empty()) {
      out << "POINT_DATA " << nn << '\n';
      out << "SCALARS " << fields.point_scalar_name << " double 1\nLOOKUP_TABLE default\n";
      for (const double v : fields.point_scalar)
        out << format_number(v) << '\n';
    }
    if (!out)
      throw InputError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_mesh_csv(const Mesh &mesh, const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  {
    CsvWriter w(dir / "nodes.csv", {"node", "x", "y", "z"});
    for (Index n = 0; n < mesh.num_nodes(); ++n) {
      const auto &p = mesh.nodes[static_cast<std::size_t>(n)];
      w.row({double(n), p.x(), p.y(), p.z()});
    }
  }
  {
    CsvWriter w(dir / "edges.csv", {"edge", "n0", "n1"});
    for (Index e = 0; e < mesh.num_edges(); ++e) {
      const auto &ed = mesh.edges[static_cast<std::size_t>(e)];
      w.row({double(e), double(ed[0]), double(ed[1])});
    }
  }
  {
    CsvWriter w(dir / "cells.csv",
                {"cell", "region", "n0", "n1", "n2", "n3", "e0", "e1", "e2", "e3", "e4", "e5", "s0",
                 "s1", "s2", "s3", "s4", "s5"});
    for (Index c = 0; c < mesh.num_cells(); ++c) {
      const auto &cell = mesh.cells[static_cast<std::size_t>(c)];
      std::vector<double> r{double(c), double(mesh.cell_region[static_cast<std::size_t>(c)])};
      for (const auto n : cell.nodes)
        r.push_back(n);
      for (const auto e : cell.edges)
        r.push_back(e);
      for (const auto s : cell.edge_signs)
        r.push_back(s);
      w.row(r);
    }
  }
  {
    CsvWriter w(dir / "boundary_faces.csv", {"side", "face", "n0", "n1", "n2"});
    for (const BoxSide side : kAllSides)
      for (const Index f : mesh.boundary_faces[static_cast<std::size_t>(side)]) {
        const auto &fa = mesh.faces[static_cast<std::size_t>(f)];
        w.row_text({side_name(side), std::to_string(f), std::to_string(fa[0]),
                    std::to_string(fa[1]), std::to_string(fa[2])});
      }
  }
}

} // namespace tdmaxwell
