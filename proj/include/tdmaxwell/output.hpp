#pragma once

#include "tdmaxwell/mesh.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace tdmaxwell {

/// Number formatting used by every writer: 17 significant digits, "inf"/"nan"
/// for non-finite values.
std::string format_number(double v);

/// RFC-4180 style CSV with a header row. Rows are flushed as they are written;
/// the file is created under a temporary name and renamed on close().
class CsvWriter {
public:
  CsvWriter(const std::filesystem::path &path, std::vector<std::string> header);
  ~CsvWriter();
  CsvWriter(const CsvWriter &) = delete;
  CsvWriter &operator=(const CsvWriter &) = delete;

  void row(const std::vector<double> &values);
  /// Mixed text/number row (text cells are quoted when needed).
  void row_text(const std::vector<std::string> &cells);
  void close();

private:
  std::filesystem::path path_, tmp_;
  std::size_t columns_;
  std::ofstream out_;
  bool open_ = false;
};

struct VtkCellVectors {
  std::string name;
  std::vector<Point> values; ///< one per cell
};

struct VtkFields {
  std::vector<double> point_scalar; ///< empty = none
  std::string point_scalar_name = "phi";
  std::vector<VtkCellVectors> cell_vectors;
  std::vector<double> cell_region; ///< empty = none
};

/// Legacy ASCII VTK 3.0 unstructured grid of tetrahedra (cell type 10).
void write_vtk(const Mesh &mesh, const VtkFields &fields, const std::filesystem::path &path);

/// nodes.csv, edges.csv, cells.csv and boundary_faces.csv in `dir`.
void write_mesh_csv(const Mesh &mesh, const std::filesystem::path &dir);

} // namespace tdmaxwell
