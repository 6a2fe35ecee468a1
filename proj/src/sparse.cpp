#include "tdmaxwell/sparse.hpp"

#include "tdmaxwell/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

namespace tdmaxwell {

SparseMatrix from_triplets(Index rows, Index cols, std::span<const Triplet> entries) {
  SparseMatrix m(rows, cols);
  m.setFromTriplets(entries.begin(), entries.end());
  finalize(m);
  return m;
}

void finalize(SparseMatrix &m) {
  m.prune(0.0, 0.0);
  m.makeCompressed();
}

SparseMatrix select(const SparseMatrix &a, std::span<const Index> rows,
                    std::span<const Index> cols) {
  std::vector<Index> col_map(static_cast<std::size_t>(a.cols()), -1);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0 || cols[j] >= a.cols())
      throw InputError("select: column index out of range");
    col_map[static_cast<std::size_t>(cols[j])] = static_cast<Index>(j);
  }
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0 || rows[i] >= a.rows())
      throw InputError("select: row index out of range");
    for (SparseMatrix::InnerIterator it(a, rows[i]); it; ++it) {
      const Index j = col_map[static_cast<std::size_t>(it.col())];
      if (j >= 0)
        entries.emplace_back(static_cast<Index>(i), j, it.value());
    }
  }
  return from_triplets(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()),
                       entries);
}

Vector select(const Vector &v, std::span<const Index> idx) {
  Vector out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = v[idx[i]];
  return out;
}

double max_abs(const SparseMatrix &a) {
  double m = 0.0;
  for (Index r = 0; r < a.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(a, r); it; ++it)
      m = std::max(m, std::abs(it.value()));
  return m;
}

double asymmetry(const SparseMatrix &a) {
  if (a.rows() != a.cols())
    throw InputError("asymmetry: matrix not square");
  const SparseMatrix t = a.transpose();
  const SparseMatrix d = a - t;
  return max_abs(d);
}

double frobenius(const SparseMatrix &a) { return a.norm(); }

ComplexSparseMatrix to_complex(const SparseMatrix &a) { return a.cast<Complex>(); }

void write_matrix_market(const SparseMatrix &a, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out)
    throw InputError("cannot open " + path.string() + " for writing");
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nonZeros() << '\n';
  out << std::setprecision(17);
  for (Index r = 0; r < a.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(a, r); it; ++it)
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
}

SparseMatrix read_matrix_market(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("%%MatrixMarket matrix coordinate real", 0) != 0)
    throw InputError("unsupported MatrixMarket header: " + line);
  const bool symmetric = line.find("symmetric") != std::string::npos;
  while (std::getline(in, line) && !line.empty() && line[0] == '%') {
  }
  std::istringstream header(line);
  long rows = 0, cols = 0, nnz = 0;
  if (!(header >> rows >> cols >> nnz))
    throw InputError("malformed MatrixMarket size line");
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
  for (long k = 0; k < nnz; ++k) {
    long i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v))
      throw InputError("truncated MatrixMarket body");
    entries.emplace_back(static_cast<Index>(i - 1), static_cast<Index>(j - 1), v);
    if (symmetric && i != j)
      entries.emplace_back(static_cast<Index>(j - 1), static_cast<Index>(i - 1), v);
  }
  return from_triplets(static_cast<Index>(rows), static_cast<Index>(cols), entries);
}

} // namespace tdmaxwell
