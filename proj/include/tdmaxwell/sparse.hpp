#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <filesystem>
#include <span>
#include <vector>

namespace tdmaxwell {

using Index = int;
using Complex = std::complex<double>;

/// Compressed row storage. Column indices are sorted within each row once
/// compressed; `finalize` additionally drops explicit zeros.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, Index>;
using ComplexSparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor, Index>;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXd;
using Triplet = Eigen::Triplet<double, Index>;

SparseMatrix from_triplets(Index rows, Index cols, std::span<const Triplet> entries);

/// Compress and prune exact zeros.
void finalize(SparseMatrix &m);

/// Submatrix A(rows, cols) for index lists into the original numbering.
SparseMatrix select(const SparseMatrix &a, std::span<const Index> rows,
                    std::span<const Index> cols);
Vector select(const Vector &v, std::span<const Index> idx);

/// max |a_ij|
double max_abs(const SparseMatrix &a);
/// max_ij |a_ij - a_ji| for square a.
double asymmetry(const SparseMatrix &a);
/// Frobenius norm; used as the "||A||" scale in residual bounds.
double frobenius(const SparseMatrix &a);

ComplexSparseMatrix to_complex(const SparseMatrix &a);

void write_matrix_market(const SparseMatrix &a, const std::filesystem::path &path);
SparseMatrix read_matrix_market(const std::filesystem::path &path);

} // namespace tdmaxwell
