#pragma once

#include "tdmaxwell/sparse.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>

#include <memory>
#include <string>

namespace tdmaxwell {

/// Reciprocal 1-norm condition number below which a factored matrix is
/// treated as numerically singular.
inline constexpr double kSingularRcond = 1e-14;

/// Sparse LU with partial pivoting. The factorization is immutable after
/// construction, so concurrent `solve` calls on one instance are fine.
template <typename Scalar> class LuSolver {
public:
  using Matrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor, Index>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  /// Throws SolverError for non-square or structurally/numerically singular
  /// input (the message carries the pivot column reported by the factorization).
  explicit LuSolver(const Matrix &a);

  Vec solve(const Vec &b) const;
  Vec solve_transposed(const Vec &b) const;

  /// Hager/Higham estimate of 1 / (||B||_1 ||B^-1||_1) for the row/column
  /// equilibrated B = R A C (max |b_ij| = 1 in every row and column).
  double rcond_estimate() const;

  Index size() const { return n_; }
  double norm1() const { return norm1_; }

private:
  using ColMatrix = Eigen::SparseMatrix<Scalar, Eigen::ColMajor, Index>;
  Index n_ = 0;
  double norm1_ = 0.0;
  Eigen::VectorXd row_scale_, col_scale_;
  std::shared_ptr<Eigen::SparseLU<ColMatrix, Eigen::COLAMDOrdering<Index>>> lu_;
};

extern template class LuSolver<double>;
extern template class LuSolver<Complex>;

/// Relative residual ||Ax - b|| / (||A||_F ||x|| + ||b||).
template <typename Scalar>
double relative_residual(const Eigen::SparseMatrix<Scalar, Eigen::RowMajor, Index> &a,
                         const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> &x,
                         const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> &b) {
  const double denom = a.norm() * x.norm() + b.norm();
  if (denom == 0.0)
    return 0.0;
  return (a * x - b).norm() / denom;
}

/// Factor and solve once; verifies the residual bound 1e-10.
Vector factor_solve(const SparseMatrix &a, const Vector &b);
ComplexVector factor_solve(const ComplexSparseMatrix &a, const ComplexVector &b);

} // namespace tdmaxwell
