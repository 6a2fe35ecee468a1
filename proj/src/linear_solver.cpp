#include "tdmaxwell/linear_solver.hpp"

#include "tdmaxwell/errors.hpp"

#include <cmath>
#include <sstream>

namespace tdmaxwell {

namespace {

double sign_of(double v) { return v >= 0.0 ? 1.0 : -1.0; }
Complex sign_of(Complex v) {
  const double m = std::abs(v);
  return m > 0.0 ? v / m : Complex(1.0, 0.0);
}

} // namespace

template <typename Scalar>
LuSolver<Scalar>::LuSolver(const Matrix &a) : n_(static_cast<Index>(a.rows())) {
  if (a.rows() != a.cols())
    throw SolverError("LU: matrix is not square (" + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + ")");
  row_scale_ = Eigen::VectorXd::Zero(n_);
  col_scale_ = Eigen::VectorXd::Zero(n_);
  for (Index r = 0; r < n_; ++r)
    for (typename Matrix::InnerIterator it(a, r); it; ++it)
      row_scale_[r] = std::max(row_scale_[r], std::abs(it.value()));
  for (Index r = 0; r < n_; ++r)
    row_scale_[r] = row_scale_[r] > 0.0 ? 1.0 / row_scale_[r] : 1.0;
  for (Index r = 0; r < n_; ++r)
    for (typename Matrix::InnerIterator it(a, r); it; ++it)
      col_scale_[it.col()] = std::max(col_scale_[it.col()], row_scale_[r] * std::abs(it.value()));
  for (Index c = 0; c < n_; ++c)
    col_scale_[c] = col_scale_[c] > 0.0 ? 1.0 / col_scale_[c] : 1.0;
  {
    Eigen::VectorXd col_sums = Eigen::VectorXd::Zero(n_);
    for (Index r = 0; r < n_; ++r)
      for (typename Matrix::InnerIterator it(a, r); it; ++it)
        col_sums[it.col()] += row_scale_[r] * std::abs(it.value()) * col_scale_[it.col()];
    norm1_ = n_ > 0 ? col_sums.maxCoeff() : 0.0;
  }
  lu_ = std::make_shared<Eigen::SparseLU<ColMatrix, Eigen::COLAMDOrdering<Index>>>();
  ColMatrix col = a;
  col.makeCompressed();
  lu_->analyzePattern(col);
  lu_->factorize(col);
  if (lu_->info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "LU factorization failed (n = " << n_ << "): " << lu_->lastErrorMessage();
    throw SolverError(msg.str());
  }
}

template <typename Scalar> typename LuSolver<Scalar>::Vec LuSolver<Scalar>::solve(const Vec &b) const {
  if (b.size() != n_)
    throw InputError("LU solve: rhs length mismatch");
  Vec x = lu_->solve(b);
  return x;
}

template <typename Scalar>
typename LuSolver<Scalar>::Vec LuSolver<Scalar>::solve_transposed(const Vec &b) const {
  if (b.size() != n_)
    throw InputError("LU solve: rhs length mismatch");
  Vec x = lu_->transpose().solve(b);
  return x;
}

// Hager's algorithm with Higham's refinements (as in LAPACK xLACON).
template <typename Scalar> double LuSolver<Scalar>::rcond_estimate() const {
  if (n_ == 0)
    return 1.0;
  if (norm1_ == 0.0)
    return 0.0;
  const auto n = static_cast<Eigen::Index>(n_);
  // B^-1 x = C^-1 A^-1 R^-1 x,  B^-T x = R^-1 A^-T C^-1 x
  const auto solve = [&](const Vec &v) -> Vec {
    Vec w = v.cwiseQuotient(row_scale_.template cast<Scalar>());
    return this->solve(w).cwiseQuotient(col_scale_.template cast<Scalar>());
  };
  const auto solve_transposed = [&](const Vec &v) -> Vec {
    Vec w = v.cwiseQuotient(col_scale_.template cast<Scalar>());
    return this->solve_transposed(w).cwiseQuotient(row_scale_.template cast<Scalar>());
  };
  Vec x = Vec::Constant(n, Scalar(1.0 / static_cast<double>(n)));
  double estimate = 0.0;
  Eigen::Index last_j = -1;
  for (int iter = 0; iter < 5; ++iter) {
    Vec y = solve(x);
    if (!y.allFinite())
      return 0.0;
    const double new_estimate = y.template lpNorm<1>();
    if (iter > 0 && new_estimate <= estimate)
      break;
    estimate = new_estimate;
    Vec s(n);
    for (Eigen::Index i = 0; i < n; ++i)
      s[i] = sign_of(y[i]);
    Vec z = solve_transposed(s);
    Eigen::Index j = 0;
    z.cwiseAbs().maxCoeff(&j);
    if (iter > 0 && j == last_j)
      break;
    last_j = j;
    x.setZero();
    x[j] = Scalar(1.0);
  }
  // Higham's alternating-sign probe guards against the worst cases of the
  // plain iteration.
  Vec alt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    alt[i] = Scalar(sign * (1.0 + static_cast<double>(i) / static_cast<double>(std::max<Eigen::Index>(n - 1, 1))));
  }
  Vec y = solve(alt);
  if (!y.allFinite())
    return 0.0;
  estimate = std::max(estimate, 2.0 * y.template lpNorm<1>() / (3.0 * static_cast<double>(n)));
  return 1.0 / (norm1_ * estimate);
}

template class LuSolver<double>;
template class LuSolver<Complex>;

namespace {

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1>
checked_solve(const Eigen::SparseMatrix<Scalar, Eigen::RowMajor, Index> &a,
              const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> &b) {
  if (a.rows() != b.size())
    throw InputError("factor_solve: dimension mismatch");
  const LuSolver<Scalar> lu(a);
  auto x = lu.solve(b);
  const double res = relative_residual(a, x, b);
  if (!x.allFinite() || res > 1e-10) {
    std::ostringstream msg;
    msg << "factor_solve: relative residual " << res << " exceeds 1e-10 (rcond estimate "
        << lu.rcond_estimate() << ")";
    throw SolverError(msg.str());
  }
  return x;
}

} // namespace

Vector factor_solve(const SparseMatrix &a, const Vector &b) { return checked_solve(a, b); }

ComplexVector factor_solve(const ComplexSparseMatrix &a, const ComplexVector &b) {
  return checked_solve(a, b);
}

} // namespace tdmaxwell
