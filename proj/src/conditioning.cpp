#include "tdmaxwell/conditioning.hpp"

#include "tdmaxwell/errors.hpp"
#include "tdmaxwell/linear_solver.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <optional>
#include <random>
#include <string>

namespace tdmaxwell {

Vector singular_values(const DenseMatrix &a) {
  if (a.rows() == 0 || a.cols() == 0)
    return Vector();
  Eigen::BDCSVD<DenseMatrix> svd(a);
  if (svd.info() != Eigen::Success)
    throw SolverError("dense SVD did not converge");
  return svd.singularValues();
}

namespace {

ConditionReport make_report(double smin, double smax, double ratio) {
  ConditionReport r;
  r.sigma_min = smin;
  r.sigma_max = smax;
  r.singular = !(smin >= ratio * smax) || smax == 0.0;
  r.cond = r.singular ? std::numeric_limits<double>::infinity() : smax / smin;
  return r;
}

double power_iteration_smax(const SparseMatrix &a, const ConditionOptions &opt) {
  const SparseMatrix at = a.transpose();
  std::mt19937 rng(12345);
  std::normal_distribution<double> dist;
  Vector x(a.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x[i] = dist(rng);
  x.normalize();
  double lambda = 0.0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    Vector y = at * (a * x);
    const double next = x.dot(y);
    const double ny = y.norm();
    if (ny == 0.0)
      return 0.0;
    x = y / ny;
    if (it > 0 && std::abs(next - lambda) <= opt.tolerance * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

std::optional<double> inverse_iteration_smin(const SparseMatrix &a, const ConditionOptions &opt) {
  std::optional<LuSolver<double>> lu;
  try {
    lu.emplace(a);
  } catch (const SolverError &) {
    return std::nullopt;
  }
  std::mt19937 rng(54321);
  std::normal_distribution<double> dist;
  Vector x(a.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x[i] = dist(rng);
  x.normalize();
  double mu = 0.0; // estimate of 1 / sigma_min^2
  for (int it = 0; it < opt.max_iterations; ++it) {
    Vector y = lu->solve_transposed(lu->solve(x));
    if (!y.allFinite())
      return 0.0;
    const double next = x.dot(y);
    const double ny = y.norm();
    if (ny == 0.0)
      return std::nullopt;
    x = y / ny;
    if (it > 0 && std::abs(next - mu) <= opt.tolerance * std::abs(next)) {
      mu = next;
      break;
    }
    mu = next;
  }
  if (!(mu > 0.0) || !std::isfinite(mu))
    return 0.0;
  return 1.0 / std::sqrt(mu);
}

} // namespace

ConditionReport condition_number(const SparseMatrix &a, const ConditionOptions &options) {
  if (a.rows() != a.cols())
    throw InputError("condition_number: matrix not square");
  if (a.rows() == 0)
    return make_report(1.0, 1.0, options.singular_ratio);
  if (options.mode == ConditionMode::DenseSvd) {
    if (a.rows() > options.dense_cap)
      throw InputError("condition_number: dense mode limited to n <= " +
                       std::to_string(options.dense_cap) + " (n = " +
                       std::to_string(a.rows()) + ")");
    const Vector s = singular_values(DenseMatrix(a));
    return make_report(s[s.size() - 1], s[0], options.singular_ratio);
  }
  const double smax = power_iteration_smax(a, options);
  const auto smin = inverse_iteration_smin(a, options);
  return make_report(smin.value_or(0.0), smax, options.singular_ratio);
}

} // namespace tdmaxwell
