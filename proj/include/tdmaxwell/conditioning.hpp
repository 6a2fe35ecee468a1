#pragma once

#include "tdmaxwell/sparse.hpp"

#include <limits>

namespace tdmaxwell {

enum class ConditionMode { DenseSvd, IterativeEstimate };

struct ConditionReport {
  double cond = 0.0; ///< +inf when numerically singular
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  bool singular = false;
};

struct ConditionOptions {
  ConditionMode mode = ConditionMode::DenseSvd;
  Index dense_cap = 6000;
  int max_iterations = 2000;
  double tolerance = 1e-9;
  /// sigma_min < singular_ratio * sigma_max is reported as cond = +inf.
  double singular_ratio = 1e-14;
};

/// All singular values in descending order (divide-and-conquer SVD).
Vector singular_values(const DenseMatrix &a);

ConditionReport condition_number(const SparseMatrix &a, const ConditionOptions &options = {});

} // namespace tdmaxwell
