#include "doctest.h"

#include "tdmaxwell/conditioning.hpp"
#include "tdmaxwell/errors.hpp"
#include "tdmaxwell/linear_solver.hpp"
#include "tdmaxwell/sparse.hpp"

#include <filesystem>
#include <random>

using namespace tdmaxwell;

namespace {

SparseMatrix random_spd(Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i) {
    t.emplace_back(i, i, 4.0);
    for (int k = 0; k < 3; ++k) {
      const Index j = static_cast<Index>(rng() % static_cast<unsigned>(n));
      if (j == i)
        continue;
      const double v = 0.5 * u(rng);
      t.emplace_back(i, j, v);
      t.emplace_back(j, i, v);
    }
  }
  return from_triplets(n, n, t);
}

SparseMatrix diag(std::initializer_list<double> d) {
  std::vector<Triplet> t;
  Index i = 0;
  for (const double v : d) {
    t.emplace_back(i, i, v);
    ++i;
  }
  return from_triplets(i, i, t);
}

} // namespace

TEST_CASE("LU solves identity and diagonal systems exactly") {
  const LuSolver<double> id(diag({1, 1, 1}));
  Vector b(3);
  b << 1, 2, 3;
  CHECK((id.solve(b) - b).norm() == 0.0);
  const LuSolver<double> d(diag({2, 4}));
  Vector b2(2);
  b2 << 2, 8;
  CHECK(d.solve(b2)[0] == 1.0);
  CHECK(d.solve(b2)[1] == 2.0);
  CHECK(d.rcond_estimate() == doctest::Approx(1.0));
}

TEST_CASE("LU on a random SPD matrix agrees with a dense LU") {
  const SparseMatrix a = random_spd(50, 7);
  Vector b = Vector::LinSpaced(50, -1.0, 2.0);
  const Vector x = LuSolver<double>(a).solve(b);
  const Vector ref = DenseMatrix(a).partialPivLu().solve(b);
  CHECK((x - ref).norm() <= 1e-12 * ref.norm());
  const Vector xt = LuSolver<double>(a).solve_transposed(b);
  CHECK((xt - ref).norm() <= 1e-12 * ref.norm());
  CHECK(relative_residual(a, x, b) < 1e-15);
}

TEST_CASE("complex LU") {
  const SparseMatrix re = random_spd(20, 3);
  const ComplexSparseMatrix a = to_complex(re) + Complex(0, 1) * to_complex(diag({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
  ComplexVector b = ComplexVector::Constant(20, Complex(1.0, -2.0));
  const ComplexVector x = factor_solve(a, b);
  const ComplexVector ref = Eigen::MatrixXcd(a).partialPivLu().solve(b);
  CHECK((x - ref).norm() <= 1e-12 * ref.norm());
}

TEST_CASE("singular and badly scaled matrices") {
  std::vector<Triplet> t{{0, 0, 1.0}, {0, 1, 2.0}, {1, 0, 2.0}, {1, 1, 4.0}};
  CHECK_THROWS_AS(LuSolver<double>(from_triplets(2, 2, t)), SolverError);
  std::vector<Triplet> rect{{0, 0, 1.0}};
  CHECK_THROWS_AS(LuSolver<double>(from_triplets(1, 2, rect)), SolverError);
  // wildly different row scales are not mistaken for singularity
  const LuSolver<double> scaled(diag({1e-20, 1e20}));
  CHECK(scaled.rcond_estimate() > 0.5);
  Vector b(2);
  b << 1.0, 1.0;
  CHECK_THROWS_AS(LuSolver<double>(diag({1.0, 1.0, 1.0})).solve(b), InputError);
}

TEST_CASE("rcond estimate tracks the true 1-norm condition number") {
  const SparseMatrix a = random_spd(40, 11);
  const DenseMatrix d(a);
  const double cond1 = d.cwiseAbs().colwise().sum().maxCoeff() *
                       d.inverse().cwiseAbs().colwise().sum().maxCoeff();
  const double est = 1.0 / LuSolver<double>(a).rcond_estimate();
  // equilibration can only help; the estimate is a lower bound up to that
  CHECK(est <= cond1 * 1.0001);
  CHECK(est >= cond1 / 100.0);
}

TEST_CASE("MatrixMarket round trip") {
  const SparseMatrix a = random_spd(15, 5);
  const auto path = std::filesystem::temp_directory_path() / "tdmaxwell_mm_roundtrip.mtx";
  write_matrix_market(a, path);
  const SparseMatrix b = read_matrix_market(path);
  std::filesystem::remove(path);
  CHECK(DenseMatrix(a) == DenseMatrix(b));
}

TEST_CASE("select, finalize and helpers") {
  std::vector<Triplet> t{{0, 0, 1.0}, {0, 2, 0.0}, {1, 1, 2.0}, {2, 0, 3.0}, {2, 2, 4.0}};
  SparseMatrix a = from_triplets(3, 3, t);
  finalize(a);
  CHECK(a.nonZeros() == 4);
  const std::vector<Index> rows{2, 0}, cols{0, 2};
  const SparseMatrix s = select(a, rows, cols);
  CHECK(s.coeff(0, 0) == 3.0);
  CHECK(s.coeff(0, 1) == 4.0);
  CHECK(s.coeff(1, 0) == 1.0);
  CHECK(asymmetry(a) == 3.0);
  CHECK(max_abs(a) == 4.0);
  CHECK(frobenius(a) == doctest::Approx(std::sqrt(30.0)));
}

TEST_CASE("condition numbers: identity, diag(1, 1e6), singular sentinel") {
  CHECK(condition_number(diag({1, 1, 1})).cond == doctest::Approx(1.0));
  CHECK(condition_number(diag({1, 1e6})).cond == doctest::Approx(1e6));
  const auto sing = condition_number(diag({1, 0}));
  CHECK(sing.singular);
  CHECK(std::isinf(sing.cond));
  const Vector sv = singular_values(DenseMatrix(diag({3, 1, 2})));
  CHECK(sv[0] == doctest::Approx(3.0));
  CHECK(sv[2] == doctest::Approx(1.0));
}

TEST_CASE("iterative condition estimate is close to the dense value") {
  const SparseMatrix a = random_spd(200, 13);
  const double dense = condition_number(a).cond;
  ConditionOptions it;
  it.mode = ConditionMode::IterativeEstimate;
  const double est = condition_number(a, it).cond;
  CHECK(est <= dense * 1.5);
  CHECK(est >= dense / 1.5);
  ConditionOptions cap;
  cap.dense_cap = 10;
  CHECK_THROWS_AS(condition_number(a, cap), InputError);
}
