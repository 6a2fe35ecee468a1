#include "doctest.h"

#include "tdmaxwell/errors.hpp"
#include "tdmaxwell/frequency_domain.hpp"
#include "tdmaxwell/runner.hpp"

#include <cmath>
#include <numbers>

using namespace tdmaxwell;

namespace {

constexpr Complex kI{0.0, 1.0};

/// Two stacked slabs between a grounded bottom and a driven top.
struct Divider {
  Mesh mesh;
  DofMap dofs;
  CellFields fields;
  AssembledOperators ops;
};

Divider divider(double s1, double e1, double s2, double e2) {
  Divider d;
  d.mesh = build_lattice_mesh({std::vector<double>{0, 1}, {0, 1}, {0, 0.3, 1}},
                              {{1, Point(0, 0, 0.3), Point(1, 1, 1)}});
  BoundaryConditions bc;
  bc.scalar.push_back({{BoxSide::ZMin, std::nullopt}, ScalarValue::Ground});
  bc.scalar.push_back({{BoxSide::ZMax, std::nullopt}, ScalarValue::Drive});
  d.dofs = classify_dofs(d.mesh, bc);
  MaterialSpec m;
  m[0].sigma = s1;
  m[0].eps = e1;
  m[1].sigma = s2;
  m[1].eps = e2;
  d.fields = cell_fields(d.mesh, m);
  d.ops = build_operators(d.mesh, d.dofs, d.fields);
  return d;
}

ComplexVector drive(const DofMap &dofs, Complex v) {
  ComplexVector g(static_cast<Eigen::Index>(dofs.dirichlet_nodes.size()));
  for (std::size_t i = 0; i < dofs.dirichlet_nodes.size(); ++i)
    g[static_cast<Eigen::Index>(i)] = dofs.dirichlet_values[i] == ScalarValue::Drive ? v : 0.0;
  return g;
}

} // namespace

TEST_CASE("two-layer divider matches the series admittance formula") {
  const double w = 2.0 * std::numbers::pi * 50.0;
  const Divider d = divider(2.0, 1e-3, 0.5, 4e-3);
  const ComplexVector u = solve_eqs_freq(d.ops, w, drive(d.dofs, 1.0),
                                         ComplexVector::Zero(d.dofs.num_free_nodes()));
  const Complex y1 = 2.0 + kI * w * 1e-3, y2 = 0.5 + kI * w * 4e-3;
  const Complex z1 = 0.3 / y1, z2 = 0.7 / y2;
  const Complex expect = z1 / (z1 + z2);
  for (Eigen::Index i = 0; i < u.size(); ++i)
    CHECK(std::abs(u[i] - expect) < 1e-12);

  // omega = 0 yields a real solution
  const ComplexVector u0 = solve_eqs_freq(d.ops, 0.0, drive(d.dofs, 1.0),
                                          ComplexVector::Zero(d.dofs.num_free_nodes()));
  CHECK(u0.imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK(u0.real()[0] == doctest::Approx((0.3 / 2.0) / (0.3 / 2.0 + 0.7 / 0.5)));

  // conjugate symmetry
  const ComplexVector um = solve_eqs_freq(d.ops, -w, drive(d.dofs, 1.0),
                                          ComplexVector::Zero(d.dofs.num_free_nodes()));
  CHECK((um - u.conjugate()).norm() < 1e-13);

  // zero drive gives zero, insulating static problem is singular
  CHECK(solve_eqs_freq(d.ops, w, drive(d.dofs, 0.0),
                       ComplexVector::Zero(d.dofs.num_free_nodes()))
            .norm() == 0.0);
  const Divider ins = divider(0.0, 1e-3, 0.0, 1e-3);
  CHECK_THROWS_AS(solve_eqs_freq(ins.ops, 0.0, drive(ins.dofs, 1.0),
                                 ComplexVector::Ones(ins.dofs.num_free_nodes())),
                  SolverError);
}

TEST_CASE("stabilized frequency matrix at omega = 0 equals the static update matrix") {
  const Problem p = build_problem(preset_scenario("academic-bars", 1));
  const ComplexSparseMatrix fd = assemble_stabilized_freq_matrix(p.ops, p.split, p.constraints, 0.0);
  const SparseMatrix td = update_matrix(p, StepperSpec{}, INFINITY, true);
  const Eigen::MatrixXcd diff = Eigen::MatrixXcd(fd) - DenseMatrix(td).cast<Complex>();
  CHECK(diff.cwiseAbs().maxCoeff() <= 1e-13 * max_abs(td));

  // unstabilized frequency matrix: K_nu + i w M_sigma - w^2 M_eps
  const double w = 3.0;
  const ComplexSparseMatrix m = assemble_mqs_freq_matrix(p.ops, w);
  const Eigen::MatrixXcd expect = DenseMatrix(p.ops.k_nu).cast<Complex>() +
                                  kI * w * DenseMatrix(p.ops.m_sigma).cast<Complex>() -
                                  w * w * DenseMatrix(p.ops.m_eps).cast<Complex>();
  CHECK((Eigen::MatrixXcd(m) - expect).cwiseAbs().maxCoeff() <= 1e-14 * expect.cwiseAbs().maxCoeff());
}

TEST_CASE("frequency solution satisfies the divergence constraint") {
  const Scenario sc = preset_scenario("academic-bars", 1);
  const Problem p = build_problem(sc);
  const PhasorSolution ph = solve_frequency_domain(p, sc);
  const ComplexVector c = p.constraints.d_tilde.cast<Complex>() * ph.a +
                          Complex(0, ph.omega) * (p.constraints.d_hat.cast<Complex>() * ph.a);
  CHECK(c.norm() <= 1e-10 * std::max(1.0, frobenius(p.constraints.d_tilde) * ph.a.norm()));
  CHECK(ph.a.norm() > 0.0);
}

TEST_CASE("time reconstruction and electric field") {
  ComplexVector x(2);
  x << Complex(1.0, 0.0), Complex(0.0, -2.0);
  const double w = 2.0;
  const Vector r = reconstruct_time(x, w, 0.3);
  CHECK(r[0] == doctest::Approx(std::cos(0.6)));
  CHECK(r[1] == doctest::Approx(2.0 * std::sin(0.6)));

  std::vector<Triplet> t{{0, 0, -1.0}, {0, 1, 1.0}};
  const SparseMatrix g = from_triplets(1, 2, t);
  Vector u(2);
  u << 1.0, 4.0;
  CHECK(electric_field_edges(g, u, Vector::Constant(1, 0.5))[0] == -3.5);
  ComplexVector uc = u.cast<Complex>();
  const ComplexVector ec = electric_field_edges(g, uc, ComplexVector::Constant(1, 1.0), w);
  CHECK(std::abs(ec[0] - Complex(-3.0, -2.0)) < 1e-15);
}

TEST_CASE("relative L2 error metric") {
  std::vector<Triplet> t{{0, 0, 1.0}, {1, 1, 1.0}};
  const SparseMatrix m = from_triplets(2, 2, t);
  const std::vector<Vector> ref{Vector::Constant(2, 1.0), Vector::Constant(2, 2.0)};
  const std::vector<Vector> same = ref;
  for (const double e : relative_l2_error(same, ref, m))
    CHECK(e == 0.0);
  const std::vector<Vector> off{Vector::Constant(2, 1.0), Vector::Constant(2, 2.2)};
  CHECK(relative_l2_error(off, ref, m)[1] == doctest::Approx(0.1));
  const std::vector<Vector> zero{Vector::Zero(2), Vector::Zero(2)};
  CHECK_THROWS_AS(relative_l2_error(off, zero, m), InputError);
  CHECK_THROWS_AS(relative_l2_error(off, std::vector<Vector>{ref[0]}, m), InputError);

  // phasor form: reference cos(w t)
  const double w = 1.0;
  const std::vector<double> times{0.0, 1.0};
  const std::vector<Vector> fields{Vector::Constant(2, 1.0), Vector::Constant(2, std::cos(1.0))};
  for (const double e : relative_l2_error(fields, ComplexVector::Constant(2, 1.0), w, times, m))
    CHECK(e < 1e-15);
}
