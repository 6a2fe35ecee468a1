#include "doctest.h"
#include "helpers.hpp"

#include "tdmaxwell/errors.hpp"
#include "tdmaxwell/time_integration.hpp"

#include <cmath>
#include <numbers>

using namespace tdmaxwell;

namespace {

Vector scalar(double v) { return Vector::Constant(1, v); }

/// Final value of C u' + G u = sin(w t), u(0) = 0, trapezoidal rule.
double rc_trapezoid(double g, double c, double w, double t_end, int steps) {
  const auto ops = testutil::rc_operators(g, c);
  const double dt = t_end / steps;
  const EqsStepper st(ops, dt);
  const Vector none(0);
  Vector u = scalar(0.0);
  for (int n = 0; n < steps; ++n)
    u = st.step(u, none, none, scalar(std::sin(w * n * dt)), scalar(std::sin(w * (n + 1) * dt)));
  return u[0];
}

double rc_exact(double g, double c, double w, double t) {
  const double tau = g / c;
  const double amp = 1.0 / (c * (tau * tau + w * w));
  return amp * (tau * std::sin(w * t) - w * std::cos(w * t) + w * std::exp(-tau * t));
}

/// Newmark run of m a'' + c a' + k a = 0 from a(0) = 1, v(0) = 0.
NewmarkState oscillator(double m, double c, double k, double dt, int steps) {
  const auto ops = testutil::oscillator_operators(m, c, k);
  NewmarkParams p;
  p.dt = dt;
  const NewmarkSystem sys(assemble_update_matrix(ops, p), p);
  NewmarkState s{scalar(1.0), scalar(0.0), Vector()};
  s.acc = initial_acceleration(ops, s.a, s.v, scalar(0.0));
  for (int n = 0; n < steps; ++n)
    s = sys.step(s, newmark_rhs(ops, s, scalar(0.0), p));
  return s;
}

} // namespace

TEST_CASE("trapezoidal EQS: one step on C u' + G u = 0 with C = G = 1, dt = 1 gives u/3") {
  const auto ops = testutil::rc_operators(1.0, 1.0);
  const Vector none(0);
  const Vector u = eqs_step(ops, 1.0, scalar(1.0), none, none, scalar(0.0), scalar(0.0));
  CHECK(u[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("trapezoidal EQS converges at second order on the RC problem") {
  const double g = 2.0, c = 0.5, w = 3.0, t = 1.0;
  const double exact = rc_exact(g, c, w, t);
  double prev = std::abs(rc_trapezoid(g, c, w, t, 20) - exact);
  for (int steps = 40; steps <= 160; steps *= 2) {
    const double err = std::abs(rc_trapezoid(g, c, w, t, steps) - exact);
    CHECK(std::log2(prev / err) == doctest::Approx(2.0).epsilon(0.05));
    prev = err;
  }
}

TEST_CASE("EQS stepper rejects bad input") {
  const auto ops = testutil::rc_operators(1.0, 1.0);
  CHECK_THROWS_AS(EqsStepper(ops, 0.0), InputError);
  CHECK_THROWS_AS(EqsStepper(ops, INFINITY), InputError);
  const EqsStepper st(ops, 1.0);
  const Vector none(0);
  CHECK_THROWS_AS(st.step(Vector::Zero(2), none, none, scalar(0), scalar(0)), InputError);
  const auto zero = testutil::rc_operators(0.0, 0.0);
  CHECK_THROWS_AS(EqsStepper(zero, 1.0), SolverError);
}

TEST_CASE("update matrix coefficients and static limit") {
  const auto ops = testutil::oscillator_operators(1.0, 1.0, 1.0);
  NewmarkParams p;
  p.dt = 1.0;
  // K + 2 M_sigma + 4 M_eps for beta = 1/4, gamma = 1/2, dt = 1
  CHECK(assemble_update_matrix(ops, p).coeff(0, 0) == 7.0);
  p.dt = INFINITY;
  CHECK(assemble_update_matrix(ops, p).coeff(0, 0) == 1.0);
  p.beta = 0.0;
  CHECK_THROWS_AS(p.validate(), InputError);
  p.beta = 0.25;
  p.gamma = 1.5;
  CHECK_THROWS_AS(p.validate(), InputError);
}

TEST_CASE("undamped Newmark oscillator conserves energy") {
  const double m = 2.0, k = 5.0;
  const auto s = oscillator(m, 0.0, k, 0.01, 5000);
  const double e0 = 0.5 * k;
  const double e = 0.5 * m * s.v[0] * s.v[0] + 0.5 * k * s.a[0] * s.a[0];
  CHECK(std::abs(e - e0) <= 1e-11 * e0);
}

TEST_CASE("damped Newmark oscillator converges at second order") {
  const double m = 1.0, c = 0.4, k = 9.0, t = 2.0;
  const double wd = std::sqrt(k / m - c * c / (4 * m * m)), z = c / (2 * m);
  const double exact = std::exp(-z * t) * (std::cos(wd * t) + z / wd * std::sin(wd * t));
  double prev = std::abs(oscillator(m, c, k, t / 40, 40).a[0] - exact);
  for (int steps = 80; steps <= 320; steps *= 2) {
    const double err = std::abs(oscillator(m, c, k, t / steps, steps).a[0] - exact);
    CHECK(std::log2(prev / err) == doctest::Approx(2.0).epsilon(0.05));
    prev = err;
  }
}

TEST_CASE("Newmark kinematics satisfy the update identities") {
  NewmarkParams p;
  p.dt = 0.3;
  const NewmarkState s{scalar(1.0), scalar(-2.0), scalar(0.5)};
  const auto n = newmark_kinematics(s, scalar(0.7), p);
  const double dt = p.dt;
  CHECK(n.a[0] == doctest::Approx(s.a[0] + dt * s.v[0] +
                                  dt * dt * ((0.5 - p.beta) * s.acc[0] + p.beta * n.acc[0])));
  CHECK(n.v[0] == doctest::Approx(s.v[0] + dt * ((1 - p.gamma) * s.acc[0] + p.gamma * n.acc[0])));
}

TEST_CASE("singular update matrix at the static limit is reported") {
  AssembledOperators ops;
  std::vector<Triplet> k{{0, 0, 1.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 1.0}};
  std::vector<Triplet> id{{0, 0, 1.0}, {1, 1, 1.0}};
  ops.k_nu = from_triplets(2, 2, k);
  ops.m_eps = from_triplets(2, 2, id);
  ops.m_sigma = SparseMatrix(2, 2);
  NewmarkParams p;
  p.dt = 1e12;
  CHECK_THROWS_AS(NewmarkSystem(assemble_update_matrix(ops, p), p), SolverError);
}

TEST_CASE("j_{n+1} uses a central difference of u and the conduction term") {
  auto ops = testutil::oscillator_operators(1.0, 1.0, 1.0);
  std::vector<Triplet> gs{{0, 0, -1.0}, {0, 1, 1.0}}, ge{{0, 0, -2.0}, {0, 1, 2.0}};
  ops.g_sigma = from_triplets(1, 2, gs);
  ops.g_eps = from_triplets(1, 2, ge);
  Vector u1(2), u0(2);
  u1 << 0.0, 3.0;
  u0 << 0.0, 1.0;
  const Vector j = compute_j_np1(ops, u1, u0, scalar(10.0), 0.5);
  // 10 - 2 * (2 / 1) - 3
  CHECK(j[0] == doctest::Approx(3.0));
  CHECK_THROWS_AS(compute_j_np1(ops, scalar(1.0), u0, scalar(0.0), 0.5), InputError);
}
