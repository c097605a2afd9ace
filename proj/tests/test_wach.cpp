#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ptower/wach.hpp"
#include <cstdio>
using namespace ptw;

TEST_CASE("trivial rank 1") {
  auto cp = make_context({.p = 3, .precision = 48});
  const Context& c = *cp;
  WachData w{Mat(1, Vec(1, Scalar::from_int(c, 2))), {0}};
  auto sol = solve_wach_matrix(c, w, 12);
  CHECK(sol.residual_pi_order >= 12);
  // weights all zero: M = 1 (P = A = A0)
  CHECK(Scalar::diff_valuation(sol.m[0][0][0], Scalar::one(c)) >= sol.check_digits);
  for (int t = 1; t < 12; ++t) CHECK(sol.m[0][0][t].valuation() >= sol.check_digits);
}

TEST_CASE("worked d=2 example") {
  auto cp = make_context({.p = 3, .precision = 48});
  const Context& c = *cp;
  Mat a0(2, Vec(2, Scalar::zero(c)));
  a0[0][1] = Scalar::one(c);
  a0[1][0] = Scalar::one(c);
  WachData w{a0, {0, 1}};
  auto sol = solve_wach_matrix(c, w, 16);
  CHECK(sol.residual_pi_order >= 16);
  CHECK(sol.congruence_digits >= sol.check_digits);
  // first iterate is diag(q/p, mu^-1); fixed point keeps M diagonal
  CHECK(sol.m[0][1][0].is_zero());
  CHECK(sol.m[1][0][0].is_zero());
  // M(0) = I
  CHECK(Scalar::diff_valuation(sol.m[0][0][0], Scalar::one(c)) >= sol.check_digits);
  CHECK(Scalar::diff_valuation(sol.m[1][1][0], Scalar::one(c)) >= sol.check_digits);
  // hand check of the first iterate: P^-1 A = diag(q/p, mu^-1)
  auto pinv = wach_matrix_p_inverse(c, w, 24);
  Mat a = wach_matrix_a(c, w);
  PowerSeries q_over_p = PowerSeries::cyclo_q(c, 1, 24).mul_scalar(Scalar::p_power(c, -1));
  PowerSeries muinv = PowerSeries::mu_unit(c, 24).inv();
  // (P^-1 phi(I) A)_{00} = pinv_{01} a_{10} etc.
  PowerSeries m00 = pinv[0][1].mul_scalar(a[1][0]);
  PowerSeries m11 = pinv[1][0].mul_scalar(a[0][1]);
  CHECK(PowerSeries::diff_valuation(m00, q_over_p) >= 40);
  CHECK(PowerSeries::diff_valuation(m11, muinv) >= 44);
  // log-matrix divisibility at levels 1 and 2
  CHECK(wach_log_divisibility_check(c, sol, 1));
  CHECK(wach_log_divisibility_check(c, sol, 2));
  // corrupted solution: break the congruence M = I mod pi^(r_d)
  WachSolution bad = sol;
  bad.m[0][0].at(0) = bad.m[0][0][0] + Scalar::one(c);
  CHECK(!wach_log_divisibility_check(c, bad, 1));
}

TEST_CASE("divergence hunt") {
  auto cp = make_context({.p = 3, .precision = 32});
  const Context& c = *cp;
  // weights {0,2} with an upper-triangular mixing A0: the degree-1 mode of the
  // iteration expands by p^(1 - spread) = p^-1
  Mat a0(2, Vec(2, Scalar::zero(c)));
  a0[0][0] = Scalar::one(c);
  a0[0][1] = Scalar::one(c);
  a0[1][1] = Scalar::one(c);
  WachData w{a0, {0, 2}};
  bool diverged = false;
  try {
    auto sol = solve_wach_matrix(c, w, 12);
    printf("converged: iters=%d resorder=%d\n", sol.iterations, sol.residual_pi_order);
  } catch (const Error& e) {
    diverged = (e.code() == Status::kDivergenceDetected);
    printf("diverged: %s\n", e.what());
  }
  CHECK(diverged);
}
