#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ptower/qsystem.hpp"
using namespace ptw;

TEST_CASE("q-system rank 1 golden") {
  auto cp = make_context({.p = 3, .precision = 64});
  const Context& c = *cp;
  Mat m(1, Vec(1, Scalar::from_int(c, 2)));
  PhiModule M(c, m, {1});
  SparseDatum g{PsiZeroSeries::one_plus_pi(c)};
  // Q = X - 2p annihilates p*phi (phi = 2)
  std::vector<Scalar> Q{Scalar::from_int(c, -6), Scalar::one(c)};
  auto qs = build_q_system(M, g, Q, 0, 3, 1, 0);
  auto rep = verify_q_system(qs, 56);
  CHECK(rep.all_ok());
  REQUIRE(rep.trace_step_ok.size() == 2);
  REQUIRE(rep.q_relation_ok.size() == 2);
}


TEST_CASE("q-system eigenform a_p = 0") {
  auto cp = make_context({.p = 3, .precision = 64});
  const Context& c = *cp;
  PhiModule M = modular_form_module(c, 2, Scalar::zero(c));
  SparseDatum g{PsiZeroSeries::one_plus_pi(c), PsiZeroSeries(c)};
  // Q = X^2 + p annihilates p*phi since (p phi)^2 = -p
  std::vector<Scalar> Q{Scalar::p_power(c, 1), Scalar::zero(c), Scalar::one(c)};
  auto qs = build_q_system(M, g, Q, 0, 3, 1, 0);
  auto rep = verify_q_system(qs, 56);
  CHECK(rep.all_ok());
  REQUIRE(rep.q_relation_ok.size() == 1);  // n = 1 with deg Q = 2, cap 3
  // corrupted family: perturb d_1 by a constant (visible to trace and relation)
  auto bad = qs;
  bad.family[0].comp[0] = bad.family[0].comp[0] + CycloElement::one(c, 1);
  auto brep = verify_q_system(bad, 56);
  CHECK(!brep.all_ok());
  CHECK(!brep.trace_step_ok[0]);
  CHECK(!brep.q_relation_ok[0]);
  // wrong polynomial rejected
  std::vector<Scalar> Qbad{Scalar::one(c), Scalar::zero(c), Scalar::one(c)};
  CHECK_THROWS_AS(build_q_system(M, g, Qbad, 0, 3, 1, 0), Error);
}

