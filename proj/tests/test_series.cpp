#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ptower/series.hpp"
#include "ptower/sparse.hpp"
using namespace ptw;

TEST_CASE("phi/psi/partial basics at p=3") {
  auto cp = make_context({.p = 3, .precision = 40});
  const Context& c = *cp;
  int D = 60;
  // phi(pi) = 3pi + 3pi^2 + pi^3
  PowerSeries pi = PowerSeries::monomial(c, D, 1, Scalar::one(c));
  PowerSeries fpi = pi.phi();
  CHECK(fpi[1].valuation() == 1);
  CHECK(Scalar::diff_valuation(fpi[1], Scalar::from_int(c, 3)) >= 40);
  CHECK(Scalar::diff_valuation(fpi[2], Scalar::from_int(c, 3)) >= 40);
  CHECK(Scalar::diff_valuation(fpi[3], Scalar::one(c)) >= 40);
  for (int i = 4; i < 10; ++i) CHECK(fpi[i].is_zero());
  // q = Phi_3(1+pi) = 3 + 3pi + pi^2 and phi(pi) = q*pi
  PowerSeries q = PowerSeries::cyclo_q(c, 1, D);
  CHECK(Scalar::diff_valuation(q[0], Scalar::from_int(c, 3)) >= 40);
  CHECK(PowerSeries::diff_valuation(fpi, q * pi) >= 40);
  // psi(phi(f)) = f
  PowerSeries f(c, 20);
  for (int i = 0; i < 20; ++i) f.at(i) = Scalar::from_int(c, 7 * i * i - 5 * i + 2);
  PowerSeries pf = f.truncate(D).phi();
  CHECK(PowerSeries::diff_valuation(pf.psi().truncate(20), f) >= 40);
  // psi((1+pi)^3) = 1+pi ; psi(pi) = -1 ; psi(q) = 1
  PowerSeries onep = PowerSeries::monomial(c, D, 0, Scalar::one(c)) + pi;
  PowerSeries onep3 = onep * onep * onep;
  PowerSeries r = onep3.psi();
  CHECK(Scalar::diff_valuation(r[0], Scalar::one(c)) >= 40);
  CHECK(Scalar::diff_valuation(r[1], Scalar::one(c)) >= 40);
  CHECK(Scalar::diff_valuation(pi.psi()[0], Scalar::from_int(c, -1)) >= 40);
  CHECK(Scalar::diff_valuation(q.psi()[0], Scalar::one(c)) >= 40);
  // partial t = 1, phi(t) = p t
  PowerSeries t = PowerSeries::log_one_plus_pi(c, D);
  PowerSeries dt = t.partial(1);
  CHECK(Scalar::diff_valuation(dt[0], Scalar::one(c)) >= 40);
  for (int i = 1; i < 20; ++i) CHECK(dt[i].valuation() >= 40);
  CHECK(PowerSeries::diff_valuation(t.phi().truncate(20), t.mul_scalar(Scalar::from_int(c,3)).truncate(20)) >= 36);
  // mu = 1 mod pi, mu * (q - pi^2)/3 = 1
  PowerSeries mu = PowerSeries::mu_unit(c, D);
  CHECK(Scalar::diff_valuation(mu[0], Scalar::one(c)) >= 40);
  // partial commutation: partial phi = p phi partial
  PowerSeries g(c, D);
  for (int i = 0; i < 9; ++i) g.at(i) = Scalar::from_int(c, 2 * i + 1);
  CHECK(PowerSeries::diff_valuation(g.phi().partial(1), g.partial(1).phi().mul_scalar(Scalar::from_int(c,3))) >= 40);
}


TEST_CASE("eval at zeta levels") {
  auto cp = make_context({.p = 3, .precision = 40});
  const Context& c = *cp;
  int D = 60;
  PowerSeries q2 = PowerSeries::cyclo_q(c, 2, D);
  CycloElement z = q2.eval_at_level(2);
  CHECK(z.is_zero_at(40));
  PowerSeries q1 = PowerSeries::cyclo_q(c, 1, D);
  CHECK(q1.eval_at_level(1).is_zero_at(40));
  CHECK(!q1.eval_at_level(2).is_zero_at(40));  // Phi_3(zeta_9) != 0
  // 1+pi at level 2 -> zeta_9
  PowerSeries onep = PowerSeries::monomial(c, D, 0, Scalar::one(c)) + PowerSeries::monomial(c, D, 1, Scalar::one(c));
  CHECK(CycloElement::diff_valuation(onep.eval_at_level(2), CycloElement::zeta_power(c, 2, 1)) >= 40);
}

