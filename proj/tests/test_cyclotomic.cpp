#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ptower/series.hpp"
#include "ptower/sparse.hpp"
using namespace ptw;

TEST_CASE("cyclotomic traces and decomposition") {
  auto cp = make_context({.p = 3, .precision = 40});
  const Context& c = *cp;
  CycloElement z9 = CycloElement::zeta_power(c, 2, 1);
  CHECK(z9.trace_down().is_zero_at(40));              // Tr(zeta_9) = 0
  CycloElement z3 = CycloElement::zeta_power(c, 1, 1);
  CHECK(CycloElement::diff_valuation(z3.trace_down(), CycloElement::from_scalar(c, 0, Scalar::from_int(c, -1))) >= 40);
  CycloElement c5 = CycloElement::from_scalar(c, 2, Scalar::from_int(c, 5));
  CHECK(CycloElement::diff_valuation(c5.trace_down(), CycloElement::from_scalar(c, 1, Scalar::from_int(c, 15))) >= 40);
  // embed then trace = multiply by p
  CycloElement e = z3.embed_up();
  CHECK(e.level() == 2);
  CHECK(CycloElement::diff_valuation(e.trace_down(), z3.mul_scalar(Scalar::from_int(c, 3))) >= 40);
  // zeta_9^3 embeds zeta_3
  CHECK(CycloElement::diff_valuation(z3.embed_up(), CycloElement::zeta_power(c, 2, 3)) >= 40);
  // decompose zeta_9: [i=2] = zeta_9, [1] = 0
  auto comps = z9.decompose();
  CHECK(CycloElement::diff_valuation(comps[2], z9) >= 40);
  CHECK(comps[1].is_zero_at(40));
  // decompose a base constant at level 3
  CycloElement k = CycloElement::from_scalar(c, 3, Scalar::from_int(c, 7));
  auto comps2 = k.decompose();
  CHECK(comps2[3].is_zero_at(40));
  CHECK(comps2[2].is_zero_at(40));
  CHECK(CycloElement::diff_valuation(comps2[1], CycloElement::from_scalar(c, 1, Scalar::from_int(c, 7))) >= 40);
  // random element: components re-embed and sum to the input
  CycloElement x = CycloElement::zero(c, 3);
  for (int i = 0; i < x.degree(); ++i) x.set_coeff(i, Scalar::from_int(c, (i * 37) % 19 - 9));
  auto cs = x.decompose();
  CycloElement sum = cs[1].embed_to(3);
  for (int i = 2; i <= 3; ++i) sum = sum + cs[i].embed_to(3);
  CHECK(CycloElement::diff_valuation(sum, x) >= 40);
  for (int i = 2; i <= 3; ++i) CHECK(cs[i].is_trace_zero(40));
}


TEST_CASE("sparse psi-zero series") {
  auto cp = make_context({.p = 3, .precision = 40});
  const Context& c = *cp;
  PsiZeroSeries f(c);
  f.add_term(1, Scalar::one(c));
  f.add_term(2, Scalar::from_int(c, 5));
  // to_series then psi == 0
  PowerSeries dense = f.to_series(60);
  CHECK(dense.psi().is_zero_at(40));
  // partial_pow round trip
  auto g = f.partial_pow(2).partial_pow(-2);
  CHECK(PsiZeroSeries::diff_valuation(f, g) >= 40);
  // iota at level 2: trace-zero
  CycloElement img = f.eval_at_level(2);
  CHECK(img.is_trace_zero(40));
  CHECK(CycloElement::diff_valuation(dense.eval_at_level(2), img) >= 20);
  // preimage round trip
  PsiZeroSeries pre = PsiZeroSeries::tracezero_preimage(img);
  CHECK(CycloElement::diff_valuation(pre.eval_at_level(2), img) >= 32);
  // level-1: preimage of zeta_3 + zeta_3^2
  CycloElement y = CycloElement::zeta_power(c, 1, 1) + CycloElement::zeta_power(c, 1, 2);
  PsiZeroSeries pre1 = PsiZeroSeries::tracezero_preimage(y);
  CHECK(pre1.support().size() == 2);
}
