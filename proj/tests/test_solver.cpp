#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ptower/solver.hpp"
using namespace ptw;

static PhiModule rank1_phi2(const Context& c) {
  Mat m(1, Vec(1, Scalar::from_int(c, 2)));
  return PhiModule(c, m, {1});
}

TEST_CASE("solver golden rank-1") {
  auto cp = make_context({.p = 3, .precision = 64});
  const Context& c = *cp;
  PhiModule M = rank1_phi2(c);
  SparseDatum g{PsiZeroSeries::one_plus_pi(c)};
  auto res = solve_one_minus_phi(M, g, 1, 100);
  CHECK(res.stats.residual_valuation >= 64 - res.stats.loss_bound);
  CHECK(res.stats.psi_fixed_valuation >= res.stats.psi_check_threshold);
  CHECK(res.stats.loss_bound == 5);  // s=0, r=1, ceil(log_3 100)=5
  // linearity
  SparseDatum g2{PsiZeroSeries(c)};
  g2[0].add_term(2, Scalar::from_int(c, 3));
  auto r1 = solve_one_minus_phi(M, g2, 1, 100);
  SparseDatum gs{g[0] + g2[0]};
  auto rs = solve_one_minus_phi(M, gs, 1, 100);
  PowerSeries sum = res.G.comp[0] + r1.G.comp[0];
  CHECK(PowerSeries::diff_valuation(sum, rs.G.comp[0]) >= 64 - 6);
  // zero datum
  SparseDatum z{PsiZeroSeries(c)};
  auto rz = solve_one_minus_phi(M, z, 1, 100);
  CHECK(rz.G.comp[0].is_zero_at(62));
}

TEST_CASE("theta direct golden values") {
  auto cp = make_context({.p = 3, .precision = 64});
  const Context& c = *cp;
  PhiModule M = rank1_phi2(c);
  SparseDatum g{PsiZeroSeries::one_plus_pi(c)};
  // d1 = (zeta_3 - 2) v
  TangentVector d1 = tangent_eval_direct(M, g, 1);
  CycloElement want1 = CycloElement::zeta_power(c, 1, 1) -
                       CycloElement::from_scalar(c, 1, Scalar::from_int(c, 2));
  CHECK(CycloElement::diff_valuation(d1.comp[0], want1) >= 60);
  // d2 = (zeta_9 + 2 zeta_3 - 4) v
  TangentVector d2 = tangent_eval_direct(M, g, 2);
  CycloElement want2 = CycloElement::zeta_power(c, 2, 1) +
                       CycloElement::zeta_power(c, 1, 1).embed_up().mul_scalar(Scalar::from_int(c, 2)) -
                       CycloElement::from_scalar(c, 2, Scalar::from_int(c, 4));
  CHECK(CycloElement::diff_valuation(d2.comp[0], want2) >= 60);
  // trace identity: Tr d2 = (6 zeta_3 - 12) v = p (1 (x) phi) d1
  TangentVector tr = tangent_trace_down(d2);
  CycloElement want_tr = CycloElement::zeta_power(c, 1, 1).mul_scalar(Scalar::from_int(c, 6)) -
                         CycloElement::from_scalar(c, 1, Scalar::from_int(c, 12));
  CHECK(CycloElement::diff_valuation(tr.comp[0], want_tr) >= 60);
  TangentVector rhs = tangent_apply_phi(M, d1);
  rhs.comp[0] = rhs.comp[0].mul_scalar(Scalar::from_int(c, 3));
  CHECK(tangent_diff_valuation(tr, rhs) >= 60);
  // zero datum -> zero
  SparseDatum z{PsiZeroSeries(c)};
  TangentVector d0 = tangent_eval_direct(M, z, 1);
  CHECK(d0.comp[0].is_zero_at(62));
}

TEST_CASE("theta oracle equivalence rank 1") {
  auto cp = make_context({.p = 3, .precision = 64});
  const Context& c = *cp;
  PhiModule M = rank1_phi2(c);
  SparseDatum g{PsiZeroSeries::one_plus_pi(c)};
  for (int n = 1; n <= 2; ++n) {
    auto via = tangent_eval_via_series(M, g, n, 1, 56);
    TangentVector direct = tangent_eval_direct(M, g, n);
    CHECK(via.certified_agreement >= 56);
    CHECK(tangent_diff_valuation(via.value, direct) >= 56);
  }
}

TEST_CASE("theta oracle rank 2 eigenform module") {
  auto cp = make_context({.p = 3, .precision = 64});
  const Context& c = *cp;
  PhiModule M = modular_form_module(c, 2, Scalar::zero(c));
  SparseDatum g{PsiZeroSeries::one_plus_pi(c), PsiZeroSeries(c)};
  auto via = tangent_eval_via_series(M, g, 1, 1, 56);
  TangentVector direct = tangent_eval_direct(M, g, 1);
  CHECK(tangent_diff_valuation(via.value, direct) >= 56);
}

TEST_CASE("twist operators") {
  auto cp = make_context({.p = 3, .precision = 48});
  const Context& c = *cp;
  PsiZeroSeries f(c);
  f.add_term(2, Scalar::one(c));
  // Tw_{-1}: partial^(+1): coefficient of (1+pi)^2 becomes 2
  SparseDatum g{f};
  SparseDatum tw = twist_datum(g, -1);
  CHECK(Scalar::diff_valuation(tw[0].support().begin()->second, Scalar::from_int(c, 2)) >= 48);
  // round trip
  SparseDatum back = twist_datum(tw, 1);
  CHECK(PsiZeroSeries::diff_valuation(back[0], f) >= 48);
}

TEST_CASE("module eval at levels") {
  auto cp = make_context({.p = 3, .precision = 48});
  const Context& c = *cp;
  PhiModule M = rank1_phi2(c);
  int D = 30;
  // x = (1+pi) (x) v, m = 1, n = 1: coefficient zeta_3
  ModuleSeriesDense x;
  x.comp.push_back(PowerSeries::monomial(c, D, 0, Scalar::one(c)) +
                   PowerSeries::monomial(c, D, 1, Scalar::one(c)));
  auto ev = module_eval_at_level(M, x, 1, 1);
  CHECK(CycloElement::diff_valuation(ev[0], CycloElement::zeta_power(c, 1, 1)) >= 44);
  // x = t (x) v, m = 0: coefficient 0 at any level >= 1
  ModuleSeriesDense xt;
  xt.comp.push_back(PowerSeries::log_one_plus_pi(c, D));
  CHECK(module_eval_at_level(M, xt, 0, 1)[0].is_zero_at(8));
  // vanishing built in: x = Phi_{p}(1+pi) * h
  ModuleSeriesDense xq;
  xq.comp.push_back(PowerSeries::cyclo_q(c, 1, D) * PowerSeries::monomial(c, D, 2, Scalar::from_int(c, 5)));
  CHECK(module_eval_at_level(M, xq, 0, 1)[0].is_zero_at(44));
  // n = 0 variant on x = (1+pi) (x) v, m=0: (1 - p^(-1) phi^(-1)) (1) = 1 - 1/(2p)
  ModuleSeriesDense x0;
  x0.comp.push_back(PowerSeries::monomial(c, D, 0, Scalar::one(c)) +
                    PowerSeries::monomial(c, D, 1, Scalar::one(c)));
  auto e0 = module_eval_at_level(M, x0, 0, 0);
  Scalar want = Scalar::one(c) - Scalar::from_int(c, 2).inv().mul_p_pow(-1);
  CHECK(Scalar::diff_valuation(e0[0].coeff(0), want) >= 40);
}
