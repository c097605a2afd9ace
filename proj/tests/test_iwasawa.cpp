#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ptower/iwasawa.hpp"
using namespace ptw;

TEST_CASE("distinguished polynomials p=3") {
  auto cp = make_context({.p = 3, .precision = 40});
  const Context& c = *cp;
  // omega_{1,0} = gamma^3 - 1 = (g-1)^3 + 3(g-1)^2 + 3(g-1)
  IwasawaPoly w10 = IwasawaPoly::omega(c, 1, 0);
  CHECK(w10.degree() == 3);
  CHECK(Scalar::diff_valuation(w10.coeff(0), Scalar::zero(c)) >= 40);
  CHECK(Scalar::diff_valuation(w10.coeff(1), Scalar::from_int(c, 3)) >= 40);
  CHECK(Scalar::diff_valuation(w10.coeff(2), Scalar::from_int(c, 3)) >= 40);
  CHECK(Scalar::diff_valuation(w10.coeff(3), Scalar::one(c)) >= 40);
  // Phi_{1,0}(1) = 3
  IwasawaPoly f10 = IwasawaPoly::cyclo_factor(c, 1, 0);
  CHECK(Scalar::diff_valuation(f10.scalar_value(Scalar::one(c)), Scalar::from_int(c, 3)) >= 40);
  // omega_{n,m} = Phi_{n,m} * omega_{n-1,m}
  for (int n = 1; n <= 3; ++n) {
    for (int64_t m : {0LL, 1LL, -2LL}) {
      IwasawaPoly lhs = IwasawaPoly::omega(c, n, m);
      IwasawaPoly rhs = IwasawaPoly::cyclo_factor(c, n, m) * IwasawaPoly::omega(c, n - 1, m);
      CHECK(IwasawaPoly::diff_valuation(lhs, rhs) >= 38);
    }
  }
  // char_value(omega_{1,0}, 0, 1) = zeta_3^3 - 1 = 0
  CHECK(w10.char_value(0, 1).is_zero_at(38));
}

TEST_CASE("mellin and inverse") {
  auto cp = make_context({.p = 3, .precision = 40});
  const Context& c = *cp;
  // M(1) = 1+pi exactly
  PsiZeroSeries m1 = IwasawaPoly::one(c).mellin();
  CHECK(m1.support().size() == 1);
  CHECK(m1.support().begin()->first == 1);
  CHECK(Scalar::diff_valuation(m1.support().begin()->second, Scalar::one(c)) >= 40);
  // u=4: M(gamma-1) = (1+pi)^4 - (1+pi) = 3pi + 6pi^2 + 4pi^3 + pi^4
  PsiZeroSeries mg = IwasawaPoly::gamma_minus_one(c).mellin();
  PowerSeries dense = mg.to_series(12);
  CHECK(Scalar::diff_valuation(dense[0], Scalar::zero(c)) >= 40);
  CHECK(Scalar::diff_valuation(dense[1], Scalar::from_int(c, 3)) >= 40);
  CHECK(Scalar::diff_valuation(dense[2], Scalar::from_int(c, 6)) >= 40);
  CHECK(Scalar::diff_valuation(dense[3], Scalar::from_int(c, 4)) >= 40);
  CHECK(Scalar::diff_valuation(dense[4], Scalar::one(c)) >= 40);
  // round trip through inverse at level 2
  std::vector<Scalar> coef;
  for (int i = 0; i < 9; ++i) coef.push_back(Scalar::from_int(c, (i * 23) % 11 - 5));
  IwasawaPoly f = IwasawaPoly::from_coeffs(c, coef);
  IwasawaPoly back = mellin_inverse_at_level(f.mellin(), 2);
  CHECK(IwasawaPoly::diff_valuation(back, f.reduce_mod_omega(2, 0)) >= 34);
  // inverse of M(1) is 1
  IwasawaPoly one_back = mellin_inverse_at_level(m1, 2);
  CHECK(IwasawaPoly::diff_valuation(one_back, IwasawaPoly::one(c)) >= 34);
}

TEST_CASE("ell values and divisibility") {
  auto cp = make_context({.p = 3, .precision = 40});
  const Context& c = *cp;
  // ell_1 at twist 0 equals -1 for all levels <= 3; ell_0 at (0,0) = 0
  for (int lvl = 0; lvl <= 3; ++lvl)
    CHECK(Scalar::diff_valuation(ell_char_value(c, 1, 0, lvl), Scalar::from_int(c, -1)) >= 30);
  CHECK(ell_char_value(c, 0, 0, 0).is_zero());
  for (int64_t i = -2; i <= 2; ++i)
    for (int64_t j = -2; j <= 2; ++j)
      CHECK(Scalar::diff_valuation(ell_char_value(c, i, j, 2), Scalar::from_int(c, j - i)) >= 30);
  // divisibility: omega_{1,0}*(gamma-1) divisible at n=2; gamma-1 at n=1; 1 not at n=1
  IwasawaPoly w10 = IwasawaPoly::omega(c, 1, 0);
  CHECK(omega_divides(w10 * IwasawaPoly::gamma_minus_one(c), 2, 0, 36));
  CHECK(omega_divides(IwasawaPoly::gamma_minus_one(c), 1, 0, 36));
  CHECK(!omega_divides(IwasawaPoly::one(c), 1, 0, 36));
  // twisted: omega_{1,1}-multiple at n=2, m=1
  IwasawaPoly w11 = IwasawaPoly::omega(c, 1, 1);
  CHECK(omega_divides(w11, 2, 1, 36));
  CHECK(!omega_divides(w11, 2, 0, 36));
}

TEST_CASE("cyclotomic quotient constant") {
  auto cp = make_context({.p = 3, .precision = 40});
  const Context& c = *cp;
  // Phi_9(gamma)/3 mod (gamma^3 - 1) = 1
  auto rep = cyclotomic_quotient_constant_check(c, 2, 0, 1, 0);
  CHECK(rep.is_constant);
  CHECK(rep.in_one_plus_pn);
  CHECK(Scalar::diff_valuation(rep.constant, Scalar::one(c)) >= 34);
  auto rep2 = cyclotomic_quotient_constant_check(c, 3, 0, 1, 0);
  CHECK(rep2.is_constant);
  CHECK(rep2.in_one_plus_pn);
  auto rep3 = cyclotomic_quotient_constant_check(c, 3, 1, 2, -1);
  CHECK(rep3.is_constant);
  CHECK(rep3.in_one_plus_pn);
  CHECK_THROWS_AS(cyclotomic_quotient_constant_check(c, 1, 0, 1, 0), Error);
}

TEST_CASE("twisting identity") {
  auto cp = make_context({.p = 3, .precision = 32});
  const Context& c = *cp;
  int D = 40;
  std::vector<Scalar> coef;
  for (int i = 0; i < 5; ++i) coef.push_back(Scalar::from_int(c, 2 * i + 1));
  IwasawaPoly f = IwasawaPoly::from_coeffs(c, coef);
  PowerSeries mf = f.mellin().to_series(D);
  for (int64_t m = 0; m <= 2; ++m) {
    IwasawaPoly lf = ell_times(c, m, f, D);
    PowerSeries lhs = lf.mellin().to_series(D);
    PowerSeries rhs = nabla(mf, m);
    CHECK(PowerSeries::diff_valuation(lhs, rhs) >= 32 - 6);
  }
}
