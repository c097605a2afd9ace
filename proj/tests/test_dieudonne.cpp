#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ptower/dieudonne.hpp"
using namespace ptw;

TEST_CASE("slopes") {
  auto cp = make_context({.p = 3, .precision = 48});
  const Context& c = *cp;
  // identity-like: diag(1,1) has an eigenvalue 1 = p^0, violating H.eigen
  Mat idm = mat_identity(c, 2);
  CHECK_THROWS_AS(PhiModule(c, idm, {0, 1}), Error);
  // diag(p^-1, 2): slopes {-1, 0}
  Mat dm(2, Vec(2, Scalar::zero(c)));
  dm[0][0] = Scalar::p_power(c, -1).mul_int(2);  // 2/p  (avoid exact p-power eigenvalue)
  dm[1][1] = Scalar::from_int(c, 2);
  PhiModule d(c, dm, {0, 1});
  auto sl = d.slopes();
  REQUIRE(sl.size() == 2);
  CHECK(sl[0] == std::pair<int64_t,int64_t>(-1, 1));
  CHECK(sl[1] == std::pair<int64_t,int64_t>(0, 1));
  // modular form module p=3,k=2,ap=0: slopes {-1/2,-1/2}
  PhiModule mf = modular_form_module(c, 2, Scalar::zero(c));
  auto s2 = mf.slopes();
  REQUIRE(s2.size() == 2);
  CHECK(s2[0] == std::pair<int64_t,int64_t>(-1, 2));
  CHECK(s2[1] == std::pair<int64_t,int64_t>(-1, 2));
  // phi^2 = -(1/3) I
  Vec e{Scalar::one(c), Scalar::zero(c)};
  Vec p2 = mf.apply_phi(e, 2);
  CHECK(Scalar::diff_valuation(p2[0], Scalar::one(c).mul_p_pow(-1).mul_int(-1)) >= 40);
  CHECK(p2[1].is_zero());
}

TEST_CASE("constants") {
  auto cp = make_context({.p = 3, .precision = 48});
  const Context& c = *cp;
  PhiModule mf = modular_form_module(c, 2, Scalar::zero(c));
  auto k = mf.derive_constants(1);
  CHECK(k.s1 == 0);  // powers of [[0,-3],[1,0]]-type are integral
  CHECK(k.s2 == 0);
  CHECK(k.s == 0);
  // det(1-phi) has valuation -1
  CHECK(mf.det_one_minus_phi().valuation() == -1);
  // rank 1 phi = 2: s1 = s2 = 0 and (1-phi)^-1 = -1
  Mat m1(1, Vec(1, Scalar::from_int(c, 2)));
  PhiModule r1(c, m1, {1});
  auto k1 = r1.derive_constants(1);
  CHECK(k1.s1 == 0);
  CHECK(k1.s2 == 0);
  Vec one{Scalar::one(c)};
  Vec x = r1.solve_one_minus_pj_phi(0, one);
  CHECK(Scalar::diff_valuation(x[0], Scalar::from_int(c, -1)) >= 44);
  // solve check: (1 - p^j phi) solve = v
  for (int64_t j = 0; j <= 1; ++j) {
    Vec v{Scalar::from_int(c, 7)};
    Vec sx = r1.solve_one_minus_pj_phi(j, v);
    Vec back{sx[0] - r1.apply_phi(sx)[0].mul_p_pow(j)};
    CHECK(Scalar::diff_valuation(back[0], v[0]) >= 44);
  }
}

TEST_CASE("k=4 module at p=5") {
  auto cp = make_context({.p = 5, .precision = 48});
  const Context& c = *cp;
  PhiModule mf = modular_form_module(c, 4, Scalar::zero(c));
  auto k = mf.derive_constants(1);
  CHECK(k.s1 == 1);  // = k/2 - 1
  CHECK(k.s2 == 1);
  // pphi^n floor: min val of (p phi)^n >= 1-k/2 = -1 for n <= 12
  Mat fl = mf.matrix();
  Mat pw = mat_identity(c, 2);
  for (int n = 1; n <= 12; ++n) {
    Mat pf = fl;
    for (auto& row : pf) for (auto& x : row) x = x.mul_p_pow(1);
    pw = mat_mul(pf, pw);
    CHECK(mat_min_valuation(pw) >= -1);
  }
  // nonzero a_p with v(a_p) >= 2
  PhiModule mf2 = modular_form_module(c, 4, Scalar::from_int(c, 25));
  auto k2 = mf2.derive_constants(1);
  CHECK(k2.s1 <= 1);
  CHECK(k2.s2 <= 1);
}

TEST_CASE("k-polynomials") {
  auto cp = make_context({.p = 5, .precision = 48});
  const Context& c = *cp;
  Scalar ap = Scalar::from_int(c, 25);
  PhiModule mf = modular_form_module(c, 4, ap);
  // Q_T(X) = X^2 - a_p X + p^(k-1)
  auto q = mf.k_polynomial(2);  // b = k/2 = 2
  REQUIRE(q.size() == 3);
  CHECK(Scalar::diff_valuation(q[2], Scalar::one(c)) >= 44);
  CHECK(Scalar::diff_valuation(q[1], -ap) >= 44);
  CHECK(Scalar::diff_valuation(q[0], Scalar::p_power(c, 3)) >= 44);
  CHECK(mf.is_k_polynomial(q, 2, 40));
  CHECK(!mf.is_k_polynomial(q, 1, 40));
  // Q_{T,1}(X) = X^2 - (a_p/p^(k/2-1)) X + p
  auto qr = mf.k_polynomial_rescaled(1);
  CHECK(Scalar::diff_valuation(qr[1], -(ap.mul_p_pow(-1))) >= 44);
  CHECK(Scalar::diff_valuation(qr[0], Scalar::p_power(c, 1)) >= 44);
  CHECK(mf.is_k_polynomial(qr, 1, 40));
  // a_p = 0: Q_{T,1} = X^2 + p
  PhiModule mf0 = modular_form_module(c, 4, Scalar::zero(c));
  auto qr0 = mf0.k_polynomial_rescaled(1);
  CHECK(Scalar::diff_valuation(qr0[0], Scalar::p_power(c, 1)) >= 44);
  CHECK(qr0[1].is_zero());
  // twist: is_k_polynomial(Q, b - m) on D(-m)
  PhiModule tw = mf.twist(-1);
  CHECK(tw.is_k_polynomial(q, 1, 40));
}

TEST_CASE("nu=2 flattening") {
  auto cp = make_context({.p = 3, .precision = 32, .nu = 2});
  const Context& c = *cp;
  // phi = multiplication by (2 + x)/p on a rank-1 module, x the ring generator
  Unit g = c.unit_zero();
  g[0] = Nat::from_u64(2); g[1] = Nat::from_u64(1);
  Mat m(1, Vec(1, Scalar::from_val_unit(c, -1, g)));
  PhiModule d(c, m, {1});
  auto sl = d.slopes();
  REQUIRE(sl.size() == 2);
  // char poly of flattened 2x2 with det = Norm(2+x)/p^2
  CHECK(sl[0].first * 1 == sl[0].second * -1);  // slope -1 twice
  Vec e{Scalar::one(c)};
  Vec x = d.solve_one_minus_pj_phi(1, e);
  Vec back{x[0] - d.apply_phi(x)[0].mul_p_pow(1)};
  CHECK(Scalar::diff_valuation(back[0], e[0]) >= 24);
}
