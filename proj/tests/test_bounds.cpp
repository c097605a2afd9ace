#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ptower/bounds.hpp"
#include "ptower/errors.hpp"
using namespace ptw;

TEST_CASE("bound exponents golden") {
  // p=5, k=4, e=1: n=1 -> 13 vs 12; n=2 -> 33 vs 100
  CHECK(modular_form_exponent(5, 4, 1, 1) == 13);
  CHECK(modular_form_exponent(5, 4, 1, 2) == 33);
  CHECK(laurent_exponent(5, 4, 1, 1) == 12);
  CHECK(laurent_exponent(5, 4, 1, 2) == 100);
  CHECK(crossover_level(5, 4, 1, 6) == 2);
  // p=3, k=2: comparison exponent 0 for all n; new side 3 at n=1
  CHECK(modular_form_exponent(3, 2, 1, 1) == 3);
  for (int n = 1; n <= 4; ++n) CHECK(laurent_exponent(3, 2, 1, n) == 0);
  // general bound at p=3, r=1, s=0, d'=1, det=-1: exponent 3
  BoundInputs in{.p = 3, .n = 1, .r = 1, .s1 = 0, .s2 = 0, .d_prime = 1, .det_val = -1};
  CHECK(general_bound_exponent(in) == 3);
  // index sum identity hand case: p=3, n=2, r=1, s=0: both sides 4
  BoundInputs in2{.p = 3, .n = 2, .r = 1, .s1 = 0, .s2 = 0, .d_prime = 1};
  CHECK(index_bound_exponent(in2) == 4);
  CHECK(index_bound_sum(in2) == 4);
  // identity over a grid
  for (int64_t p : {3, 5, 7, 11, 13})
    for (int64_t n = 1; n <= 6; ++n)
      for (int64_t r = 0; r <= 5; ++r)
        for (int64_t s1 = 0; s1 <= 5; s1 += 2)
          for (int64_t s2 = 0; s2 <= 5; s2 += 3) {
            BoundInputs q{.p = p, .n = n, .r = r, .s1 = s1, .s2 = s2, .d_prime = 2};
            CHECK(index_sum_identity_check(q));
          }
  // general specialization == eigenform formula
  for (int64_t p : {5, 7, 11, 13})
    for (int64_t k = 2; k <= p - 1; k += 2)
      for (int64_t e = 1; e <= 3; ++e)
        for (int64_t n = 1; n <= 6; ++n) {
          BoundInputs q{.p = p, .n = n, .r = 1, .s1 = k / 2 - 1, .s2 = k / 2 - 1,
                        .d_prime = e, .det_val = -e};
          CHECK(general_bound_exponent(q) == modular_form_exponent(p, k, e, n));
        }
  // stable bound: p=3, s2=0, d'=1, det=-1 -> exponent 1
  BoundInputs st{.p = 3, .n = 1, .r = 1, .s1 = 0, .s2 = 0, .d_prime = 1, .det_val = -1};
  CHECK(stable_bound_exponent(st) == 1);
  // alpha examples: with explicit b = 2 the {0,1} case gives 2; with the
  // default b = max weight the eigenform weights give the k-2 factor
  CHECK(laurent_alpha({0, 1}, 2, 1, 2) == 2);
  CHECK(laurent_alpha({0, 1}, 2, 1) == 0);
  CHECK(laurent_alpha({1 - 4 / 2, 4 / 2}, 2, 1) == 4 - 2);
  CHECK(laurent_alpha({0, 0}, 2, 0, 1) == 0);
}


TEST_CASE("growth comparison") {
  // [F_n:Q_p] n alpha is Theta(n p^n) while the index bound is Theta(p^n)
  for (int64_t p : {5, 7}) {
    std::vector<int64_t> w{-1, 2};  // eigenform weights at k = 4: alpha = 2
    bool dominated = false;
    for (int64_t n = 1; n <= 8; ++n) {
      BoundInputs q{.p = p, .n = n, .r = 1, .s1 = 1, .s2 = 1, .d_prime = 1, .det_val = -1};
      if (laurent_general_exponent(p, n, w, 2, 1, 1) > general_bound_exponent(q))
        dominated = true;
    }
    CHECK(dominated);
  }
}
