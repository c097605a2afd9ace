#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace ptw {

using BigExp = boost::multiprecision::cpp_int;

// Exact integer plumbing for the index and Tamagawa bound exponents.  Exponent
// arithmetic never goes through p-adic floats: these numbers are the primary
// deliverable of the bound tables.
struct BoundInputs {
  int64_t p = 3;
  int64_t n = 1;
  int64_t r = 1;
  int64_t s1 = 0;
  int64_t s2 = 0;
  int64_t d_prime = 1;
  int64_t base_degree = 1;  // [F:Q_p] (coefficient-field factor)
  BigExp det_val = 0;       // v_p det(1 - phi | D(V))
};

BigExp p_pow_int(int64_t p, int64_t e);

// d'_n = d' [F_n:F] with [F_n:F] = (p-1) p^(n-1)
BigExp d_prime_n(const BoundInputs& in);

// (r(p^(n-1)+p-2) + s2(p-1)) d' + s1 d'_n
BigExp index_bound_exponent(const BoundInputs& in);
// the level-by-level sum from the index bound's proof; equals the closed form
BigExp index_bound_sum(const BoundInputs& in);
bool index_sum_identity_check(const BoundInputs& in);

// index bound minus det_val: the exponent bounding the Tamagawa number
BigExp general_bound_exponent(const BoundInputs& in);

// weight-k eigenform specialisation: (k/2 (p-1)(p^(n-1)+1) - p^(n-1)(p-2)) e
BigExp modular_form_exponent(int64_t p, int64_t k, int64_t e, int64_t n);
// the comparison bound (n+1/2) e [F_n:Q_p] (k-2); the half-integer always
// clears against the even factor
BigExp laurent_exponent(int64_t p, int64_t k, int64_t e, int64_t n,
                        int64_t base_degree = 1);

// exponent shift under scaling the reference lattice by p^m
BigExp lattice_shift(const BoundInputs& in, const BigExp& exponent, int64_t m);
// s2 (p-1) d' - det_val, the n-independent ceiling after the -r-s1 shift;
// dominance over the shifted general bound is asserted for n <= n_check
BigExp stable_bound_exponent(const BoundInputs& in, int64_t n_check = 8);

// alpha = -sum r_i + (b-1) d + d'; b defaults to the largest weight (the
// choice that makes the eigenform case collapse to the k-2 factor)
BigExp laurent_alpha(const std::vector<int64_t>& weights, int64_t d, int64_t d_prime,
                     int64_t b = INT64_MIN);
// [F_n:Q_p] n alpha
BigExp laurent_general_exponent(int64_t p, int64_t n,
                                const std::vector<int64_t>& weights, int64_t d,
                                int64_t d_prime, int64_t base_degree,
                                int64_t b = INT64_MIN);

// first n in [1, n_max] with the eigenform bound strictly below the
// comparison bound; 0 when none
int64_t crossover_level(int64_t p, int64_t k, int64_t e, int64_t n_max,
                        int64_t base_degree = 1);

}  // namespace ptw
