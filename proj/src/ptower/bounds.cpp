#include "ptower/bounds.hpp"

#include "ptower/errors.hpp"

namespace ptw {

BigExp p_pow_int(int64_t p, int64_t e) {
  if (e < 0) fail(Status::kInternal, "negative integer power");
  BigExp r = 1;
  for (int64_t i = 0; i < e; ++i) r *= p;
  return r;
}

BigExp d_prime_n(const BoundInputs& in) {
  return BigExp(in.d_prime) * (in.p - 1) * p_pow_int(in.p, in.n - 1);
}

BigExp index_bound_exponent(const BoundInputs& in) {
  if (in.n < 1) fail(Status::kDomainError, "level must be >= 1");
  BigExp pn1 = p_pow_int(in.p, in.n - 1);
  return (BigExp(in.r) * (pn1 + in.p - 2) + BigExp(in.s2) * (in.p - 1)) * in.d_prime +
         BigExp(in.s1) * d_prime_n(in);
}

BigExp index_bound_sum(const BoundInputs& in) {
  if (in.n < 1) fail(Status::kDomainError, "level must be >= 1");
  BigExp acc = 0;
  for (int64_t i = 2; i <= in.n; ++i)
    acc += (BigExp(in.s1) + BigExp(in.r) * (in.n - i)) * p_pow_int(in.p, i - 2) *
           (in.p - 1) * (in.p - 1);
  acc += (BigExp(in.s1) + in.s2 + BigExp(in.r) * in.n) * (in.p - 1);
  return acc * in.d_prime;
}

bool index_sum_identity_check(const BoundInputs& in) {
  return index_bound_exponent(in) == index_bound_sum(in);
}

BigExp general_bound_exponent(const BoundInputs& in) {
  return index_bound_exponent(in) - in.det_val;
}

BigExp modular_form_exponent(int64_t p, int64_t k, int64_t e, int64_t n) {
  if (k % 2 != 0 || k < 2 || k > p - 1)
    fail(Status::kDomainError, "weight must be even with 2 <= k <= p-1");
  if (n < 1) fail(Status::kDomainError, "level must be >= 1");
  BigExp pn1 = p_pow_int(p, n - 1);
  return (BigExp(k / 2) * (p - 1) * (pn1 + 1) - pn1 * (p - 2)) * e;
}

BigExp laurent_exponent(int64_t p, int64_t k, int64_t e, int64_t n,
                        int64_t base_degree) {
  if (k % 2 != 0 || k < 2 || k > p - 1)
    fail(Status::kDomainError, "weight must be even with 2 <= k <= p-1");
  if (n < 1) fail(Status::kDomainError, "level must be >= 1");
  BigExp fn = BigExp(p - 1) * p_pow_int(p, n - 1) * base_degree;  // [F_n:Q_p]
  BigExp twice = BigExp(2 * n + 1) * e * fn * (k - 2);
  if (twice % 2 != 0) fail(Status::kInternal, "half-integer failed to clear");
  return twice / 2;
}

BigExp lattice_shift(const BoundInputs& in, const BigExp& exponent, int64_t m) {
  return exponent + BigExp(m) * d_prime_n(in);
}

BigExp stable_bound_exponent(const BoundInputs& in, int64_t n_check) {
  BigExp stable = BigExp(in.s2) * (in.p - 1) * in.d_prime - in.det_val;
  for (int64_t n = 1; n <= n_check; ++n) {
    BoundInputs at = in;
    at.n = n;
    BigExp shifted = lattice_shift(at, general_bound_exponent(at), -(in.r + in.s1));
    if (shifted > stable)
      fail(Status::kInternal,
           "n-independent ceiling failed to dominate the shifted bound");
  }
  return stable;
}

BigExp laurent_alpha(const std::vector<int64_t>& weights, int64_t d, int64_t d_prime,
                     int64_t b) {
  if (weights.empty()) fail(Status::kDomainError, "need at least one weight");
  BigExp sum = 0;
  int64_t top = weights.front();
  for (int64_t w : weights) {
    sum += w;
    top = std::max(top, w);
  }
  if (b == INT64_MIN) b = top;
  return -sum + BigExp(b - 1) * d + d_prime;
}

BigExp laurent_general_exponent(int64_t p, int64_t n,
                                const std::vector<int64_t>& weights, int64_t d,
                                int64_t d_prime, int64_t base_degree, int64_t b) {
  BigExp fn = BigExp(p - 1) * p_pow_int(p, n - 1) * base_degree;
  return fn * n * laurent_alpha(weights, d, d_prime, b);
}

int64_t crossover_level(int64_t p, int64_t k, int64_t e, int64_t n_max,
                        int64_t base_degree) {
  for (int64_t n = 1; n <= n_max; ++n)
    if (modular_form_exponent(p, k, e, n) < laurent_exponent(p, k, e, n, base_degree))
      return n;
  return 0;
}

}  // namespace ptw
