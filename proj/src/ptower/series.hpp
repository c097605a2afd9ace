#pragma once

#include <vector>

#include "ptower/cyclotomic.hpp"
#include "ptower/scalar.hpp"

namespace ptw {

// Truncated element of O_F[[pi]] (or its bounded-denominator enlargement):
// coefficients for degrees 0..cap-1.  Arithmetic is exact modulo
// (pi^cap, p^N) given inputs exact modulo the same ideal, except where an
// operation documents extra loss.
class PowerSeries {
 public:
  PowerSeries() = default;
  PowerSeries(const Context& c, int cap);

  static PowerSeries zero(const Context& c, int cap);
  static PowerSeries one(const Context& c, int cap);
  static PowerSeries monomial(const Context& c, int cap, int deg, const Scalar& a);
  static PowerSeries from_coeffs(const Context& c, std::vector<Scalar> coeffs);

  const Context* ctx() const { return ctx_; }
  int cap() const { return static_cast<int>(c_.size()); }
  const Scalar& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  Scalar& at(int i) { return c_[static_cast<size_t>(i)]; }
  const std::vector<Scalar>& coeffs() const { return c_; }

  PowerSeries operator+(const PowerSeries& b) const;
  PowerSeries operator-(const PowerSeries& b) const;
  PowerSeries operator*(const PowerSeries& b) const;
  PowerSeries operator-() const;
  PowerSeries mul_scalar(const Scalar& s) const;
  PowerSeries truncate(int cap) const;

  // sigma-linear substitution pi -> (1+pi)^p - 1; exact mod (pi^cap, p^N)
  PowerSeries phi() const;
  PowerSeries phi_pow(int k) const;
  // standard left inverse of phi; result cap is ceil(cap/p)
  PowerSeries psi() const;
  // ((1+pi) d/dpi)^m
  PowerSeries partial(int m = 1) const;
  // inverse of a series whose constant term is invertible
  PowerSeries inv() const;
  // coefficientwise sigma^k
  PowerSeries sigma(int k) const;

  // coefficients over the (1+pi)^j basis, j = 0..cap-1
  std::vector<Scalar> one_plus_pi_basis() const;
  static PowerSeries from_one_plus_pi_basis(const Context& c,
                                            const std::vector<Scalar>& b, int cap);

  // evaluation pi -> zeta_{p^level} - 1 by reduction mod Phi_{p^level}(1+X).
  // coeff_floor is a certified valuation floor for the (untracked) tail
  // coefficients at degrees >= cap; the result records the induced tail bound.
  CycloElement eval_at_level(int level, int64_t coeff_floor = 0) const;

  int64_t min_valuation() const;
  bool is_zero_at(int64_t digits) const;
  static int64_t diff_valuation(const PowerSeries& a, const PowerSeries& b);

  // pi-adic order: first index with a coefficient nonzero to `digits`
  int pi_order(int64_t digits) const;

  std::string str(int max_terms = 8) const;

  // distinguished elements
  // Phi_{p^level}(1+pi) = phi^(level-1)(q); requires cap > its degree
  static PowerSeries cyclo_q(const Context& c, int level, int cap);
  // mu = p/(q - pi^(p-1)), a unit of the integral series ring
  static PowerSeries mu_unit(const Context& c, int cap);
  // t = log(1+pi)
  static PowerSeries log_one_plus_pi(const Context& c, int cap);
  // t^j with j < p (so coefficients stay p-integral after /j!)
  static PowerSeries t_power_over_factorial(const Context& c, int j, int cap);

 private:
  const Context* ctx_ = nullptr;
  std::vector<Scalar> c_;
};

// valuation floor of the evaluation tail: cap * v_p(zeta_{p^level}-1) + floor,
// rounded down to an integer number of p-digits
int64_t eval_tail_bound(const Context& c, int cap, int level, int64_t coeff_floor);

}  // namespace ptw
