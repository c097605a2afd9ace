#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>

#include "ptower/series.hpp"

namespace ptw {

using BigInt = boost::multiprecision::cpp_int;

Scalar scalar_from_bigint(const Context& c, const BigInt& x);

// Element of the psi = 0 part of the series ring, stored on the (1+pi)^i
// basis with all support exponents coprime to p.  Sparse by design: Mellin
// images of short Iwasawa elements touch few exponents.
class PsiZeroSeries {
 public:
  PsiZeroSeries() = default;
  explicit PsiZeroSeries(const Context& c) : ctx_(&c) {}

  static PsiZeroSeries zero(const Context& c) { return PsiZeroSeries(c); }
  static PsiZeroSeries one_plus_pi(const Context& c);  // the element 1+pi

  const Context* ctx() const { return ctx_; }
  const std::map<BigInt, Scalar>& support() const { return supp_; }
  bool empty() const { return supp_.empty(); }

  void add_term(const BigInt& exponent, const Scalar& coeff);

  PsiZeroSeries operator+(const PsiZeroSeries& b) const;
  PsiZeroSeries operator-(const PsiZeroSeries& b) const;
  PsiZeroSeries operator-() const;
  PsiZeroSeries mul_scalar(const Scalar& s) const;

  // (1+pi)^i -> (1+pi)^(u^k i): integral gamma action, k >= 0
  PsiZeroSeries gamma_pow(int k) const;
  // partial^m on this basis scales the coefficient of (1+pi)^i by i^m;
  // m may be negative (exponents are prime to p)
  PsiZeroSeries partial_pow(int64_t m) const;

  Scalar value_at_zero() const;  // evaluation at pi = 0
  PowerSeries to_series(int cap) const;
  CycloElement eval_at_level(int level) const;

  int64_t min_valuation() const;
  static int64_t diff_valuation(const PsiZeroSeries& a, const PsiZeroSeries& b);

  // constructive preimage of a trace-zero element (level >= 2) or of any
  // element at level 1: sum of a_i (1+pi)^i over exponents prime to p
  static PsiZeroSeries tracezero_preimage(const CycloElement& x);

 private:
  const Context* ctx_ = nullptr;
  std::map<BigInt, Scalar> supp_;
};

}  // namespace ptw
