#pragma once

#include "ptower/sparse.hpp"

namespace ptw {

// Truncated Iwasawa-algebra element: polynomial in (gamma-1) over the
// coefficient ring, optionally reduced against an omega_{level,twist} ideal.
class IwasawaPoly {
 public:
  IwasawaPoly() = default;
  explicit IwasawaPoly(const Context& c) : ctx_(&c), c_{Scalar::zero(c)} {}

  static IwasawaPoly zero(const Context& c) { return IwasawaPoly(c); }
  static IwasawaPoly one(const Context& c);
  static IwasawaPoly gamma_minus_one(const Context& c, int power = 1);
  static IwasawaPoly from_coeffs(const Context& c, std::vector<Scalar> coeffs);

  // omega_{n,m}(gamma) = (u^-m gamma)^(p^n) - 1, expanded in (gamma-1)
  static IwasawaPoly omega(const Context& c, int n, int64_t m);
  // Phi_{n,m}(gamma) = Phi_{p^n}(u^-m gamma)
  static IwasawaPoly cyclo_factor(const Context& c, int n, int64_t m);

  const Context* ctx() const { return ctx_; }
  int64_t degree() const { return static_cast<int64_t>(c_.size()) - 1; }
  const Scalar& coeff(int64_t j) const { return c_[static_cast<size_t>(j)]; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  int modulus_level() const { return modulus_level_; }
  int64_t modulus_twist() const { return modulus_twist_; }

  IwasawaPoly operator+(const IwasawaPoly& b) const;
  IwasawaPoly operator-(const IwasawaPoly& b) const;
  IwasawaPoly operator*(const IwasawaPoly& b) const;
  IwasawaPoly operator-() const;
  IwasawaPoly mul_scalar(const Scalar& s) const;

  // declare and apply reduction modulo omega_{level,twist}
  IwasawaPoly reduce_mod_omega(int level, int64_t twist) const;

  // substitute gamma = u^twist * zeta_{p^level}
  CycloElement char_value(int64_t twist, int level) const;
  // substitute a plain scalar for gamma
  Scalar scalar_value(const Scalar& gamma) const;

  PsiZeroSeries mellin() const;

  int64_t min_valuation() const;
  static int64_t diff_valuation(const IwasawaPoly& a, const IwasawaPoly& b);
  std::string str() const;

 private:
  void trim();
  const Context* ctx_ = nullptr;
  std::vector<Scalar> c_;
  int modulus_level_ = -1;
  int64_t modulus_twist_ = 0;
};

// u^e as a scalar (e may be negative)
Scalar u_power(const Context& c, int64_t e);

// inverse Mellin transform modulo omega_{level,0}: solves the linear system
// given by evaluation at pi = 0 and at each tower level <= level+1.
IwasawaPoly mellin_inverse_at_level(const PsiZeroSeries& h, int level);

// same solve from precomputed coordinates (value at pi = 0 followed by the
// zeta-basis coordinates of the evaluations at levels 1..level+1)
IwasawaPoly mellin_inverse_from_coords(const Context& c, const std::vector<Scalar>& coords,
                                       int level);

// the logarithm ell_i = log(u^-i gamma)/log(u) evaluated at
// gamma = u^m zeta_{p^level}; the result is the constant (m - i) by the
// vanishing of log on roots of unity, and is computed, not assumed.
Scalar ell_char_value(const Context& c, int64_t i, int64_t m, int level);

// does omega_{n-1,m} divide f (over the distribution algebra)?  Tested via
// vanishing of (partial^m Mellin(f)) at zeta_{p^j} - 1 for 1 <= j <= n.
// `tol` is the vanishing threshold in p-digits.
bool omega_divides(const IwasawaPoly& f, int n, int64_t m, int64_t tol);

// Phi_{p^k}(u^-i gamma)/p reduced mod omega_{n,j} must be a constant in
// 1 + p^n Z_p, provided k >= n+1.
struct CycloQuotientReport {
  bool is_constant = false;
  bool in_one_plus_pn = false;
  Scalar constant;
};
CycloQuotientReport cyclotomic_quotient_constant_check(const Context& c, int k,
                                                       int64_t i, int n, int64_t j);

// ell_m * f as a truncated polynomial (log series cut at a length that clears
// the working precision on a degree-`window` densification)
IwasawaPoly ell_times(const Context& c, int64_t m, const IwasawaPoly& f, int window);

// nabla_m = t*partial - m on dense series
PowerSeries nabla(const PowerSeries& f, int64_t m);

}  // namespace ptw
