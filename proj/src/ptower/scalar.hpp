#pragma once

#include <cstdint>
#include <utility>

#include "ptower/context.hpp"

namespace ptw {

// Element of F (or its degree-nu unramified extension) held as p^val * unit
// with the unit known modulo p^N.  All operations keep N digits of relative
// precision; additions may lose absolute digits through cancellation, which
// callers account for via documented per-operation loss bounds.  A value whose
// unit cancelled completely is kept as an "approximate zero" carrying only a
// valuation floor.
class Scalar {
 public:
  static constexpr int64_t kInfVal = INT64_MAX / 4;

  Scalar() = default;  // exact zero, context-free

  static Scalar zero(const Context& c);
  static Scalar approx_zero(const Context& c, int64_t val_floor);
  static Scalar one(const Context& c);
  static Scalar from_int(const Context& c, int64_t x);
  static Scalar from_nat(const Context& c, const Nat& x);  // exact integer >= 0
  static Scalar from_val_unit(const Context& c, int64_t val, Unit u);
  static Scalar p_power(const Context& c, int64_t e);
  // move a value to another context with the same p and nu: canonical lift
  // when the target precision is higher, reduction otherwise
  static Scalar transport(const Context& to, const Scalar& s);

  const Context* ctx() const { return ctx_; }
  bool is_exact_zero() const { return kind_ == Kind::kExactZero; }
  bool is_zero() const { return kind_ != Kind::kNonzero; }
  // exact for nonzero values, a floor for approximate zeros
  int64_t valuation() const { return val_; }
  bool is_integral() const { return val_ >= 0; }
  const Unit& unit() const { return u_; }

  Scalar operator+(const Scalar& b) const;
  Scalar operator-(const Scalar& b) const;
  Scalar operator*(const Scalar& b) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& b) { *this = *this + b; return *this; }
  Scalar& operator-=(const Scalar& b) { *this = *this - b; return *this; }
  Scalar& operator*=(const Scalar& b) { *this = *this * b; return *this; }

  Scalar inv() const;                   // NotInvertible on zero
  Scalar sigma(int k = 1) const;        // Frobenius sigma^k
  Scalar mul_p_pow(int64_t e) const;    // multiply by p^e
  Scalar mul_int(int64_t n) const;
  Scalar divexact_int(int64_t n) const; // divide by a nonzero integer (exact)
  Scalar pow_u64(uint64_t e) const;

  // valuation of (a - b); kInfVal when both are exact zeros
  static int64_t diff_valuation(const Scalar& a, const Scalar& b);
  // true when a == b to at least `digits` absolute digits
  static bool eq_at(const Scalar& a, const Scalar& b, int64_t digits);

  std::string str() const;  // diagnostic form "p^v * unit"

 private:
  enum class Kind : uint8_t { kExactZero, kApproxZero, kNonzero };
  void normalize();

  const Context* ctx_ = nullptr;
  int64_t val_ = kInfVal;
  Kind kind_ = Kind::kExactZero;
  Unit u_;
};

// p-adic logarithm of a 1-unit: requires v_p(x - 1) >= 1.  The returned
// valuation is exact.
Scalar log_one_unit(const Scalar& x);

// Executable form of the alpha = 1 + p*beta valuation identity
// v_p(alpha^(p^n) - 1) = n + 1 + v_p(beta) together with the congruence
// (alpha^(p^n)-1) / (p^(n+1) beta)  ==  sum_i (-p beta)^i / (i+1)  mod p^n.
struct UnitPowerReport {
  bool valuation_ok = false;
  bool congruence_ok = false;
  int64_t observed_valuation = 0;
  int64_t expected_valuation = 0;
};
UnitPowerReport unit_power_valuation_check(const Scalar& beta, int n);

}  // namespace ptw
