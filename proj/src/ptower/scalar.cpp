#include "ptower/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace ptw {

Scalar Scalar::zero(const Context& c) {
  Scalar s;
  s.ctx_ = &c;
  return s;
}

Scalar Scalar::approx_zero(const Context& c, int64_t val_floor) {
  Scalar s;
  s.ctx_ = &c;
  s.kind_ = Kind::kApproxZero;
  s.val_ = val_floor;
  return s;
}

Scalar Scalar::one(const Context& c) { return from_int(c, 1); }

Scalar Scalar::from_int(const Context& c, int64_t x) {
  if (x == 0) return zero(c);
  bool neg = x < 0;
  Scalar s = from_nat(c, Nat::from_u64(static_cast<uint64_t>(neg ? -x : x)));
  return neg ? -s : s;
}

Scalar Scalar::from_nat(const Context& c, const Nat& x) {
  if (x.is_zero()) return zero(c);
  auto [v, u] = c.val_unit_of_nat(x);
  if (v >= c.precision()) return approx_zero(c, v);
  Scalar s;
  s.ctx_ = &c;
  s.kind_ = Kind::kNonzero;
  s.val_ = v;
  s.u_ = c.unit_zero();
  s.u_[0] = Nat::mod(u, c.modulus());
  return s;
}

Scalar Scalar::from_val_unit(const Context& c, int64_t val, Unit u) {
  Scalar s;
  s.ctx_ = &c;
  s.kind_ = Kind::kNonzero;
  s.val_ = val;
  s.u_ = std::move(u);
  s.normalize();
  return s;
}

Scalar Scalar::p_power(const Context& c, int64_t e) {
  Scalar s;
  s.ctx_ = &c;
  s.kind_ = Kind::kNonzero;
  s.val_ = e;
  s.u_ = c.unit_one();
  return s;
}

Scalar Scalar::transport(const Context& to, const Scalar& s) {
  if (s.is_exact_zero()) return zero(to);
  if (s.is_zero()) return approx_zero(to, s.valuation());
  Unit u = to.unit_zero();
  for (size_t i = 0; i < u.size() && i < s.u_.size(); ++i)
    u[i] = Nat::mod(s.u_[i], to.modulus());
  if (to.unit_is_zero(u)) return approx_zero(to, s.valuation() + to.precision());
  return from_val_unit(to, s.val_, std::move(u));
}

void Scalar::normalize() {
  if (kind_ != Kind::kNonzero) return;
  int e = ctx_->unit_val(u_);
  if (e >= ctx_->precision()) {
    kind_ = Kind::kApproxZero;
    val_ += ctx_->precision();
    u_.clear();
    return;
  }
  if (e > 0) {
    u_ = ctx_->unit_divexact_p(u_, e);
    val_ += e;
  }
}

Scalar Scalar::operator+(const Scalar& b) const {
  const Scalar& a = *this;
  if (a.kind_ == Kind::kExactZero) return b;
  if (b.kind_ == Kind::kExactZero) return a;
  const Context& c = *(a.ctx_ ? a.ctx_ : b.ctx_);
  if (a.kind_ != Kind::kNonzero && b.kind_ != Kind::kNonzero)
    return approx_zero(c, std::min(a.val_, b.val_));
  if (a.kind_ != Kind::kNonzero) {
    // adding an uncertainty floor; only visible if it reaches b's digits
    return b;
  }
  if (b.kind_ != Kind::kNonzero) return a;
  int64_t v = std::min(a.val_, b.val_);
  int64_t da = a.val_ - v, db = b.val_ - v;
  int N = c.precision();
  if (da >= N) return b;
  if (db >= N) return a;
  Unit ua = da ? c.unit_mul_ppow(a.u_, static_cast<int>(da)) : a.u_;
  Unit ub = db ? c.unit_mul_ppow(b.u_, static_cast<int>(db)) : b.u_;
  Scalar s;
  s.ctx_ = &c;
  s.kind_ = Kind::kNonzero;
  s.val_ = v;
  s.u_ = c.unit_add(ua, ub);
  s.normalize();
  return s;
}

Scalar Scalar::operator-() const {
  if (kind_ != Kind::kNonzero) return *this;
  Scalar s = *this;
  s.u_ = ctx_->unit_neg(s.u_);
  return s;
}

Scalar Scalar::operator-(const Scalar& b) const { return *this + (-b); }

Scalar Scalar::operator*(const Scalar& b) const {
  const Scalar& a = *this;
  if (a.kind_ == Kind::kExactZero || b.kind_ == Kind::kExactZero)
    return a.kind_ == Kind::kExactZero ? a : b;
  const Context& c = *a.ctx_;
  if (a.kind_ != Kind::kNonzero || b.kind_ != Kind::kNonzero)
    return approx_zero(c, a.val_ + b.val_);
  Scalar s;
  s.ctx_ = &c;
  s.kind_ = Kind::kNonzero;
  s.val_ = a.val_ + b.val_;
  s.u_ = c.unit_mul(a.u_, b.u_);
  return s;
}

Scalar Scalar::inv() const {
  if (kind_ != Kind::kNonzero)
    fail(Status::kNotInvertible, "inverse of (approximate) zero");
  Scalar s;
  s.ctx_ = ctx_;
  s.kind_ = Kind::kNonzero;
  s.val_ = -val_;
  s.u_ = ctx_->unit_inv(u_);
  return s;
}

Scalar Scalar::sigma(int k) const {
  if (kind_ != Kind::kNonzero) return *this;
  Scalar s = *this;
  s.u_ = ctx_->unit_sigma(u_, k);
  return s;
}

Scalar Scalar::mul_p_pow(int64_t e) const {
  if (kind_ == Kind::kExactZero) return *this;
  Scalar s = *this;
  s.val_ += e;
  return s;
}

Scalar Scalar::mul_int(int64_t n) const {
  if (kind_ == Kind::kExactZero) return *this;
  if (n == 0) return zero(*ctx_);
  return *this * from_int(*ctx_, n);
}

Scalar Scalar::divexact_int(int64_t n) const {
  if (n == 0) fail(Status::kNotInvertible, "division by zero integer");
  if (kind_ == Kind::kExactZero) return *this;
  return *this * from_int(*ctx_, n).inv();
}

Scalar Scalar::pow_u64(uint64_t e) const {
  if (ctx_ == nullptr) fail(Status::kInternal, "pow on context-free zero");
  Scalar acc = one(*ctx_);
  Scalar base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

int64_t Scalar::diff_valuation(const Scalar& a, const Scalar& b) {
  Scalar d = a - b;
  return d.valuation();
}

bool Scalar::eq_at(const Scalar& a, const Scalar& b, int64_t digits) {
  return diff_valuation(a, b) >= digits;
}

std::string Scalar::str() const {
  std::ostringstream os;
  if (kind_ == Kind::kExactZero) return "0";
  if (kind_ == Kind::kApproxZero) {
    os << "O(p^" << val_ << ")";
    return os.str();
  }
  os << "p^" << val_ << "*[";
  for (size_t i = 0; i < u_.size(); ++i) {
    if (i) os << ",";
    os << u_[i].to_decimal();
  }
  os << "]";
  return os.str();
}

Scalar log_one_unit(const Scalar& x) {
  const Context* c = x.ctx();
  if (!c) fail(Status::kDomainError, "log of context-free zero");
  Scalar z = x - Scalar::one(*c);
  if (z.is_exact_zero()) return Scalar::zero(*c);
  if (z.valuation() < 1)
    fail(Status::kDomainError, "log requires v_p(x-1) >= 1");
  int64_t w = z.valuation();
  int N = c->precision();
  Scalar sum = Scalar::zero(*c);
  Scalar power = Scalar::one(*c);
  int64_t m = 0;
  while (true) {
    ++m;
    power = power * z;
    Scalar term = power.divexact_int(m);
    if (m % 2 == 0) term = -term;
    sum = sum + term;
    // remaining terms have valuation > (m+1)*w - log_p(m+1), stop once that
    // clears the precision window past the leading digit
    int64_t log_term = 0;
    for (int64_t t = m + 1; t > 1; t /= static_cast<int64_t>(c->p())) ++log_term;
    if ((m + 1) * w - log_term > N + w + 2) break;
    if (m > 64 * N) fail(Status::kPrecisionExhausted, "log series did not settle");
  }
  return sum;
}

UnitPowerReport unit_power_valuation_check(const Scalar& beta, int n) {
  const Context* c = beta.ctx();
  if (!c || beta.is_zero())
    fail(Status::kDomainError, "beta must be a nonzero p-adic integer");
  if (!beta.is_integral()) fail(Status::kDomainError, "beta must be integral");
  if (n < 0) fail(Status::kDomainError, "n must be nonnegative");
  int64_t vb = beta.valuation();
  int64_t expect = n + 1 + vb;
  if (expect >= c->precision() - 1)
    fail(Status::kPrecisionExhausted, "asserted valuation too close to p^N");

  Scalar alpha = Scalar::one(*c) + beta.mul_p_pow(1);
  uint64_t pn = 1;
  for (int i = 0; i < n; ++i) pn *= static_cast<uint64_t>(c->p());
  Scalar lhs = alpha.pow_u64(pn) - Scalar::one(*c);

  UnitPowerReport rep;
  rep.expected_valuation = expect;
  rep.observed_valuation = lhs.valuation();
  rep.valuation_ok = (lhs.valuation() == expect);

  // (alpha^(p^n)-1) / (p^(n+1) beta) vs the alternating series, mod p^n
  Scalar ratio = lhs * beta.inv().mul_p_pow(-(n + 1));
  Scalar rhs = Scalar::zero(*c);
  Scalar mpb = -beta.mul_p_pow(1);  // -p*beta
  Scalar power = Scalar::one(*c);
  for (int64_t i = 0;; ++i) {
    if (i > 0) power = power * mpb;
    rhs = rhs + power.divexact_int(i + 1);
    int64_t log_term = 0;
    for (int64_t t = i + 2; t > 1; t /= static_cast<int64_t>(c->p())) ++log_term;
    if ((i + 1) * (1 + vb) - log_term > n + 2) break;
  }
  rep.congruence_ok = Scalar::diff_valuation(ratio, rhs) >= n;
  return rep;
}

}  // namespace ptw
