#include "ptower/nat.hpp"

#include <algorithm>
#include <cstring>

#include "ptower/errors.hpp"

namespace ptw {

static_assert(GMP_LIMB_BITS == 64, "64-bit limbs expected");

void Nat::normalize() {
  while (n_ > 0 && w_[n_ - 1] == 0) --n_;
}

Nat Nat::from_u64(uint64_t x) {
  Nat r;
  r.w_[0] = x;
  r.n_ = x ? 1 : 0;
  return r;
}

Nat Nat::from_decimal(const std::string& s) {
  if (s.empty()) fail(Status::kParseError, "empty integer literal");
  Nat r;
  for (char c : s) {
    if (c < '0' || c > '9') fail(Status::kParseError, "bad digit in integer literal");
    r = mul_u64(r, 10);
    r.add_u64_inplace(static_cast<uint64_t>(c - '0'));
  }
  return r;
}

int Nat::cmp(const Nat& a, const Nat& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_ ? -1 : 1;
  if (a.n_ == 0) return 0;
  return mpn_cmp(a.w_.data(), b.w_.data(), a.n_);
}

Nat Nat::add(const Nat& a, const Nat& b) {
  const Nat& hi = a.n_ >= b.n_ ? a : b;
  const Nat& lo = a.n_ >= b.n_ ? b : a;
  Nat r;
  r.w_ = hi.w_;
  r.n_ = hi.n_;
  if (lo.n_ > 0) {
    mp_limb_t carry = mpn_add(r.w_.data(), r.w_.data(), hi.n_ ? hi.n_ : 1,
                              lo.w_.data(), lo.n_);
    if (carry) {
      if (hi.n_ >= kCap) fail(Status::kCapExceeded, "integer overflow in add");
      r.w_[hi.n_] = carry;
      r.n_ = hi.n_ + 1;
    }
  }
  r.normalize();
  return r;
}

Nat Nat::sub(const Nat& a, const Nat& b) {
  if (cmp(a, b) < 0) fail(Status::kInternal, "Nat::sub underflow");
  Nat r;
  if (a.n_ == 0) return r;
  r.w_ = a.w_;
  r.n_ = a.n_;
  if (b.n_ > 0) mpn_sub(r.w_.data(), a.w_.data(), a.n_, b.w_.data(), b.n_);
  r.normalize();
  return r;
}

Nat Nat::mul(const Nat& a, const Nat& b) {
  Nat r;
  if (a.n_ == 0 || b.n_ == 0) return r;
  if (a.n_ + b.n_ > kCap + 1) fail(Status::kCapExceeded, "integer overflow in mul");
  std::array<mp_limb_t, 2 * kCap> tmp;
  if (a.n_ >= b.n_) {
    mpn_mul(tmp.data(), a.w_.data(), a.n_, b.w_.data(), b.n_);
  } else {
    mpn_mul(tmp.data(), b.w_.data(), b.n_, a.w_.data(), a.n_);
  }
  int n = a.n_ + b.n_;
  while (n > 0 && tmp[n - 1] == 0) --n;
  if (n > kCap) fail(Status::kCapExceeded, "integer overflow in mul");
  std::copy(tmp.begin(), tmp.begin() + n, r.w_.begin());
  r.n_ = n;
  return r;
}

Nat Nat::mul_u64(const Nat& a, uint64_t b) {
  Nat r;
  if (a.n_ == 0 || b == 0) return r;
  mp_limb_t carry = mpn_mul_1(r.w_.data(), a.w_.data(), a.n_, b);
  r.n_ = a.n_;
  if (carry) {
    if (a.n_ >= kCap) fail(Status::kCapExceeded, "integer overflow in mul_u64");
    r.w_[a.n_] = carry;
    r.n_ = a.n_ + 1;
  }
  return r;
}

Nat Nat::mod(const Nat& a, const Nat& m) {
  if (m.n_ == 0) fail(Status::kInternal, "mod by zero");
  if (cmp(a, m) < 0) return a;
  std::array<mp_limb_t, 2 * kCap> q;
  Nat r;
  std::array<mp_limb_t, kCap> rem;
  mpn_tdiv_qr(q.data(), rem.data(), 0, a.w_.data(), a.n_, m.w_.data(), m.n_);
  std::copy(rem.begin(), rem.begin() + m.n_, r.w_.begin());
  r.n_ = m.n_;
  r.normalize();
  return r;
}

Nat Nat::mulmod(const Nat& a, const Nat& b, const Nat& m) {
  if (a.n_ == 0 || b.n_ == 0) return Nat();
  std::array<mp_limb_t, 2 * kCap> tmp;
  if (a.n_ >= b.n_) {
    mpn_mul(tmp.data(), a.w_.data(), a.n_, b.w_.data(), b.n_);
  } else {
    mpn_mul(tmp.data(), b.w_.data(), b.n_, a.w_.data(), a.n_);
  }
  int n = a.n_ + b.n_;
  while (n > 0 && tmp[n - 1] == 0) --n;
  Nat r;
  if (n == 0) return r;
  if (n < m.n_ || (n == m.n_ && mpn_cmp(tmp.data(), m.w_.data(), n) < 0)) {
    std::copy(tmp.begin(), tmp.begin() + n, r.w_.begin());
    r.n_ = n;
    return r;
  }
  std::array<mp_limb_t, 2 * kCap + 1> q;
  std::array<mp_limb_t, kCap> rem;
  mpn_tdiv_qr(q.data(), rem.data(), 0, tmp.data(), n, m.w_.data(), m.n_);
  std::copy(rem.begin(), rem.begin() + m.n_, r.w_.begin());
  r.n_ = m.n_;
  r.normalize();
  return r;
}

uint64_t Nat::mod_u64(const Nat& a, uint64_t d) {
  if (a.n_ == 0) return 0;
  return mpn_mod_1(a.w_.data(), a.n_, d);
}

Nat Nat::divexact_u64(const Nat& a, uint64_t d) {
  Nat r;
  if (a.n_ == 0) return r;
  mpn_divrem_1(r.w_.data(), 0, a.w_.data(), a.n_, d);
  r.n_ = a.n_;
  r.normalize();
  return r;
}

void Nat::sub_u64_inplace(uint64_t b) {
  if (b == 0) return;
  if (n_ == 0 || (n_ == 1 && w_[0] < b)) fail(Status::kInternal, "Nat underflow");
  mpn_sub_1(w_.data(), w_.data(), n_, b);
  normalize();
}

void Nat::add_u64_inplace(uint64_t b) {
  if (b == 0) return;
  if (n_ == 0) {
    w_[0] = b;
    n_ = 1;
    return;
  }
  mp_limb_t carry = mpn_add_1(w_.data(), w_.data(), n_, b);
  if (carry) {
    if (n_ >= kCap) fail(Status::kCapExceeded, "integer overflow in add_u64");
    w_[n_++] = carry;
  }
}

std::string Nat::to_decimal() const {
  if (n_ == 0) return "0";
  Nat tmp = *this;
  std::string out;
  while (tmp.n_ > 0) {
    std::array<mp_limb_t, kCap> q;
    mp_limb_t rem = mpn_divrem_1(q.data(), 0, tmp.w_.data(), tmp.n_, 10);
    out.push_back(static_cast<char>('0' + rem));
    std::copy(q.begin(), q.begin() + tmp.n_, tmp.w_.begin());
    tmp.normalize();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::kOk: return "ok";
    case Status::kDomainError: return "domain_error";
    case Status::kNotInvertible: return "not_invertible";
    case Status::kPrecisionExhausted: return "precision_exhausted";
    case Status::kLevelMismatch: return "level_mismatch";
    case Status::kDivergenceDetected: return "divergence_detected";
    case Status::kNotPsiZero: return "not_psi_zero";
    case Status::kCapExceeded: return "cap_exceeded";
    case Status::kParseError: return "parse_error";
    case Status::kCheckFailed: return "check_failed";
    case Status::kInvalidArgument: return "invalid_argument";
    case Status::kInternal: return "internal_error";
  }
  return "unknown";
}

}  // namespace ptw
