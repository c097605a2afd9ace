#pragma once

#include <gmp.h>

#include <array>
#include <cstdint>
#include <string>

namespace ptw {

// Fixed-capacity unsigned integer over GMP's mpn layer.  Ring residues stay
// below p^N (at most four limbs by the context invariant); exact scratch
// integers (binomial numerators, i*p^k exponents) may use the full width.
// Overflow past kCap limbs raises CapExceeded.
class Nat {
 public:
  static constexpr int kCap = 16;

  Nat() : n_(0) { w_.fill(0); }

  static Nat from_u64(uint64_t x);
  static Nat from_decimal(const std::string& s);

  bool is_zero() const { return n_ == 0; }
  bool is_one() const { return n_ == 1 && w_[0] == 1; }
  int limbs() const { return n_; }
  const mp_limb_t* data() const { return w_.data(); }
  uint64_t low_u64() const { return n_ == 0 ? 0 : static_cast<uint64_t>(w_[0]); }

  // -1, 0, +1
  static int cmp(const Nat& a, const Nat& b);
  bool operator==(const Nat& b) const { return cmp(*this, b) == 0; }
  bool operator!=(const Nat& b) const { return cmp(*this, b) != 0; }

  static Nat add(const Nat& a, const Nat& b);
  // requires a >= b
  static Nat sub(const Nat& a, const Nat& b);
  static Nat mul(const Nat& a, const Nat& b);
  static Nat mul_u64(const Nat& a, uint64_t b);

  // a mod m, m != 0
  static Nat mod(const Nat& a, const Nat& m);
  // (a*b) mod m without intermediate overflow
  static Nat mulmod(const Nat& a, const Nat& b, const Nat& m);
  // a mod d for small d
  static uint64_t mod_u64(const Nat& a, uint64_t d);
  // exact division by small d (caller guarantees divisibility)
  static Nat divexact_u64(const Nat& a, uint64_t d);

  void sub_u64_inplace(uint64_t b);  // requires *this >= b
  void add_u64_inplace(uint64_t b);

  std::string to_decimal() const;

 private:
  void normalize();
  int n_;
  std::array<mp_limb_t, kCap> w_;
};

}  // namespace ptw
