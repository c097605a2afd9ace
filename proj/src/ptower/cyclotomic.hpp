#pragma once

#include <vector>

#include "ptower/scalar.hpp"

namespace ptw {

// Element of O_F[zeta_{p^n}] as a residue polynomial in pi_n = zeta_{p^n} - 1
// modulo Phi_{p^n}(1+X).  Level 0 is the base coefficient ring itself.
// cross-level arithmetic requires an explicit embed_up.
class CycloElement {
 public:
  CycloElement() = default;

  static CycloElement zero(const Context& c, int level);
  static CycloElement one(const Context& c, int level);
  static CycloElement from_scalar(const Context& c, int level, const Scalar& s);
  // zeta_{p^level}^j (j arbitrary, reduced mod p^level)
  static CycloElement zeta_power(const Context& c, int level, int64_t j);

  const Context* ctx() const { return ctx_; }
  int level() const { return level_; }
  int64_t degree() const { return static_cast<int64_t>(c_.size()); }
  const Scalar& coeff(int64_t i) const { return c_[i]; }
  void set_coeff(int64_t i, const Scalar& s) { c_[i] = s; }

  CycloElement operator+(const CycloElement& b) const;
  CycloElement operator-(const CycloElement& b) const;
  CycloElement operator*(const CycloElement& b) const;
  CycloElement operator-() const;
  CycloElement mul_scalar(const Scalar& s) const;
  CycloElement mul_p_pow(int64_t e) const;
  // Frobenius sigma^k applied to the O_F-coefficients (zeta is fixed)
  CycloElement sigma(int k) const;

  bool is_zero_at(int64_t digits) const;  // all coefficients vanish to `digits`
  int64_t min_valuation() const;          // over residue coefficients; kInf if zero
  static int64_t diff_valuation(const CycloElement& a, const CycloElement& b);

  // trace to the next level down; level 0 elements are returned unchanged
  // only if level >= 1 (level 0 has no further trace).
  CycloElement trace_down() const;
  // iterated trace down to `target` level
  CycloElement trace_to(int target) const;
  // embedding into level + 1 via pi_n = (1+pi_{n+1})^p - 1
  CycloElement embed_up() const;
  CycloElement embed_to(int target) const;

  bool is_trace_zero(int64_t digits) const;

  // splitting of O_{F_n} = O_{F_n}^{Tr=0} + ... + O_{F_2}^{Tr=0} + O_{F_1};
  // component i (1-indexed) is returned at level max(i,1); component 0 unused.
  std::vector<CycloElement> decompose() const;

  // coefficients over the zeta-power basis 1, zeta, ..., zeta^(deg-1)
  std::vector<Scalar> zeta_basis() const;
  static CycloElement from_zeta_basis(const Context& c, int level,
                                      const std::vector<Scalar>& b);

  // tail valuation floor carried from truncated-series evaluation (p-digits)
  int64_t tail_floor() const { return tail_floor_; }
  void set_tail_floor(int64_t t) { tail_floor_ = t; }

  std::string str() const;

 private:
  const Context* ctx_ = nullptr;
  int level_ = 0;
  std::vector<Scalar> c_;
  int64_t tail_floor_ = Scalar::kInfVal;
};

}  // namespace ptw
