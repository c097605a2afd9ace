#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "ptower/errors.hpp"
#include "ptower/nat.hpp"

namespace ptw {

// Residue in the coefficient ring O_F / p^N.  For nu == 1 this is a single
// residue mod p^N; for nu > 1 it is a polynomial of degree < nu modulo the
// fixed unramified defining polynomial.
using Unit = boost::container::small_vector<Nat, 1>;

struct ContextParams {
  int64_t p = 3;
  int precision = 64;      // work modulo p^precision
  int nu = 1;              // unramified degree; nu = 1 means F = Q_p
  uint64_t u = 0;          // chi(gamma); 0 selects the default 1 + p
  int degree_cap = 0;      // default series truncation; 0 selects 3*p^3
  int tower_cap = 0;       // max cyclotomic level; 0 selects a p-based default
};

// Immutable arithmetic context: the prime, the working precision, the
// unramified coefficient ring with its Frobenius, and shared caches.
class Context {
 public:
  explicit Context(const ContextParams& params);

  int64_t p() const { return p_; }
  int precision() const { return N_; }
  int nu() const { return nu_; }
  uint64_t u() const { return u_; }
  int degree_cap() const { return degree_cap_; }
  int tower_cap() const { return tower_cap_; }

  const Nat& p_pow(int e) const;        // p^e as an exact integer, 0 <= e <= N
  const Nat& modulus() const { return p_pow_[N_]; }

  // ---- coefficient-ring residues -------------------------------------
  Unit unit_zero() const;
  Unit unit_one() const;
  Unit unit_from_u64(uint64_t x) const;
  bool unit_is_zero(const Unit& a) const;
  bool unit_eq(const Unit& a, const Unit& b) const;
  Unit unit_add(const Unit& a, const Unit& b) const;
  Unit unit_sub(const Unit& a, const Unit& b) const;
  Unit unit_neg(const Unit& a) const;
  Unit unit_mul(const Unit& a, const Unit& b) const;
  Unit unit_mul_nat(const Unit& a, const Nat& b) const;
  // multiplicative inverse; requires a invertible (not divisible by p)
  Unit unit_inv(const Unit& a) const;
  // Frobenius sigma^k on residues (k may be negative)
  Unit unit_sigma(const Unit& a, int k) const;
  // p-adic valuation of a residue (minimum over coordinates), capped at N
  int unit_val(const Unit& a) const;
  // divide by p^e; requires e <= unit_val(a)
  Unit unit_divexact_p(const Unit& a, int e) const;
  Unit unit_mul_ppow(const Unit& a, int e) const;  // multiply by p^e, e >= 0

  // valuation and unit part of an exact nonnegative integer
  std::pair<int, Nat> val_unit_of_nat(const Nat& x) const;

  // inverse mod p^N of a single residue coprime to p
  Nat nat_inv_unit(const Nat& x) const;

  // binomially expanded cyclotomic polynomial Phi_{p^level}(1+X) as integer
  // residues mod p^N (monic, degree (p-1)p^(level-1)); level >= 1
  const std::vector<Nat>& cyclo_poly(int level) const;

  // (p-1) p^(level-1), the degree of F_level over F
  int64_t cyclo_degree(int level) const;

 private:
  void build_unramified();
  std::vector<Nat> poly_mulmod(const std::vector<Nat>& a, const std::vector<Nat>& b) const;

  int64_t p_;
  int N_;
  int nu_;
  uint64_t u_;
  int degree_cap_;
  int tower_cap_;
  std::vector<Nat> p_pow_;                 // p^0 .. p^N
  std::vector<Nat> defpoly_;               // monic, degree nu (coeff residues)
  std::vector<std::vector<std::vector<Nat>>> sigma_mat_;  // sigma^k as nu x nu residue matrices
  mutable std::mutex cache_mu_;
  mutable std::vector<std::vector<Nat>> cyclo_cache_;
};

using ContextPtr = std::shared_ptr<const Context>;

ContextPtr make_context(const ContextParams& params);

}  // namespace ptw
