#pragma once

#include <optional>

#include "ptower/linalg.hpp"

namespace ptw {

struct PhiConstants {
  int64_t r = 1;   // slopes of phi are >= -r, 1 <= r <= b
  int64_t s = 0;   // satisfies both the iterate bound and the resolvent bound
  int64_t s1 = 0;  // (p^r phi)^k D subset p^-s1 D for all k
  int64_t s2 = 0;  // (1-phi)^-1 D subset p^-s2 D
  int iteration_cap = 0;
  bool stabilized = false;
};

// Filtered Frobenius module: rank-d module over the unramified coefficient
// ring with sigma-semilinear phi given by its matrix in the column convention
// phi(v_j) = sum_i m[i][j] v_i, a Hodge-Tate weight multiset, and the
// codimension d' of Fil^0.
class PhiModule {
 public:
  PhiModule(const Context& c, Mat phi, std::vector<int64_t> weights,
            int64_t d_prime = -1);

  const Context* ctx() const { return ctx_; }
  int rank() const { return d_; }
  const Mat& matrix() const { return phi_; }
  const std::vector<int64_t>& weights() const { return weights_; }
  int64_t weight_min() const;  // a
  int64_t weight_max() const;  // b
  int64_t d_prime() const { return d_prime_; }

  // phi^k as a semilinear operator applied to a coordinate vector
  Vec apply_phi(const Vec& x, int k = 1) const;
  Vec apply_phi_inv(const Vec& x, int k = 1) const;
  // solve (1 - p^j phi) x = v
  Vec solve_one_minus_pj_phi(int64_t j, const Vec& v) const;
  Scalar det_one_minus_phi() const;  // over the flattened Z_p-linear model

  // Z_p-linear model: the d*nu x d*nu matrix of phi (or of 1 - p^j phi)
  Mat flattened_phi() const;

  // characteristic polynomial of the flattened phi, little-endian
  std::vector<Scalar> char_poly() const;
  // eigenvalue valuations (Newton polygon) as exact rationals num/den,
  // repeated with multiplicity
  std::vector<std::pair<int64_t, int64_t>> slopes() const;
  // (H.eigen): no eigenvalue of phi is an integral power of p
  bool eigen_hypothesis_holds() const;

  PhiConstants derive_constants(int64_t r, int cap = 0) const;

  // Tate twist D(m): matrix p^-m phi, weights shifted by +m
  PhiModule twist(int64_t m) const;

  // Q(X) = det(X^nu - phi^nu) on D(-k): annihilates p^k phi.  Little-endian,
  // degree nu*d, integral whenever k >= b.
  std::vector<Scalar> k_polynomial(int64_t k) const;
  // Q_{T,r}: coefficients a_i / p^((b-r)(nu d - i)); DomainError when r is too
  // small for integrality
  std::vector<Scalar> k_polynomial_rescaled(int64_t r) const;
  bool is_k_polynomial(const std::vector<Scalar>& q, int64_t k, int64_t tol) const;

 private:
  const Context* ctx_;
  int d_;
  Mat phi_;
  std::vector<int64_t> weights_;
  int64_t d_prime_;
};

// the rank-2 module attached to a weight-k eigenform with v_p(a_p) >= k/2,
// twisted to weights {1 - k/2, k/2}; eps is the nebentypus value at p (+-1)
PhiModule modular_form_module(const Context& c, int64_t k, const Scalar& a_p,
                              int64_t eps = 1);

}  // namespace ptw
