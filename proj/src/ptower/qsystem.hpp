#pragma once

#include "ptower/solver.hpp"

namespace ptw {

// Tower-compatible family of tangent values d_n attached to a polynomial Q
// annihilating a p-rescaled Frobenius on the twisted module.  The schedule
// exponents E(n) = schedule_coeff * n record the p-power rescaling under
// which the corestriction relation holds; schedule_const carries the
// n-independent normalization as metadata only.
struct QSystemFamily {
  PhiModule module;  // the twisted module T(-m)
  int64_t twist_m = 0;
  std::vector<Scalar> q_poly;  // little-endian
  std::vector<TangentVector> family;  // index 0 <-> level 1
  int64_t schedule_coeff = 0;
  int64_t schedule_const = 0;
};

// family d_n = tangent value of Tw_{-m}(g) on T(-m) for 1 <= n <= n_max.
// Requires Q(p^(1+schedule_coeff) phi) = 0 on the twisted module, which is the
// tangent-level annihilation matching the scheduled corestriction relation.
QSystemFamily build_q_system(const PhiModule& t_module, const SparseDatum& g,
                             std::vector<Scalar> q_poly, int64_t m, int n_max,
                             int64_t r, int64_t s);

struct QSystemReport {
  // trace_step_ok[n-1]: Tr_{n+1/n} d_{n+1} = p (1 (x) phi) d_n
  std::vector<bool> trace_step_ok;
  // q_relation_ok[n-1]: sum_i a_i p^E(n+i) Tr_{n+i/n} d_{n+i} = 0
  std::vector<bool> q_relation_ok;
  int64_t checked_digits = 0;
  bool all_ok() const;
};

QSystemReport verify_q_system(const QSystemFamily& qs, int64_t tol);

}  // namespace ptw
