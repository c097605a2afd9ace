#pragma once

#include "ptower/iwasawa.hpp"
#include "ptower/linalg.hpp"

namespace ptw {

using SeriesMat = std::vector<std::vector<PowerSeries>>;

struct WachData {
  Mat a0;                        // invertible over the coefficient ring
  std::vector<int64_t> weights;  // 0 = r_1 <= ... <= r_d <= p-1
};

struct WachSolution {
  SeriesMat m;                     // the change-of-basis matrix
  std::vector<int64_t> weights;
  int iterations = 0;
  int degree = 0;
  // residual P M - phi(M) A: largest pi-degree below which all coefficients
  // vanish at the attested valuation, and that valuation
  int residual_pi_order = 0;
  int64_t residual_valuation = 0;
  int64_t check_digits = 0;        // vanishing threshold used by the checks
  int64_t congruence_digits = 0;   // attested digits of M = I mod pi^(r_d)
};

// Fixed-point iteration M <- P^-1 phi(M) A with M_0 = I in the mixed
// (p, pi)-adic topology.  Raises DivergenceDetected when successive iterates
// stop approaching each other within the cap; arbitrary (A0, weights) need
// not come from an actual lattice and honest failure is expected then.
WachSolution solve_wach_matrix(const Context& c, const WachData& w, int pi_target,
                               int degree = 0, int iteration_cap = 0);

// A = diag(p^-r_i) A0 and P = diag(mu^(r_d - r_i) q^-r_i) A0 for inspection
Mat wach_matrix_a(const Context& c, const WachData& w);
SeriesMat wach_matrix_p(const Context& c, const WachData& w, int degree);
SeriesMat wach_matrix_p_inverse(const Context& c, const WachData& w, int degree);

// M_log at level n: entrywise inverse Mellin transform of (1+pi) phi^n(M),
// reduced mod omega_{n,0}
std::vector<std::vector<IwasawaPoly>> wach_log_matrix(const Context& c,
                                                      const WachSolution& sol, int n);

// checks omega_{n-1,m} | (M_log - I) for every m in {0..r_d-1}; twists m >= 1
// are tested against the reduction-ambiguity tolerance n + 1 + v_p(m) adjusted
// by the solution's denominators
bool wach_log_divisibility_check(const Context& c, const WachSolution& sol, int n);

}  // namespace ptw
