#pragma once

#include "ptower/dieudonne.hpp"
#include "ptower/sparse.hpp"

namespace ptw {

// module-valued datum: component t is the coefficient of basis vector v_t
using SparseDatum = std::vector<PsiZeroSeries>;

struct ModuleSeriesDense {
  std::vector<PowerSeries> comp;
  int64_t twist_index = 0;
};

struct TangentVector {
  std::vector<CycloElement> comp;
  int level = 0;
  int64_t twist_index = 0;
  int64_t scaling_exponent = 0;  // recorded p-power normalization, never materialized
};

struct SolveStats {
  PhiConstants constants;
  int iterations = 0;
  int degree = 0;
  int64_t term_floor = 0;          // min valuation seen across summed terms
  int64_t loss_bound = 0;          // documented bound s + r ceil(log_p D)
  int64_t residual_valuation = 0;  // of (1-phi)G - g on the checked window
  int64_t psi_fixed_valuation = 0; // of psi(G) - G on the psi window
  // certified threshold for the psi check: the truncation tail feeds the
  // output degree t at valuation about (degree - p t)/(p-1), so the fixed
  // point is only attestable above this line
  int64_t psi_check_threshold = 0;
  int psi_window = 0;
  int check_window = 0;
};

struct SolveResult {
  ModuleSeriesDense G;
  SolveStats stats;
};

// Delta_j(g) = (partial^j tensor 1)(g) at pi = 0
Vec datum_delta(const PhiModule& m, const SparseDatum& g, int64_t j);
// g - sum_j t^j/j! Delta_j(g), densified at `degree`; pi-order >= r+1 checked
std::vector<PowerSeries> datum_reduced_tail(const PhiModule& m, const SparseDatum& g,
                                            int64_t r, int degree);

// Tw_m on the series side: partial^(-m) per component (module side: m.twist(m))
SparseDatum twist_datum(const SparseDatum& g, int64_t m);

// Solves (1-phi)G = g by the convergent phi-series plus the finite t-correction.
// The residual and the psi-fixed-point property are verified on a window of
// min(degree, 512) coefficients (phi respects the degree filtration, so the
// window check pins exactly those coefficients of G).
//
// The series is summed at an internally elevated precision: each term is the
// difference of pieces whose valuations sink like -r k, so fixed relative
// precision would surrender about r digits per iteration to cancellation.
// Lifting the inputs (canonical unit lift) is sound because the ambiguity is
// below p^N and feeds through (1-phi)^(-1) at p^(N - s2).  `stop_digits`
// bounds the absolute precision actually accumulated (0 selects the context
// precision); `internal_lift` can be disabled by callers that already lifted.
SolveResult solve_one_minus_phi(const PhiModule& m, const SparseDatum& g, int64_t r,
                                int degree, int iteration_cap = 0,
                                int64_t stop_digits = 0, bool internal_lift = true);

// extra relative digits needed to absorb iterate growth and cancellation in a
// solve of the given shape
int64_t solve_lift_digits(const PhiModule& m, const PhiConstants& k, int degree,
                          int64_t stop_digits);

// Sum over levels of the closed evaluation formula, no series limit involved.
struct TangentBreakdown {
  TangentVector total;
  // summand from tower level i (1-indexed), kept at its own level
  std::vector<std::vector<CycloElement>> level_part;
  // (sigma^-n tensor 1)(1-phi)^(-1) phi^n g(0)
  Vec constant_part;
};
TangentBreakdown tangent_eval_direct_breakdown(const PhiModule& m, const SparseDatum& g,
                                               int n);
TangentVector tangent_eval_direct(const PhiModule& m, const SparseDatum& g, int n);

// Evaluation of the truncated solver output at zeta_{p^n} - 1.  The degree is
// chosen so that the certified tail bound reaches `target_digits` agreement
// with the closed formula.
struct SeriesThetaResult {
  TangentVector value;
  int64_t certified_agreement = 0;
  SolveStats stats;
};
SeriesThetaResult tangent_eval_via_series(const PhiModule& m, const SparseDatum& g,
                                          int n, int64_t r, int64_t target_digits);

// one solve sized for the deepest level, evaluated at every level in 1..n_max
std::vector<SeriesThetaResult> tangent_eval_via_series_multi(const PhiModule& m,
                                                             const SparseDatum& g,
                                                             int n_max, int64_t r,
                                                             int64_t target_digits);

// coefficient vector (partial^m x_t)(zeta_{p^n}-1)/m! for n >= 1; at n = 0 the
// module-side factor (1 - p^(m-1) phi^(-1)) is applied instead
std::vector<CycloElement> module_eval_at_level(const PhiModule& m,
                                               const ModuleSeriesDense& x, int64_t mm,
                                               int n);

// (1 tensor phi) on a tangent vector (module-side matrix application)
TangentVector tangent_apply_phi(const PhiModule& m, const TangentVector& tv);
TangentVector tangent_trace_down(const TangentVector& tv);
int64_t tangent_diff_valuation(const TangentVector& a, const TangentVector& b);

// certified floor for coefficients of the exact solution at degree j, given
// the derived constants (used for evaluation tail bounds)
int64_t solution_coeff_floor(const Context& c, const PhiConstants& k, int64_t j);

}  // namespace ptw
