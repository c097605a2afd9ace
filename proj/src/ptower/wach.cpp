#include "ptower/wach.hpp"

#include <algorithm>

namespace ptw {

namespace {

void validate(const Context& c, const WachData& w) {
  size_t d = w.a0.size();
  if (d == 0 || w.a0[0].size() != d || w.weights.size() != d)
    fail(Status::kInvalidArgument, "A0 must be square with one weight per row");
  std::vector<int64_t> ws = w.weights;
  if (!std::is_sorted(ws.begin(), ws.end()) || ws.front() != 0 ||
      ws.back() > c.p() - 1)
    fail(Status::kDomainError, "weights must satisfy 0 = r_1 <= ... <= r_d <= p-1");
  Scalar det = mat_det(w.a0);
  if (det.is_zero() || det.valuation() != 0)
    fail(Status::kDomainError, "A0 must be invertible over the integer ring");
}

SeriesMat smat_zero(const Context& c, size_t d, int degree) {
  return SeriesMat(d, std::vector<PowerSeries>(d, PowerSeries::zero(c, degree)));
}

SeriesMat smat_identity(const Context& c, size_t d, int degree) {
  SeriesMat m = smat_zero(c, d, degree);
  for (size_t i = 0; i < d; ++i) m[i][i] = PowerSeries::one(c, degree);
  return m;
}

SeriesMat smat_mul(const SeriesMat& a, const SeriesMat& b) {
  size_t d = a.size();
  const Context& c = *a[0][0].ctx();
  SeriesMat r = smat_zero(c, d, a[0][0].cap());
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k)
      for (size_t j = 0; j < d; ++j) r[i][j] = r[i][j] + a[i][k] * b[k][j];
  return r;
}

SeriesMat smat_mul_const(const SeriesMat& a, const Mat& b) {
  size_t d = a.size();
  const Context& c = *a[0][0].ctx();
  SeriesMat r = smat_zero(c, d, a[0][0].cap());
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k)
      for (size_t j = 0; j < d; ++j) {
        if (b[k][j].is_exact_zero()) continue;
        r[i][j] = r[i][j] + a[i][k].mul_scalar(b[k][j]);
      }
  return r;
}

SeriesMat smat_phi(const SeriesMat& a) {
  SeriesMat r = a;
  for (auto& row : r)
    for (auto& x : row) x = x.phi();
  return r;
}

int64_t smat_diff_floor(const SeriesMat& a, const SeriesMat& b, bool* representable) {
  int64_t v = Scalar::kInfVal;
  bool rep = false;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) {
      PowerSeries d = a[i][j] - b[i][j];
      v = std::min(v, d.min_valuation());
      for (const auto& x : d.coeffs())
        if (!x.is_zero()) rep = true;
    }
  *representable = rep;
  return v;
}

}  // namespace

Mat wach_matrix_a(const Context&, const WachData& w) {
  size_t d = w.a0.size();
  Mat a = w.a0;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      a[i][j] = w.a0[i][j].mul_p_pow(-w.weights[i]);
  return a;
}

SeriesMat wach_matrix_p(const Context& c, const WachData& w, int degree) {
  size_t d = w.a0.size();
  int64_t rd = w.weights.back();
  PowerSeries mu = PowerSeries::mu_unit(c, degree);
  PowerSeries qinv = PowerSeries::cyclo_q(c, 1, degree).inv();
  SeriesMat p = smat_zero(c, d, degree);
  for (size_t i = 0; i < d; ++i) {
    PowerSeries diag = PowerSeries::one(c, degree);
    for (int64_t t = 0; t < rd - w.weights[i]; ++t) diag = diag * mu;
    for (int64_t t = 0; t < w.weights[i]; ++t) diag = diag * qinv;
    for (size_t j = 0; j < d; ++j) p[i][j] = diag.mul_scalar(w.a0[i][j]);
  }
  return p;
}

SeriesMat wach_matrix_p_inverse(const Context& c, const WachData& w, int degree) {
  size_t d = w.a0.size();
  int64_t rd = w.weights.back();
  Mat a0inv = mat_inverse(w.a0);
  PowerSeries muinv = PowerSeries::mu_unit(c, degree).inv();
  PowerSeries q = PowerSeries::cyclo_q(c, 1, degree);
  SeriesMat pinv = smat_zero(c, d, degree);
  for (size_t j = 0; j < d; ++j) {
    PowerSeries diag = PowerSeries::one(c, degree);
    for (int64_t t = 0; t < rd - w.weights[j]; ++t) diag = diag * muinv;
    for (int64_t t = 0; t < w.weights[j]; ++t) diag = diag * q;
    for (size_t i = 0; i < d; ++i) pinv[i][j] = diag.mul_scalar(a0inv[i][j]);
  }
  // P^-1 must be integral: a structural property of admissible data
  for (const auto& row : pinv)
    for (const auto& x : row)
      if (x.min_valuation() < 0)
        fail(Status::kDomainError, "P^-1 is not integral for this data");
  return pinv;
}

WachSolution solve_wach_matrix(const Context& c, const WachData& w, int pi_target,
                               int degree, int iteration_cap) {
  validate(c, w);
  size_t d = w.a0.size();
  if (degree <= 0) degree = std::max(pi_target + 8, 2 * pi_target);
  if (iteration_cap <= 0) iteration_cap = 2 * (c.precision() + degree) + 32;
  Mat a = wach_matrix_a(c, w);
  SeriesMat pinv = wach_matrix_p_inverse(c, w, degree);

  SeriesMat m = smat_identity(c, d, degree);
  WachSolution sol;
  sol.weights = w.weights;
  sol.degree = degree;
  bool converged = false;
  int64_t prev_floor = -Scalar::kInfVal;
  int stall = 0;
  for (int k = 0; k < iteration_cap; ++k) {
    SeriesMat next = smat_mul_const(smat_mul(pinv, smat_phi(m)), a);
    bool rep = false;
    int64_t diff = smat_diff_floor(next, m, &rep);
    m = std::move(next);
    sol.iterations = k + 1;
    if (!rep || diff >= c.precision()) {
      converged = true;
      break;
    }
    // demand forward progress: the mixed-topology contraction must keep
    // raising the floor of successive differences
    if (diff <= prev_floor) {
      if (++stall > 8)
        fail(Status::kDivergenceDetected,
             "successive iterates stopped approaching each other");
    } else {
      stall = 0;
      prev_floor = diff;
    }
  }
  if (!converged)
    fail(Status::kDivergenceDetected, "no fixed point within the iteration cap");

  // residual P M - phi(M) A
  SeriesMat p = wach_matrix_p(c, w, degree);
  SeriesMat lhs = smat_mul(p, m);
  SeriesMat rhs = smat_mul_const(smat_phi(m), a);
  int64_t denom = 0;
  for (const auto& row : m)
    for (const auto& x : row) denom = std::max(denom, -std::min<int64_t>(0, x.min_valuation()));
  for (const auto& row : p)
    for (const auto& x : row) denom = std::max(denom, -std::min<int64_t>(0, x.min_valuation()));
  sol.check_digits = c.precision() - denom - 4;
  int order = degree;
  int64_t resval = Scalar::kInfVal;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      PowerSeries rr = lhs[i][j] - rhs[i][j];
      resval = std::min(resval, rr.min_valuation());
      order = std::min(order, rr.pi_order(sol.check_digits));
    }
  sol.residual_pi_order = order;
  sol.residual_valuation = resval;

  // M = I mod pi^(r_d)
  int64_t rd = w.weights.back();
  int64_t cong = Scalar::kInfVal;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      for (int64_t t = 0; t < rd && t < m[i][j].cap(); ++t) {
        Scalar want = (i == j && t == 0) ? Scalar::one(c) : Scalar::zero(c);
        cong = std::min(cong, Scalar::diff_valuation(m[i][j][static_cast<int>(t)], want));
      }
  sol.congruence_digits = cong;
  if (cong < sol.check_digits)
    fail(Status::kInternal, "fixed point violates the identity congruence mod pi^(r_d)");
  sol.m = std::move(m);
  return sol;
}

std::vector<std::vector<IwasawaPoly>> wach_log_matrix(const Context& c,
                                                      const WachSolution& sol, int n) {
  size_t d = sol.m.size();
  std::vector<std::vector<IwasawaPoly>> out(d, std::vector<IwasawaPoly>(d));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      const PowerSeries& mij = sol.m[i][j];
      // coordinates of (1+pi) phi^n(m_ij): at levels <= n the inner phi^n
      // collapses to the constant term, at level n+1 it needs one genuine
      // evaluation of m_ij at zeta_p - 1
      Vec coords;
      Scalar c0 = mij[0].sigma(n);
      coords.push_back(c0);
      for (int l = 1; l <= n; ++l) {
        CycloElement v = CycloElement::zeta_power(c, l, 1).mul_scalar(c0);
        for (auto& x : v.zeta_basis()) coords.push_back(x);
      }
      CycloElement base = mij.sigma(n).eval_at_level(1).embed_to(n + 1);
      CycloElement v = CycloElement::zeta_power(c, n + 1, 1) * base;
      for (auto& x : v.zeta_basis()) coords.push_back(x);
      out[i][j] = mellin_inverse_from_coords(c, coords, n);
    }
  return out;
}

bool wach_log_divisibility_check(const Context& c, const WachSolution& sol, int n) {
  auto mlog = wach_log_matrix(c, sol, n);
  size_t d = mlog.size();
  int64_t rd = sol.weights.back();
  int64_t denom = 0;
  for (const auto& row : sol.m)
    for (const auto& x : row) denom = std::max(denom, -std::min<int64_t>(0, x.min_valuation()));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      IwasawaPoly f = mlog[i][j];
      if (i == j) f = f - IwasawaPoly::one(c);
      for (int64_t m = 0; m < rd; ++m) {
        // twist m = 0 is exact under the omega_{n,0} reduction; for m >= 1 the
        // reduction ambiguity acts at valuation >= n + 1 + v_p(m)
        int64_t vm = 0;
        for (int64_t t = m; t > 0 && t % c.p() == 0; t /= c.p()) ++vm;
        int64_t tol = m == 0 ? c.precision() - denom - 8 : n + 1 + vm - denom - 1;
        if (!omega_divides(f, n, m, tol)) return false;
      }
    }
  return true;
}

}  // namespace ptw
