#include "ptower/solver.hpp"

#include <algorithm>

namespace ptw {

namespace {

int ceil_log_p(const Context& c, int64_t x) {
  int r = 0;
  int64_t acc = 1;
  while (acc < x) {
    acc *= c.p();
    ++r;
  }
  return r;
}

// binomial row binom(x, t) for 0 <= t < len, x an exact nonnegative integer
void binomial_row(const Context& c, Nat x, std::vector<Scalar>& out,
                  const std::vector<Scalar>& inv_table) {
  size_t len = out.size();
  out[0] = Scalar::one(c);
  Scalar cur = Scalar::one(c);
  Nat rem = std::move(x);
  for (size_t t = 1; t < len; ++t) {
    if (rem.is_zero()) {
      for (size_t s = t; s < len; ++s) out[s] = Scalar::zero(c);
      return;
    }
    auto [v, u] = c.val_unit_of_nat(rem);
    Unit uu = c.unit_zero();
    uu[0] = Nat::mod(u, c.modulus());
    cur = cur * Scalar::from_val_unit(c, v, std::move(uu));
    cur = cur * inv_table[t];
    out[t] = cur;
    rem.sub_u64_inplace(1);
  }
}

std::vector<Scalar> make_inverse_table(const Context& c, int len) {
  std::vector<Scalar> inv(static_cast<size_t>(len) + 1, Scalar::zero(c));
  for (int t = 1; t <= len; ++t) inv[static_cast<size_t>(t)] = Scalar::from_int(c, t).inv();
  return inv;
}

}  // namespace

Vec datum_delta(const PhiModule& m, const SparseDatum& g, int64_t j) {
  const Context& c = *m.ctx();
  Vec out(static_cast<size_t>(m.rank()), Scalar::zero(c));
  for (size_t t = 0; t < g.size(); ++t)
    for (const auto& [e, co] : g[t].support()) {
      Scalar ej = scalar_from_bigint(c, e).pow_u64(static_cast<uint64_t>(j));
      out[t] += co * ej;
    }
  return out;
}

std::vector<PowerSeries> datum_reduced_tail(const PhiModule& m, const SparseDatum& g,
                                            int64_t r, int degree) {
  const Context& c = *m.ctx();
  if (r >= c.p())
    fail(Status::kDomainError, "r must stay below p for integral t^j/j! corrections");
  std::vector<PowerSeries> gd;
  gd.reserve(g.size());
  for (const auto& f : g) gd.push_back(f.to_series(degree));
  for (int64_t j = 0; j <= r; ++j) {
    Vec dj = datum_delta(m, g, j);
    PowerSeries tj = PowerSeries::t_power_over_factorial(c, static_cast<int>(j), degree);
    for (size_t t = 0; t < gd.size(); ++t)
      if (!dj[t].is_exact_zero()) gd[t] = gd[t] - tj.mul_scalar(dj[t]);
  }
  for (const auto& f : gd)
    if (f.pi_order(c.precision() - 4) < static_cast<int>(r) + 1)
      fail(Status::kInternal, "reduced tail is not divisible by pi^(r+1)");
  return gd;
}

SparseDatum twist_datum(const SparseDatum& g, int64_t m) {
  SparseDatum out;
  out.reserve(g.size());
  for (const auto& f : g) out.push_back(f.partial_pow(-m));
  return out;
}

namespace {

PhiModule transport_module(const Context& to, const PhiModule& m) {
  Mat mm = m.matrix();
  for (auto& row : mm)
    for (auto& x : row) x = Scalar::transport(to, x);
  return PhiModule(to, std::move(mm), m.weights(), m.d_prime());
}

SparseDatum transport_datum(const Context& to, const SparseDatum& g) {
  SparseDatum out;
  for (const auto& f : g) {
    PsiZeroSeries h(to);
    for (const auto& [e, co] : f.support()) h.add_term(e, Scalar::transport(to, co));
    out.push_back(std::move(h));
  }
  return out;
}

CycloElement transport_cyclo(const Context& to, const CycloElement& x) {
  CycloElement out = CycloElement::zero(to, x.level());
  for (int64_t i = 0; i < x.degree(); ++i)
    out.set_coeff(i, Scalar::transport(to, x.coeff(i)));
  out.set_tail_floor(x.tail_floor());
  return out;
}

SolveResult solve_impl(const PhiModule& m, const SparseDatum& g, int64_t r,
                       int degree, int iteration_cap, int64_t stop_digits) {
  const Context& c = *m.ctx();
  int d = m.rank();
  if (static_cast<int>(g.size()) != d)
    fail(Status::kInvalidArgument, "datum size does not match the module rank");
  if (stop_digits <= 0) stop_digits = c.precision();
  stop_digits = std::min<int64_t>(stop_digits, c.precision());
  SolveResult res;
  res.stats.constants = m.derive_constants(r);
  res.stats.degree = degree;
  int logD = ceil_log_p(c, degree);
  res.stats.loss_bound = res.stats.constants.s + r * logD;
  if (iteration_cap <= 0)
    iteration_cap = static_cast<int>(stop_digits) + static_cast<int>(r + 1) * logD +
                    static_cast<int>(res.stats.constants.s) + 16;

  // Delta_j and the resolvent corrections
  std::vector<Vec> delta(static_cast<size_t>(r) + 1);
  std::vector<Vec> resolvent(static_cast<size_t>(r) + 1);
  for (int64_t j = 0; j <= r; ++j) {
    delta[static_cast<size_t>(j)] = datum_delta(m, g, j);
    resolvent[static_cast<size_t>(j)] =
        m.solve_one_minus_pj_phi(j, delta[static_cast<size_t>(j)]);
  }
  std::vector<PowerSeries> tpow;
  for (int64_t j = 0; j <= r; ++j)
    tpow.push_back(PowerSeries::t_power_over_factorial(c, static_cast<int>(j), degree));

  // reduced tail is summed via its structure: phi^k(gtilde) =
  //   sum_(t,e) sigma^k(coeff) (1+pi)^(e p^k) (x) phi^k(v_t)
  //   - sum_j p^(jk) t^j/j! (x) phi^k(Delta_j)
  std::vector<PowerSeries> acc(static_cast<size_t>(d), PowerSeries::zero(c, degree));
  std::vector<Scalar> brow(static_cast<size_t>(degree), Scalar::zero(c));
  std::vector<Scalar> inv_table = make_inverse_table(c, degree);

  // iterated phi on basis vectors and on the deltas
  std::vector<Vec> phik_basis(static_cast<size_t>(d));
  for (int t = 0; t < d; ++t) {
    Vec e(static_cast<size_t>(d), Scalar::zero(c));
    e[static_cast<size_t>(t)] = Scalar::one(c);
    phik_basis[static_cast<size_t>(t)] = std::move(e);
  }
  std::vector<Vec> phik_delta = delta;

  int64_t floor_seen = Scalar::kInfVal;
  bool converged = false;
  std::vector<PowerSeries> term(static_cast<size_t>(d), PowerSeries::zero(c, degree));
  for (int k = 0; k <= iteration_cap; ++k) {
    for (auto& f : term) f = PowerSeries::zero(c, degree);
    // sparse part
    for (int t = 0; t < d; ++t) {
      for (const auto& [e, co] : g[static_cast<size_t>(t)].support()) {
        // exponent e * p^k as an exact integer
        BigInt be = e;
        for (int i = 0; i < k; ++i) be *= c.p();
        Nat x = Nat::from_decimal(be.str());
        binomial_row(c, std::move(x), brow, inv_table);
        Scalar coef = co.sigma(k).mul_p_pow(-r * k);
        const Vec& w = phik_basis[static_cast<size_t>(t)];
        for (int s = 0; s < d; ++s) {
          if (w[static_cast<size_t>(s)].is_exact_zero()) continue;
          Scalar f = coef * w[static_cast<size_t>(s)];
          PowerSeries& dst = term[static_cast<size_t>(s)];
          for (int deg = 0; deg < degree; ++deg) {
            if (brow[static_cast<size_t>(deg)].is_exact_zero()) break;
            dst.at(deg) += brow[static_cast<size_t>(deg)] * f;
          }
        }
      }
    }
    // t-power part
    for (int64_t j = 0; j <= r; ++j) {
      const Vec& w = phik_delta[static_cast<size_t>(j)];
      Scalar pjk = Scalar::p_power(c, (j - r) * k);
      for (int s = 0; s < d; ++s) {
        if (w[static_cast<size_t>(s)].is_exact_zero()) continue;
        term[static_cast<size_t>(s)] =
            term[static_cast<size_t>(s)] - tpow[static_cast<size_t>(j)].mul_scalar(pjk * w[static_cast<size_t>(s)]);
      }
    }
    int64_t tmin = Scalar::kInfVal;
    bool representable = false;
    for (int s = 0; s < d; ++s) {
      acc[static_cast<size_t>(s)] = acc[static_cast<size_t>(s)] + term[static_cast<size_t>(s)];
      tmin = std::min(tmin, term[static_cast<size_t>(s)].min_valuation());
      for (const auto& x : term[static_cast<size_t>(s)].coeffs())
        if (!x.is_zero()) representable = true;
    }
    floor_seen = std::min(floor_seen, tmin);
    res.stats.iterations = k + 1;
    // stop once the term carries no digits inside the requested window (later
    // terms only gain further valuation, so the omitted tail sits there too)
    if (!representable || tmin >= stop_digits) {
      converged = true;
      break;
    }
    // advance the rescaled iterates (p^r phi)^k, whose entries stay bounded by
    // p^(-s1); the exact p^(-rk) shift is folded into the term coefficients
    for (int t = 0; t < d; ++t) {
      Vec& w = phik_basis[static_cast<size_t>(t)];
      w = m.apply_phi(w);
      for (auto& x : w) x = x.mul_p_pow(r);
    }
    for (int64_t j = 0; j <= r; ++j) {
      Vec& w = phik_delta[static_cast<size_t>(j)];
      w = m.apply_phi(w);
      for (auto& x : w) x = x.mul_p_pow(r);
    }
  }
  if (!converged)
    fail(Status::kDivergenceDetected,
         "phi-series terms failed to gain valuation within the iteration cap");

  // finite correction
  for (int64_t j = 0; j <= r; ++j) {
    const Vec& y = resolvent[static_cast<size_t>(j)];
    for (int s = 0; s < d; ++s)
      if (!y[static_cast<size_t>(s)].is_exact_zero())
        acc[static_cast<size_t>(s)] =
            acc[static_cast<size_t>(s)] + tpow[static_cast<size_t>(j)].mul_scalar(y[static_cast<size_t>(s)]);
  }
  res.stats.term_floor = std::min<int64_t>(floor_seen, 0);

  // verification window: residual (1-phi)G - g and psi(G) = G
  int window = std::min(degree, 512);
  std::vector<PowerSeries> gw;
  for (int s = 0; s < d; ++s) gw.push_back(acc[static_cast<size_t>(s)].truncate(window));
  // phi(G) on the window: series substitution + module matrix
  std::vector<PowerSeries> phiG(static_cast<size_t>(d), PowerSeries::zero(c, window));
  for (int t = 0; t < d; ++t) {
    PowerSeries ft = gw[static_cast<size_t>(t)].phi();
    for (int s = 0; s < d; ++s) {
      const Scalar& a = m.matrix()[static_cast<size_t>(s)][static_cast<size_t>(t)];
      if (a.is_exact_zero()) continue;
      phiG[static_cast<size_t>(s)] = phiG[static_cast<size_t>(s)] + ft.mul_scalar(a);
    }
  }
  int64_t resid = Scalar::kInfVal;
  int64_t psival = Scalar::kInfVal;
  // psi on the module tensor is psi (x) phi^(-1), the left inverse of the
  // diagonal phi (x) phi
  Mat phi_inv_cols(static_cast<size_t>(d), Vec(static_cast<size_t>(d), Scalar::zero(c)));
  for (int t = 0; t < d; ++t) {
    Vec e(static_cast<size_t>(d), Scalar::zero(c));
    e[static_cast<size_t>(t)] = Scalar::one(c);
    Vec col = m.apply_phi_inv(e);
    for (int s = 0; s < d; ++s) phi_inv_cols[static_cast<size_t>(s)][static_cast<size_t>(t)] = col[static_cast<size_t>(s)];
  }
  // psi is evaluated on the full truncation but compared on a reduced window:
  // the unseen tail (degrees >= `degree`) reaches output degree t with
  // valuation about (degree - p t)/(p-1) + floor, which caps the attestable
  // agreement there
  std::vector<PowerSeries> psi_in;
  for (int s = 0; s < d; ++s) psi_in.push_back(acc[static_cast<size_t>(s)]);
  int psi_cap = (degree + static_cast<int>(c.p()) - 1) / static_cast<int>(c.p());
  int psi_window = std::max(2, std::min(psi_cap, window / (2 * static_cast<int>(c.p()))));
  std::vector<PowerSeries> psiG(static_cast<size_t>(d), PowerSeries::zero(c, psi_cap));
  for (int t = 0; t < d; ++t) {
    PowerSeries pt = psi_in[static_cast<size_t>(t)].truncate(window).psi();
    for (int s = 0; s < d; ++s) {
      const Scalar& a = phi_inv_cols[static_cast<size_t>(s)][static_cast<size_t>(t)];
      if (a.is_exact_zero()) continue;
      psiG[static_cast<size_t>(s)] = psiG[static_cast<size_t>(s)] + pt.mul_scalar(a);
    }
  }
  int64_t tail_line = (static_cast<int64_t>(window) - c.p() * psi_window) / (c.p() - 1) -
                      1 + res.stats.term_floor;
  res.stats.psi_check_threshold =
      std::min<int64_t>(stop_digits - res.stats.loss_bound, tail_line) - 2;
  res.stats.psi_window = psi_window;
  for (int s = 0; s < d; ++s) {
    PowerSeries rr = gw[static_cast<size_t>(s)] - phiG[static_cast<size_t>(s)] -
                     g[static_cast<size_t>(s)].to_series(window);
    resid = std::min(resid, rr.min_valuation());
    for (int t = 0; t < psi_window; ++t)
      psival = std::min(psival, Scalar::diff_valuation(psiG[static_cast<size_t>(s)][t],
                                                       acc[static_cast<size_t>(s)][t]));
  }
  res.stats.residual_valuation = resid;
  res.stats.psi_fixed_valuation = psival;
  res.stats.check_window = window;
  res.G.comp = std::move(acc);
  return res;
}

}  // namespace

int64_t solve_lift_digits(const PhiModule& m, const PhiConstants& k, int degree,
                          int64_t stop_digits) {
  const Context& c = *m.ctx();
  int logD = ceil_log_p(c, degree);
  int64_t grow = std::max<int64_t>(
      {int64_t{0}, -mat_min_valuation(m.matrix()), k.r});
  int64_t k_stop = stop_digits + (k.r + 1) * logD + k.s + 24;
  return grow * k_stop + 16;
}

SolveResult solve_one_minus_phi(const PhiModule& m, const SparseDatum& g, int64_t r,
                                int degree, int iteration_cap, int64_t stop_digits,
                                bool internal_lift) {
  const Context& c = *m.ctx();
  if (stop_digits <= 0) stop_digits = c.precision();
  if (!internal_lift)
    return solve_impl(m, g, r, degree, iteration_cap, stop_digits);
  PhiConstants k = m.derive_constants(r);
  int64_t lift = solve_lift_digits(m, k, degree, stop_digits);
  ContextParams prm;
  prm.p = c.p();
  prm.precision = static_cast<int>(c.precision() + lift);
  prm.nu = c.nu();
  prm.u = c.u();
  prm.degree_cap = c.degree_cap();
  prm.tower_cap = c.tower_cap();
  ContextPtr lifted = make_context(prm);
  PhiModule ml = transport_module(*lifted, m);
  SparseDatum gl = transport_datum(*lifted, g);
  SolveResult res = solve_impl(ml, gl, r, degree, iteration_cap, stop_digits);
  for (auto& f : res.G.comp) {
    std::vector<Scalar> back;
    back.reserve(static_cast<size_t>(f.cap()));
    for (int i = 0; i < f.cap(); ++i) back.push_back(Scalar::transport(c, f[i]));
    f = PowerSeries::from_coeffs(c, std::move(back));
  }
  return res;
}

TangentBreakdown tangent_eval_direct_breakdown(const PhiModule& m, const SparseDatum& g,
                                               int n) {
  const Context& c = *m.ctx();
  int d = m.rank();
  TangentBreakdown out;
  out.total.level = n;
  out.total.comp.assign(static_cast<size_t>(d), CycloElement::zero(c, n));
  out.level_part.assign(static_cast<size_t>(n) + 1, {});

  // phi^(n-i) on basis vectors, accumulated from i = n downward
  std::vector<Vec> phipow(static_cast<size_t>(d));
  for (int t = 0; t < d; ++t) {
    Vec e(static_cast<size_t>(d), Scalar::zero(c));
    e[static_cast<size_t>(t)] = Scalar::one(c);
    phipow[static_cast<size_t>(t)] = std::move(e);
  }
  for (int i = n; i >= 1; --i) {
    // (sigma^-i tensor phi^(n-i)) g evaluated at zeta_{p^i} - 1
    std::vector<CycloElement> part(static_cast<size_t>(d), CycloElement::zero(c, i));
    for (int t = 0; t < d; ++t) {
      if (g[static_cast<size_t>(t)].empty()) continue;
      PsiZeroSeries tw = c.nu() == 1 ? g[static_cast<size_t>(t)] : [&] {
        PsiZeroSeries s(c);
        for (const auto& [e, co] : g[static_cast<size_t>(t)].support())
          s.add_term(e, co.sigma(-i));
        return s;
      }();
      CycloElement val = tw.eval_at_level(i);
      const Vec& w = phipow[static_cast<size_t>(t)];
      for (int s = 0; s < d; ++s)
        if (!w[static_cast<size_t>(s)].is_exact_zero())
          part[static_cast<size_t>(s)] = part[static_cast<size_t>(s)] + val.mul_scalar(w[static_cast<size_t>(s)]);
    }
    out.level_part[static_cast<size_t>(i)] = part;
    for (int s = 0; s < d; ++s) {
      CycloElement lifted = part[static_cast<size_t>(s)].embed_to(n);
      out.total.comp[static_cast<size_t>(s)] = out.total.comp[static_cast<size_t>(s)] + lifted;
    }
    if (i > 1)
      for (int t = 0; t < d; ++t)
        phipow[static_cast<size_t>(t)] = m.apply_phi(phipow[static_cast<size_t>(t)]);
  }
  // constant part (sigma^-n tensor 1)(1-phi)^(-1) phi^n g(0)
  Vec g0(static_cast<size_t>(d), Scalar::zero(c));
  for (int t = 0; t < d; ++t) g0[static_cast<size_t>(t)] = g[static_cast<size_t>(t)].value_at_zero();
  Vec w = m.apply_phi(g0, n);
  Vec y = m.solve_one_minus_pj_phi(0, w);
  for (auto& x : y) x = x.sigma(-n);
  out.constant_part = y;
  for (int s = 0; s < d; ++s)
    out.total.comp[static_cast<size_t>(s)] =
        out.total.comp[static_cast<size_t>(s)] + CycloElement::from_scalar(c, n, y[static_cast<size_t>(s)]);
  return out;
}

TangentVector tangent_eval_direct(const PhiModule& m, const SparseDatum& g, int n) {
  return tangent_eval_direct_breakdown(m, g, n).total;
}

int64_t solution_coeff_floor(const Context& c, const PhiConstants& k, int64_t j) {
  // worst-case valuation of the exact solution's degree-j coefficient: the
  // t-corrections contribute -(s + r log_p j), the phi-series contributes
  // -(2 s1 + r + (2r+2) log_p j) through the pi^(r+1)-factored terms
  int64_t lg = ceil_log_p(c, std::max<int64_t>(j, 2));
  return -(2 * k.s1 + k.s + k.r + (2 * k.r + 2) * lg);
}

std::vector<SeriesThetaResult> tangent_eval_via_series_multi(const PhiModule& m,
                                                             const SparseDatum& g,
                                                             int n_max, int64_t r,
                                                             int64_t target_digits) {
  const Context& c = *m.ctx();
  PhiConstants k = m.derive_constants(r);
  int64_t den = c.cyclo_degree(n_max);
  int degree = static_cast<int>(den);
  while (true) {
    int64_t bound = degree / den + solution_coeff_floor(c, k, degree);
    if (bound >= target_digits) break;
    degree += static_cast<int>(den);
    if (degree > 2'000'000)
      fail(Status::kCapExceeded, "degree required for the tail target is impractical");
  }
  // the truncated solution is accumulated to `stop` absolute digits inside a
  // lifted context sized to absorb the summation's cancellation losses
  int64_t stop = target_digits + 8;
  int64_t lift = solve_lift_digits(m, k, degree, stop);
  ContextParams prm;
  prm.p = c.p();
  prm.precision = static_cast<int>(stop + lift);
  prm.nu = c.nu();
  prm.u = c.u();
  prm.degree_cap = c.degree_cap();
  prm.tower_cap = c.tower_cap();
  ContextPtr lifted = make_context(prm);
  PhiModule ml = transport_module(*lifted, m);
  SparseDatum gl = transport_datum(*lifted, g);
  SolveResult sol = solve_one_minus_phi(ml, gl, r, degree, 0, stop, false);
  std::vector<SeriesThetaResult> out;
  for (int n = 1; n <= n_max; ++n) {
    SeriesThetaResult one;
    one.stats = sol.stats;
    int64_t tail = degree / c.cyclo_degree(n) + solution_coeff_floor(c, k, degree);
    one.certified_agreement = std::min<int64_t>(tail, stop - 4);
    one.value.level = n;
    one.value.comp.reserve(static_cast<size_t>(m.rank()));
    for (int s = 0; s < m.rank(); ++s) {
      PowerSeries f = c.nu() == 1 ? sol.G.comp[static_cast<size_t>(s)]
                                  : sol.G.comp[static_cast<size_t>(s)].sigma(-n);
      CycloElement v = f.eval_at_level(n, solution_coeff_floor(c, k, degree));
      one.value.comp.push_back(transport_cyclo(c, v));
    }
    out.push_back(std::move(one));
  }
  return out;
}

SeriesThetaResult tangent_eval_via_series(const PhiModule& m, const SparseDatum& g,
                                          int n, int64_t r, int64_t target_digits) {
  std::vector<SeriesThetaResult> all =
      tangent_eval_via_series_multi(m, g, n, r, target_digits);
  return std::move(all.back());
}

std::vector<CycloElement> module_eval_at_level(const PhiModule& m,
                                               const ModuleSeriesDense& x, int64_t mm,
                                               int n) {
  const Context& c = *m.ctx();
  if (mm < 0 || mm > c.p() - 2)
    fail(Status::kDomainError, "derivative order must satisfy 0 <= m <= p-2");
  int d = m.rank();
  if (static_cast<int>(x.comp.size()) != d)
    fail(Status::kLevelMismatch, "component count does not match the module rank");
  int64_t mfact = 1;
  for (int64_t t = 2; t <= mm; ++t) mfact *= t;
  std::vector<CycloElement> out;
  if (n >= 1) {
    for (int t = 0; t < d; ++t) {
      PowerSeries dx = x.comp[static_cast<size_t>(t)].partial(static_cast<int>(mm));
      out.push_back(dx.eval_at_level(n).mul_scalar(Scalar::from_int(c, mfact).inv()));
    }
    return out;
  }
  // n = 0: coefficient (partial^m x)(0)/m! with (1 - p^(m-1) phi^(-1)) applied
  Vec z(static_cast<size_t>(d), Scalar::zero(c));
  for (int t = 0; t < d; ++t) {
    PowerSeries dx = x.comp[static_cast<size_t>(t)].partial(static_cast<int>(mm));
    z[static_cast<size_t>(t)] = dx[0].divexact_int(mfact);
  }
  Vec w = m.apply_phi_inv(z);
  for (int t = 0; t < d; ++t) z[static_cast<size_t>(t)] -= w[static_cast<size_t>(t)].mul_p_pow(mm - 1);
  for (int t = 0; t < d; ++t) out.push_back(CycloElement::from_scalar(c, 0, z[static_cast<size_t>(t)]));
  return out;
}

TangentVector tangent_apply_phi(const PhiModule& m, const TangentVector& tv) {
  const Context& c = *m.ctx();
  int d = m.rank();
  TangentVector out;
  out.level = tv.level;
  out.twist_index = tv.twist_index;
  out.scaling_exponent = tv.scaling_exponent;
  out.comp.assign(static_cast<size_t>(d), CycloElement::zero(c, tv.level));
  for (int s = 0; s < d; ++s)
    for (int t = 0; t < d; ++t) {
      const Scalar& a = m.matrix()[static_cast<size_t>(s)][static_cast<size_t>(t)];
      if (a.is_exact_zero()) continue;
      out.comp[static_cast<size_t>(s)] =
          out.comp[static_cast<size_t>(s)] + tv.comp[static_cast<size_t>(t)].mul_scalar(a);
    }
  return out;
}

TangentVector tangent_trace_down(const TangentVector& tv) {
  TangentVector out;
  out.level = tv.level - 1;
  out.twist_index = tv.twist_index;
  out.scaling_exponent = tv.scaling_exponent;
  for (const auto& x : tv.comp) out.comp.push_back(x.trace_down());
  return out;
}

int64_t tangent_diff_valuation(const TangentVector& a, const TangentVector& b) {
  if (a.level != b.level || a.comp.size() != b.comp.size())
    fail(Status::kLevelMismatch, "tangent vectors live at different levels");
  int64_t v = Scalar::kInfVal;
  for (size_t i = 0; i < a.comp.size(); ++i)
    v = std::min(v, CycloElement::diff_valuation(a.comp[i], b.comp[i]));
  return v;
}

}  // namespace ptw
