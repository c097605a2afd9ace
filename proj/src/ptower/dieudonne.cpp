#include "ptower/dieudonne.hpp"

#include <algorithm>
#include <numeric>

namespace ptw {

PhiModule::PhiModule(const Context& c, Mat phi, std::vector<int64_t> weights,
                     int64_t d_prime)
    : ctx_(&c), d_(static_cast<int>(phi.size())), phi_(std::move(phi)),
      weights_(std::move(weights)) {
  if (d_ == 0 || phi_[0].size() != static_cast<size_t>(d_))
    fail(Status::kInvalidArgument, "phi matrix must be square and nonempty");
  if (weights_.size() != static_cast<size_t>(d_))
    fail(Status::kInvalidArgument, "need one Hodge-Tate weight per basis vector");
  std::sort(weights_.begin(), weights_.end());
  int64_t a = weight_min(), b = weight_max();
  if (b < 1) fail(Status::kDomainError, "largest Hodge-Tate weight must be >= 1");
  if (b - a > c.p() - 1)
    fail(Status::kDomainError, "weight spread violates the Fontaine-Laffaille window");
  // p^b phi must be integral
  for (const auto& row : phi_)
    for (const auto& x : row)
      if (!x.is_zero() && x.valuation() + b < 0)
        fail(Status::kDomainError, "p^b phi is not integral");
  d_prime_ = d_prime >= 0
                 ? d_prime
                 : static_cast<int64_t>(std::count_if(weights_.begin(), weights_.end(),
                                                      [](int64_t w) { return w >= 1; }));
  if (!eigen_hypothesis_holds())
    fail(Status::kDomainError, "an eigenvalue of phi is an integral power of p");
}

int64_t PhiModule::weight_min() const { return weights_.front(); }
int64_t PhiModule::weight_max() const { return weights_.back(); }

Vec PhiModule::apply_phi(const Vec& x, int k) const {
  Vec cur = x;
  for (int t = 0; t < k; ++t) {
    Vec s(cur.size());
    for (size_t i = 0; i < cur.size(); ++i) s[i] = cur[i].sigma(1);
    cur = mat_apply(phi_, s);
  }
  return cur;
}

Vec PhiModule::apply_phi_inv(const Vec& x, int k) const {
  Mat inv = mat_inverse(phi_);
  Vec cur = x;
  for (int t = 0; t < k; ++t) {
    Vec y = mat_apply(inv, cur);
    for (auto& e : y) e = e.sigma(-1);
    cur = std::move(y);
  }
  return cur;
}

Mat PhiModule::flattened_phi() const {
  const Context& c = *ctx_;
  int nu = c.nu();
  if (nu == 1) return phi_;
  int n = d_ * nu;
  Mat fl(static_cast<size_t>(n), Vec(static_cast<size_t>(n), Scalar::zero(c)));
  // column (j, cc): coordinates of phi(x^cc v_j) = phi_col_j * sigma(x^cc)
  for (int j = 0; j < d_; ++j) {
    for (int cc = 0; cc < nu; ++cc) {
      Unit e = c.unit_zero();
      e[static_cast<size_t>(cc)] = Nat::from_u64(1);
      Scalar xsig = Scalar::from_val_unit(c, 0, c.unit_sigma(e, 1));
      for (int i = 0; i < d_; ++i) {
        Scalar entry = phi_[static_cast<size_t>(i)][static_cast<size_t>(j)] * xsig;
        if (entry.is_zero()) {
          // approximate zeros still carry a valuation floor; spread it
          for (int rr = 0; rr < nu; ++rr)
            fl[static_cast<size_t>(i * nu + rr)][static_cast<size_t>(j * nu + cc)] = entry;
          continue;
        }
        const Unit& uu = entry.unit();
        for (int rr = 0; rr < nu; ++rr) {
          Unit coord = c.unit_zero();
          coord[0] = uu[static_cast<size_t>(rr)];
          fl[static_cast<size_t>(i * nu + rr)][static_cast<size_t>(j * nu + cc)] =
              coord[0].is_zero() ? Scalar::zero(c)
                                 : Scalar::from_val_unit(c, entry.valuation(), coord);
        }
      }
    }
  }
  return fl;
}

std::vector<Scalar> PhiModule::char_poly() const {
  const Context& c = *ctx_;
  Mat a = flattened_phi();
  int n = static_cast<int>(a.size());
  // Faddeev-LeVerrier; divisions are by integers <= n and stay exact
  std::vector<Scalar> coef(static_cast<size_t>(n) + 1, Scalar::zero(c));
  coef[static_cast<size_t>(n)] = Scalar::one(c);
  Mat m = mat_identity(c, n);
  Scalar ck = Scalar::one(c);
  for (int k = 1; k <= n; ++k) {
    m = mat_mul(a, m);
    Scalar tr = Scalar::zero(c);
    for (int i = 0; i < n; ++i) tr += m[static_cast<size_t>(i)][static_cast<size_t>(i)];
    ck = -(tr.divexact_int(k));
    coef[static_cast<size_t>(n - k)] = ck;
    for (int i = 0; i < n; ++i)
      m[static_cast<size_t>(i)][static_cast<size_t>(i)] += ck;
  }
  return coef;
}

std::vector<std::pair<int64_t, int64_t>> PhiModule::slopes() const {
  std::vector<Scalar> cp = char_poly();
  int n = static_cast<int>(cp.size()) - 1;
  // lower Newton polygon of (i, v(c_i)); roots' valuations are the negatives
  // of the hull slopes, with multiplicity the horizontal run
  struct Pt { int64_t x; int64_t y; bool inf; };
  std::vector<Pt> pts;
  for (int i = 0; i <= n; ++i) {
    const Scalar& ci = cp[static_cast<size_t>(i)];
    if (ci.is_exact_zero()) {
      pts.push_back({i, 0, true});
    } else if (ci.is_zero()) {
      // approximate zero: absent point with a valuation floor, checked below
      pts.push_back({i, ci.valuation(), true});
    } else {
      pts.push_back({i, ci.valuation(), false});
    }
  }
  if (pts[0].inf && cp[0].is_exact_zero())
    fail(Status::kDomainError, "phi is not invertible (zero eigenvalue)");
  if (pts[0].inf)
    fail(Status::kPrecisionExhausted,
         "constant characteristic coefficient indistinguishable from zero");
  std::vector<Pt> hull;
  for (const auto& pt : pts) {
    if (pt.inf) continue;
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull[hull.size() - 1];
      // drop b if it lies on or above segment a->pt
      if ((b.y - a.y) * (pt.x - a.x) >= (pt.y - a.y) * (b.x - a.x))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  // absent points must be certifiably above the hull; otherwise the polygon
  // cannot be trusted at this precision
  for (const auto& pt : pts) {
    if (!pt.inf || cp[static_cast<size_t>(pt.x)].is_exact_zero()) continue;
    for (size_t s = 0; s + 1 < hull.size(); ++s) {
      if (pt.x <= hull[s].x || pt.x >= hull[s + 1].x) continue;
      // hull height at pt.x times the run, compared cross-multiplied
      int64_t run = hull[s + 1].x - hull[s].x;
      int64_t lhs = (pt.y - hull[s].y) * run;
      int64_t rhs = (hull[s + 1].y - hull[s].y) * (pt.x - hull[s].x);
      if (lhs < rhs)
        fail(Status::kPrecisionExhausted,
             "characteristic coefficient indistinguishable from zero near the polygon");
    }
  }
  std::vector<std::pair<int64_t, int64_t>> out;
  for (size_t s = 0; s + 1 < hull.size(); ++s) {
    int64_t run = hull[s + 1].x - hull[s].x;
    int64_t rise = hull[s + 1].y - hull[s].y;
    int64_t g = std::gcd(std::abs(rise), run);
    if (g == 0) g = 1;
    // root valuation = -slope = (y_s - y_{s+1})/run, each with multiplicity
    int64_t num = -rise / g, den = run / g;
    for (int64_t t = 0; t < run; ++t) out.emplace_back(num, den);
  }
  std::sort(out.begin(), out.end(), [](auto& l, auto& r) {
    return l.first * r.second < r.first * l.second;
  });
  return out;
}

bool PhiModule::eigen_hypothesis_holds() const {
  const Context& c = *ctx_;
  std::vector<Scalar> cp = char_poly();
  auto sl = slopes();
  int64_t lo = sl.front().first / sl.front().second - 1;
  int64_t hi = sl.back().first / sl.back().second + 1;
  for (int64_t j = lo; j <= hi; ++j) {
    // evaluate char poly at p^j; a (near-)zero value means p^j is an eigenvalue
    Scalar acc = Scalar::zero(c);
    Scalar x = Scalar::p_power(c, j);
    for (size_t i = cp.size(); i-- > 0;) acc = acc * x + cp[i];
    if (acc.is_zero()) return false;
  }
  return true;
}

Vec PhiModule::solve_one_minus_pj_phi(int64_t j, const Vec& v) const {
  const Context& c = *ctx_;
  int nu = c.nu();
  Mat fl = flattened_phi();
  int n = static_cast<int>(fl.size());
  Mat sys = mat_identity(c, n);
  for (int r = 0; r < n; ++r)
    for (int co = 0; co < n; ++co) sys[r][co] -= fl[r][co].mul_p_pow(j);
  // flatten v
  Vec fv(static_cast<size_t>(n), Scalar::zero(c));
  for (int i = 0; i < d_; ++i) {
    const Scalar& e = v[static_cast<size_t>(i)];
    if (e.is_zero()) continue;
    for (int rr = 0; rr < nu; ++rr) {
      if (nu == 1) {
        fv[static_cast<size_t>(i)] = e;
        break;
      }
      Unit coord = c.unit_zero();
      coord[0] = e.unit()[static_cast<size_t>(rr)];
      fv[static_cast<size_t>(i * nu + rr)] =
          coord[0].is_zero() ? Scalar::zero(c)
                             : Scalar::from_val_unit(c, e.valuation(), coord);
    }
  }
  Vec sol;
  try {
    sol = lin_solve(std::move(sys), std::move(fv)).x;
  } catch (const Error& err) {
    if (err.code() == Status::kNotInvertible)
      fail(Status::kNotInvertible, "1 - p^j phi is singular at working precision");
    throw;
  }
  if (nu == 1) return sol;
  Vec out(static_cast<size_t>(d_), Scalar::zero(c));
  for (int i = 0; i < d_; ++i) {
    // reassemble O_F coordinates; align valuations first
    int64_t vmin = Scalar::kInfVal;
    for (int rr = 0; rr < nu; ++rr)
      vmin = std::min(vmin, sol[static_cast<size_t>(i * nu + rr)].valuation());
    if (vmin >= Scalar::kInfVal / 2) continue;
    Unit uu = c.unit_zero();
    bool any = false;
    for (int rr = 0; rr < nu; ++rr) {
      const Scalar& s = sol[static_cast<size_t>(i * nu + rr)];
      if (s.is_zero()) continue;
      any = true;
      int64_t shift = s.valuation() - vmin;
      Unit part = c.unit_mul_ppow(s.unit(), static_cast<int>(std::min<int64_t>(shift, c.precision())));
      uu[static_cast<size_t>(rr)] = part[0];
    }
    if (any) out[static_cast<size_t>(i)] = Scalar::from_val_unit(c, vmin, uu);
  }
  return out;
}

Scalar PhiModule::det_one_minus_phi() const {
  const Context& c = *ctx_;
  Mat fl = flattened_phi();
  int n = static_cast<int>(fl.size());
  Mat sys = mat_identity(c, n);
  for (int r = 0; r < n; ++r)
    for (int co = 0; co < n; ++co) sys[r][co] -= fl[r][co];
  return mat_det(std::move(sys));
}

PhiConstants PhiModule::derive_constants(int64_t r, int cap) const {
  const Context& c = *ctx_;
  auto sl = slopes();
  for (auto& [num, den] : sl)
    if (num < -r * den)
      fail(Status::kDomainError, "slopes of phi go below -r");
  if (cap <= 0) cap = 4 * d_ * c.nu() + 8;

  PhiConstants k;
  k.r = r;
  k.iteration_cap = cap;

  // s1 = max deficit of (p^r phi)^k over k <= cap
  Mat fl = flattened_phi();
  int n = static_cast<int>(fl.size());
  Mat prphi = fl;
  for (auto& row : prphi)
    for (auto& x : row) x = x.mul_p_pow(r);
  Mat power = mat_identity(c, n);
  int64_t s1 = 0;
  int last_new_max = 0;
  // semilinear composition: (p^r phi)^(k+1) = p^r A sigma((p^r A ...)), i.e.
  // for the flattened model the sigma twist is already inside the matrix
  for (int kk = 1; kk <= cap; ++kk) {
    power = mat_mul(prphi, power);  // the flattened matrix already carries sigma
    int64_t deficit = std::max<int64_t>(0, -mat_min_valuation(power));
    if (deficit > s1) {
      s1 = deficit;
      last_new_max = kk;
    }
  }
  if (last_new_max > cap - std::max(2, cap / 3))
    fail(Status::kCapExceeded, "iterate deficits still growing at the scan cap");
  k.s1 = s1;
  k.stabilized = true;

  // resolvent bounds: (1 - p^j phi)^-1 for 0 <= j <= r
  int64_t s_lat = 0;
  for (int64_t j = 0; j <= r; ++j) {
    int64_t worst = 0;
    for (int col = 0; col < d_; ++col) {
      Vec e(static_cast<size_t>(d_), Scalar::zero(c));
      e[static_cast<size_t>(col)] = Scalar::one(c);
      Vec x = solve_one_minus_pj_phi(j, e);
      worst = std::max(worst, -std::min<int64_t>(0, vec_min_valuation(x)));
    }
    if (j == 0) k.s2 = worst;
    s_lat = std::max(s_lat, worst);
  }
  k.s = std::max(s1, s_lat);
  return k;
}

PhiModule PhiModule::twist(int64_t m) const {
  Mat tm = phi_;
  for (auto& row : tm)
    for (auto& x : row) x = x.mul_p_pow(-m);
  std::vector<int64_t> w = weights_;
  for (auto& x : w) x += m;
  return PhiModule(*ctx_, std::move(tm), std::move(w));
}

std::vector<Scalar> PhiModule::k_polynomial(int64_t k) const {
  const Context& c = *ctx_;
  int nu = c.nu();
  // matrix of phi^nu is O_F-linear: A sigma(A) ... sigma^(nu-1)(A)
  Mat m = phi_;
  for (int t = 1; t < nu; ++t) {
    Mat st = phi_;
    for (auto& row : st)
      for (auto& x : row) x = x.sigma(t);
    m = mat_mul(m, st);
  }
  // twist to D(-k): phi scales by p^k, phi^nu by p^(k nu)
  for (auto& row : m)
    for (auto& x : row) x = x.mul_p_pow(k * nu);
  // characteristic polynomial in Y = X^nu via Faddeev-LeVerrier on m
  int n = d_;
  std::vector<Scalar> cy(static_cast<size_t>(n) + 1, Scalar::zero(c));
  cy[static_cast<size_t>(n)] = Scalar::one(c);
  Mat acc = mat_identity(c, n);
  for (int t = 1; t <= n; ++t) {
    acc = mat_mul(m, acc);
    Scalar tr = Scalar::zero(c);
    for (int i = 0; i < n; ++i) tr += acc[static_cast<size_t>(i)][static_cast<size_t>(i)];
    Scalar ct = -(tr.divexact_int(t));
    cy[static_cast<size_t>(n - t)] = ct;
    for (int i = 0; i < n; ++i) acc[static_cast<size_t>(i)][static_cast<size_t>(i)] += ct;
  }
  std::vector<Scalar> q(static_cast<size_t>(n * nu) + 1, Scalar::zero(c));
  for (int t = 0; t <= n; ++t) q[static_cast<size_t>(t * nu)] = cy[static_cast<size_t>(t)];
  return q;
}

std::vector<Scalar> PhiModule::k_polynomial_rescaled(int64_t r) const {
  const Context& c = *ctx_;
  int64_t b = weight_max();
  std::vector<Scalar> q = k_polynomial(b);
  int64_t nd = static_cast<int64_t>(q.size()) - 1;
  for (int64_t i = 0; i <= nd; ++i) {
    Scalar& a = q[static_cast<size_t>(i)];
    if (a.is_exact_zero()) continue;
    a = a.mul_p_pow(-(b - r) * (nd - i));
    if (a.valuation() < 0)
      fail(Status::kDomainError, "rescaled annihilator is not integral: r too small");
  }
  return q;
}

bool PhiModule::is_k_polynomial(const std::vector<Scalar>& q, int64_t k,
                                int64_t tol) const {
  const Context& c = *ctx_;
  for (int col = 0; col < d_; ++col) {
    Vec e(static_cast<size_t>(d_), Scalar::zero(c));
    e[static_cast<size_t>(col)] = Scalar::one(c);
    Vec acc(static_cast<size_t>(d_), Scalar::zero(c));
    Vec cur = e;
    for (size_t i = 0; i < q.size(); ++i) {
      if (i > 0) {
        cur = apply_phi(cur);
        for (auto& x : cur) x = x.mul_p_pow(k);
      }
      if (q[i].is_exact_zero()) continue;
      for (int t = 0; t < d_; ++t) acc[static_cast<size_t>(t)] += q[i] * cur[static_cast<size_t>(t)];
    }
    for (const auto& x : acc)
      if (x.valuation() < tol) return false;
  }
  return true;
}

PhiModule modular_form_module(const Context& c, int64_t k, const Scalar& a_p,
                              int64_t eps) {
  if (k % 2 != 0 || k < 2 || k > c.p() - 1)
    fail(Status::kDomainError, "weight must be even with 2 <= k <= p-1");
  if (!a_p.is_zero() && a_p.valuation() < k / 2)
    fail(Status::kDomainError, "requires v_p(a_p) >= k/2");
  if (eps != 1 && eps != -1) fail(Status::kDomainError, "eps must be +-1");
  Mat m(2, Vec(2, Scalar::zero(c)));
  m[0][1] = Scalar::from_int(c, -eps).mul_p_pow(k / 2 - 1);
  m[1][0] = Scalar::p_power(c, -k / 2);
  m[1][1] = a_p.mul_p_pow(-k / 2);
  PhiModule d(c, m, {1 - k / 2, k / 2}, 1);
  // phi^2 - (a_p/p^(k/2)) phi + eps/p must vanish
  Mat sigA = d.matrix();
  for (auto& row : sigA)
    for (auto& x : row) x = x.sigma(1);
  Mat sq = mat_mul(d.matrix(), sigA);
  Mat lin = mat_scalar(d.matrix(), a_p.mul_p_pow(-k / 2));
  Mat cst = mat_scalar(mat_identity(c, 2), Scalar::from_int(c, eps).mul_p_pow(-1));
  Mat res = mat_add(mat_sub(sq, lin), cst);
  if (mat_min_valuation(res) < c.precision() - 4)
    fail(Status::kInternal, "quadratic relation for the eigenform module failed");
  return d;
}

}  // namespace ptw
