#include "ptower/series.hpp"

#include <algorithm>
#include <sstream>

namespace ptw {

PowerSeries::PowerSeries(const Context& c, int cap)
    : ctx_(&c), c_(static_cast<size_t>(cap), Scalar::zero(c)) {}

PowerSeries PowerSeries::zero(const Context& c, int cap) { return PowerSeries(c, cap); }

PowerSeries PowerSeries::one(const Context& c, int cap) {
  PowerSeries f(c, cap);
  f.c_[0] = Scalar::one(c);
  return f;
}

PowerSeries PowerSeries::monomial(const Context& c, int cap, int deg, const Scalar& a) {
  PowerSeries f(c, cap);
  if (deg < cap) f.c_[static_cast<size_t>(deg)] = a;
  return f;
}

PowerSeries PowerSeries::from_coeffs(const Context& c, std::vector<Scalar> coeffs) {
  PowerSeries f;
  f.ctx_ = &c;
  f.c_ = std::move(coeffs);
  return f;
}

PowerSeries PowerSeries::operator+(const PowerSeries& b) const {
  int n = std::min(cap(), b.cap());
  PowerSeries r(*ctx_, n);
  for (int i = 0; i < n; ++i) r.c_[i] = c_[i] + b.c_[i];
  return r;
}

PowerSeries PowerSeries::operator-(const PowerSeries& b) const {
  int n = std::min(cap(), b.cap());
  PowerSeries r(*ctx_, n);
  for (int i = 0; i < n; ++i) r.c_[i] = c_[i] - b.c_[i];
  return r;
}

PowerSeries PowerSeries::operator-() const {
  PowerSeries r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

PowerSeries PowerSeries::operator*(const PowerSeries& b) const {
  int n = std::min(cap(), b.cap());
  PowerSeries r(*ctx_, n);
  for (int i = 0; i < n; ++i) {
    if (c_[i].is_exact_zero()) continue;
    for (int j = 0; i + j < n; ++j) {
      if (b.c_[j].is_exact_zero()) continue;
      r.c_[i + j] += c_[i] * b.c_[j];
    }
  }
  return r;
}

PowerSeries PowerSeries::mul_scalar(const Scalar& s) const {
  PowerSeries r = *this;
  for (auto& x : r.c_) x = x * s;
  return r;
}

PowerSeries PowerSeries::truncate(int cap2) const {
  PowerSeries r(*ctx_, cap2);
  for (int i = 0; i < std::min(cap2, cap()); ++i) r.c_[i] = c_[i];
  return r;
}

PowerSeries PowerSeries::phi() const {
  const Context& c = *ctx_;
  int n = cap();
  // B = (1+pi)^p - 1; Horner: r <- r*B + sigma(a_m)
  std::vector<Scalar> bin(static_cast<size_t>(c.p()) + 1, Scalar::zero(c));
  {
    Scalar b = Scalar::one(c);
    for (int64_t t = 0; t <= c.p(); ++t) {
      if (t > 0) b = b.mul_int(c.p() - t + 1).divexact_int(t);
      bin[static_cast<size_t>(t)] = b;
    }
  }
  PowerSeries r(c, n);
  for (int m = n - 1; m >= 0; --m) {
    // r *= B (B has zero constant term, degrees 1..p)
    PowerSeries next(c, n);
    for (int i = 0; i < n; ++i) {
      if (r.c_[i].is_exact_zero()) continue;
      for (int64_t t = 1; t <= c.p() && i + t < n; ++t)
        next.c_[i + t] += r.c_[i] * bin[static_cast<size_t>(t)];
    }
    r = std::move(next);
    r.c_[0] += c_[m].sigma(1);
  }
  return r;
}

PowerSeries PowerSeries::phi_pow(int k) const {
  PowerSeries r = *this;
  for (int i = 0; i < k; ++i) r = r.phi();
  return r;
}

std::vector<Scalar> PowerSeries::one_plus_pi_basis() const {
  const Context& c = *ctx_;
  size_t n = c_.size();
  std::vector<Scalar> out(n, Scalar::zero(c));
  std::vector<Nat> row(n, Nat());
  for (size_t t = 0; t < n; ++t) {
    if (t == 0) {
      row[0] = Nat::from_u64(1);
    } else {
      for (size_t s = std::min(t, n - 1); s >= 1; --s)
        row[s] = Nat::mod(Nat::add(row[s], row[s - 1]), c.modulus());
    }
    if (c_[t].is_exact_zero()) continue;
    for (size_t s = 0; s <= std::min(t, n - 1); ++s) {
      if (row[s].is_zero()) continue;
      Scalar term = c_[t] * Scalar::from_nat(c, row[s]);
      if ((t - s) & 1) term = -term;
      out[s] += term;
    }
  }
  return out;
}

PowerSeries PowerSeries::from_one_plus_pi_basis(const Context& c,
                                                const std::vector<Scalar>& b, int cap) {
  PowerSeries r(c, cap);
  size_t n = b.size();
  std::vector<Nat> row(static_cast<size_t>(cap), Nat());
  for (size_t j = 0; j < n; ++j) {
    if (j == 0) {
      row[0] = Nat::from_u64(1);
    } else {
      for (size_t s = std::min(j, static_cast<size_t>(cap) - 1); s >= 1; --s)
        row[s] = Nat::mod(Nat::add(row[s], row[s - 1]), c.modulus());
    }
    if (b[j].is_exact_zero()) continue;
    for (size_t m = 0; m <= std::min(j, static_cast<size_t>(cap) - 1); ++m) {
      if (row[m].is_zero()) continue;
      r.c_[m] += b[j] * Scalar::from_nat(c, row[m]);
    }
  }
  return r;
}

PowerSeries PowerSeries::psi() const {
  const Context& c = *ctx_;
  std::vector<Scalar> b = one_plus_pi_basis();
  int out_cap = (cap() + static_cast<int>(c.p()) - 1) / static_cast<int>(c.p());
  std::vector<Scalar> kept(static_cast<size_t>(out_cap), Scalar::zero(c));
  for (size_t j = 0; j < b.size(); j += static_cast<size_t>(c.p()))
    kept[j / static_cast<size_t>(c.p())] = b[j].sigma(-1);
  return from_one_plus_pi_basis(c, kept, out_cap);
}

PowerSeries PowerSeries::partial(int m) const {
  PowerSeries r = *this;
  const Context& c = *ctx_;
  for (int step = 0; step < m; ++step) {
    PowerSeries d(c, cap());
    for (int i = 1; i < cap(); ++i) {
      Scalar t = r.c_[i].mul_int(i);
      d.c_[i - 1] += t;
      d.c_[i] += t;
    }
    r = std::move(d);
  }
  return r;
}

PowerSeries PowerSeries::inv() const {
  const Context& c = *ctx_;
  if (c_[0].is_zero()) fail(Status::kNotInvertible, "series constant term is zero");
  Scalar a0inv = c_[0].inv();
  PowerSeries r(c, cap());
  r.c_[0] = a0inv;
  for (int n = 1; n < cap(); ++n) {
    Scalar acc = Scalar::zero(c);
    for (int k = 1; k <= n; ++k) {
      if (c_[k].is_exact_zero()) continue;
      acc += c_[k] * r.c_[n - k];
    }
    r.c_[n] = -(a0inv * acc);
  }
  return r;
}

PowerSeries PowerSeries::sigma(int k) const {
  PowerSeries r = *this;
  for (auto& x : r.c_) x = x.sigma(k);
  return r;
}

int64_t eval_tail_bound(const Context& c, int cap, int level, int64_t coeff_floor) {
  // v_p(zeta_{p^level} - 1) = 1 / ((p-1) p^(level-1))
  int64_t den = c.cyclo_degree(level);
  return cap / den + coeff_floor;
}

CycloElement PowerSeries::eval_at_level(int level, int64_t coeff_floor) const {
  const Context& c = *ctx_;
  if (level < 1) fail(Status::kLevelMismatch, "evaluation level must be >= 1");
  int64_t deg = c.cyclo_degree(level);
  const auto& mod = c.cyclo_poly(level);
  std::vector<Scalar> modl(static_cast<size_t>(deg));
  for (int64_t t = 0; t < deg; ++t) modl[t] = Scalar::from_nat(c, mod[t]);
  std::vector<Scalar> work(c_.begin(), c_.end());
  if (static_cast<int64_t>(work.size()) < deg) work.resize(static_cast<size_t>(deg), Scalar::zero(c));
  for (int64_t d = static_cast<int64_t>(work.size()) - 1; d >= deg; --d) {
    Scalar top = work[d];
    if (top.is_exact_zero()) continue;
    for (int64_t t = 0; t < deg; ++t) {
      if (modl[t].is_exact_zero()) continue;
      work[d - deg + t] -= top * modl[t];
    }
  }
  CycloElement e = CycloElement::zero(c, level);
  for (int64_t t = 0; t < deg; ++t) e.set_coeff(t, work[t]);
  e.set_tail_floor(eval_tail_bound(c, cap(), level, coeff_floor));
  return e;
}

int64_t PowerSeries::min_valuation() const {
  int64_t v = Scalar::kInfVal;
  for (const auto& x : c_) v = std::min(v, x.valuation());
  return v;
}

bool PowerSeries::is_zero_at(int64_t digits) const {
  for (const auto& x : c_)
    if (x.valuation() < digits) return false;
  return true;
}

int64_t PowerSeries::diff_valuation(const PowerSeries& a, const PowerSeries& b) {
  return (a - b).min_valuation();
}

int PowerSeries::pi_order(int64_t digits) const {
  for (int i = 0; i < cap(); ++i)
    if (c_[i].valuation() < digits) return i;
  return cap();
}

std::string PowerSeries::str(int max_terms) const {
  std::ostringstream os;
  int shown = 0;
  for (int i = 0; i < cap() && shown < max_terms; ++i) {
    if (c_[i].is_zero()) continue;
    if (shown) os << " + ";
    os << "(" << c_[i].str() << ")*pi^" << i;
    ++shown;
  }
  if (!shown) os << "0";
  os << " [cap " << cap() << "]";
  return os.str();
}

PowerSeries PowerSeries::cyclo_q(const Context& c, int level, int cap) {
  int64_t deg = c.cyclo_degree(level);
  if (deg >= cap)
    fail(Status::kDomainError, "degree cap too small for the requested level");
  const auto& mod = c.cyclo_poly(level);
  PowerSeries r(c, cap);
  for (int64_t t = 0; t <= deg; ++t) r.at(static_cast<int>(t)) = Scalar::from_nat(c, mod[t]);
  return r;
}

PowerSeries PowerSeries::mu_unit(const Context& c, int cap) {
  // (q - pi^(p-1))/p = sum_{j<p-1} binom(p, j+1)/p * pi^j, then invert
  PowerSeries u(c, cap);
  int64_t binom = c.p();  // binom(p, 1)
  for (int64_t j = 0; j + 1 < c.p() && j < cap; ++j) {
    if (j > 0) binom = binom * (c.p() - j) / (j + 1);  // binom(p, j+1), integral
    u.at(static_cast<int>(j)) = Scalar::from_int(c, binom).divexact_int(c.p());
  }
  return u.inv();
}

PowerSeries PowerSeries::log_one_plus_pi(const Context& c, int cap) {
  PowerSeries t(c, cap);
  for (int m = 1; m < cap; ++m) {
    Scalar v = Scalar::one(c).divexact_int(m);
    t.at(m) = (m % 2 == 0) ? -v : v;
  }
  return t;
}

PowerSeries PowerSeries::t_power_over_factorial(const Context& c, int j, int cap) {
  if (j >= c.p())
    fail(Status::kDomainError, "t^j/j! requires j < p to stay integral");
  PowerSeries r = one(c, cap);
  PowerSeries t = log_one_plus_pi(c, cap);
  for (int i = 0; i < j; ++i) r = r * t;
  for (int i = 2; i <= j; ++i) r = r.mul_scalar(Scalar::one(c).divexact_int(i));
  return r;
}

}  // namespace ptw
