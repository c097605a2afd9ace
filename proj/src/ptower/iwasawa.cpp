#include "ptower/iwasawa.hpp"

#include <algorithm>
#include <sstream>

#include "ptower/linalg.hpp"

namespace ptw {

Scalar u_power(const Context& c, int64_t e) {
  Scalar u = Scalar::from_nat(c, Nat::from_u64(c.u()));
  if (e >= 0) return u.pow_u64(static_cast<uint64_t>(e));
  return u.inv().pow_u64(static_cast<uint64_t>(-e));
}

void IwasawaPoly::trim() {
  while (c_.size() > 1 && c_.back().is_exact_zero()) c_.pop_back();
}

IwasawaPoly IwasawaPoly::one(const Context& c) {
  IwasawaPoly f(c);
  f.c_[0] = Scalar::one(c);
  return f;
}

IwasawaPoly IwasawaPoly::gamma_minus_one(const Context& c, int power) {
  IwasawaPoly f(c);
  f.c_.assign(static_cast<size_t>(power) + 1, Scalar::zero(c));
  f.c_[static_cast<size_t>(power)] = Scalar::one(c);
  return f;
}

IwasawaPoly IwasawaPoly::from_coeffs(const Context& c, std::vector<Scalar> coeffs) {
  IwasawaPoly f(c);
  f.c_ = std::move(coeffs);
  if (f.c_.empty()) f.c_.push_back(Scalar::zero(c));
  f.trim();
  return f;
}

IwasawaPoly IwasawaPoly::omega(const Context& c, int n, int64_t m) {
  // (u^-m gamma)^(p^n) - 1 = u^(-m p^n) (1 + (gamma-1))^(p^n) - 1
  int64_t pn = 1;
  for (int i = 0; i < n; ++i) pn *= c.p();
  Scalar upow = u_power(c, -m * pn);
  std::vector<Scalar> coeffs(static_cast<size_t>(pn) + 1, Scalar::zero(c));
  Scalar b = Scalar::one(c);
  for (int64_t j = 0; j <= pn; ++j) {
    if (j > 0) b = b.mul_int(pn - j + 1).divexact_int(j);
    coeffs[static_cast<size_t>(j)] = b * upow;
  }
  coeffs[0] = coeffs[0] - Scalar::one(c);
  return from_coeffs(c, std::move(coeffs));
}

IwasawaPoly IwasawaPoly::cyclo_factor(const Context& c, int n, int64_t m) {
  if (n < 1) fail(Status::kDomainError, "cyclo_factor needs n >= 1");
  int64_t step = 1;
  for (int i = 1; i < n; ++i) step *= c.p();
  std::vector<Scalar> coeffs(static_cast<size_t>(step * (c.p() - 1)) + 1, Scalar::zero(c));
  for (int64_t t = 0; t < c.p(); ++t) {
    int64_t e = t * step;
    Scalar upow = u_power(c, -m * e);
    Scalar b = Scalar::one(c);
    for (int64_t j = 0; j <= e; ++j) {
      if (j > 0) b = b.mul_int(e - j + 1).divexact_int(j);
      coeffs[static_cast<size_t>(j)] += b * upow;
    }
  }
  return from_coeffs(c, std::move(coeffs));
}

IwasawaPoly IwasawaPoly::operator+(const IwasawaPoly& b) const {
  IwasawaPoly r(*ctx_);
  r.c_.assign(std::max(c_.size(), b.c_.size()), Scalar::zero(*ctx_));
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
  r.trim();
  return r;
}

IwasawaPoly IwasawaPoly::operator-() const {
  IwasawaPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

IwasawaPoly IwasawaPoly::operator-(const IwasawaPoly& b) const { return *this + (-b); }

IwasawaPoly IwasawaPoly::operator*(const IwasawaPoly& b) const {
  IwasawaPoly r(*ctx_);
  r.c_.assign(c_.size() + b.c_.size() - 1, Scalar::zero(*ctx_));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_exact_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_exact_zero()) continue;
      r.c_[i + j] += c_[i] * b.c_[j];
    }
  }
  r.trim();
  if (modulus_level_ >= 0) return r.reduce_mod_omega(modulus_level_, modulus_twist_);
  return r;
}

IwasawaPoly IwasawaPoly::mul_scalar(const Scalar& s) const {
  IwasawaPoly r = *this;
  for (auto& x : r.c_) x = x * s;
  r.trim();
  return r;
}

IwasawaPoly IwasawaPoly::reduce_mod_omega(int level, int64_t twist) const {
  const Context& c = *ctx_;
  IwasawaPoly mod = omega(c, level, twist);
  int64_t dm = mod.degree();
  std::vector<Scalar> work = c_;
  Scalar lead_inv = mod.c_[static_cast<size_t>(dm)].inv();
  for (int64_t d = static_cast<int64_t>(work.size()) - 1; d >= dm; --d) {
    Scalar top = work[static_cast<size_t>(d)];
    if (top.is_exact_zero()) continue;
    Scalar f = top * lead_inv;
    for (int64_t t = 0; t <= dm; ++t)
      work[static_cast<size_t>(d - dm + t)] -= f * mod.c_[static_cast<size_t>(t)];
  }
  work.resize(static_cast<size_t>(dm), Scalar::zero(c));
  if (work.empty()) work.push_back(Scalar::zero(c));
  IwasawaPoly r = from_coeffs(c, std::move(work));
  r.modulus_level_ = level;
  r.modulus_twist_ = twist;
  return r;
}

CycloElement IwasawaPoly::char_value(int64_t twist, int level) const {
  const Context& c = *ctx_;
  // gamma - 1 = u^twist * zeta - 1
  CycloElement arg = level == 0
                         ? CycloElement::from_scalar(c, 0, u_power(c, twist) - Scalar::one(c))
                         : CycloElement::zeta_power(c, level, 1).mul_scalar(u_power(c, twist)) -
                               CycloElement::one(c, level);
  CycloElement acc = CycloElement::zero(c, level);
  for (size_t t = c_.size(); t-- > 0;) {
    acc = acc * arg;
    acc = acc + CycloElement::from_scalar(c, level, c_[t]);
  }
  return acc;
}

Scalar IwasawaPoly::scalar_value(const Scalar& gamma) const {
  const Context& c = *ctx_;
  Scalar arg = gamma - Scalar::one(c);
  Scalar acc = Scalar::zero(c);
  for (size_t t = c_.size(); t-- > 0;) acc = acc * arg + c_[t];
  return acc;
}

PsiZeroSeries IwasawaPoly::mellin() const {
  const Context& c = *ctx_;
  PsiZeroSeries acc(c);
  // cur = (gamma-1)^j (1+pi), maintained sparsely
  PsiZeroSeries cur = PsiZeroSeries::one_plus_pi(c);
  for (size_t j = 0; j < c_.size(); ++j) {
    if (j > 0) cur = cur.gamma_pow(1) - cur;
    if (!c_[j].is_exact_zero()) acc = acc + cur.mul_scalar(c_[j]);
  }
  return acc;
}

int64_t IwasawaPoly::min_valuation() const {
  int64_t v = Scalar::kInfVal;
  for (const auto& x : c_) v = std::min(v, x.valuation());
  return v;
}

int64_t IwasawaPoly::diff_valuation(const IwasawaPoly& a, const IwasawaPoly& b) {
  return (a - b).min_valuation();
}

std::string IwasawaPoly::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << " + ";
    os << "(" << c_[i].str() << ")*(g-1)^" << i;
  }
  return os.str();
}

namespace {

Vec mellin_coords(const PsiZeroSeries& s, int level) {
  Vec v;
  v.push_back(s.value_at_zero());
  for (int l = 1; l <= level + 1; ++l) {
    std::vector<Scalar> zb = s.eval_at_level(l).zeta_basis();
    for (auto& x : zb) v.push_back(x);
  }
  return v;
}

}  // namespace

IwasawaPoly mellin_inverse_from_coords(const Context& c, const std::vector<Scalar>& coords, int level) {
  // f mod omega_{level,0} is pinned down by the vanishing chain at tower
  // levels 1..level+1 together with the value at pi = 0 (the omega_{level,0}
  // ideal maps into the phi^(level+1)(pi) ideal on the series side, one level
  // up from the unknown count).  The system is overdetermined and is solved
  // with free columns rejected by a consistency check.
  int64_t pn = 1;
  for (int i = 0; i < level; ++i) pn *= c.p();
  size_t ncol = static_cast<size_t>(pn);
  std::vector<Vec> cols;
  PsiZeroSeries cur = PsiZeroSeries::one_plus_pi(c);
  for (size_t j = 0; j < ncol; ++j) {
    if (j > 0) cur = cur.gamma_pow(1) - cur;
    cols.push_back(mellin_coords(cur, level));
  }
  size_t nrow = cols[0].size();
  if (coords.size() != nrow)
    fail(Status::kInternal, "mellin coordinate vector has the wrong length");
  Mat a(nrow, Vec(ncol, Scalar::zero(c)));
  for (size_t j = 0; j < ncol; ++j)
    for (size_t row = 0; row < nrow; ++row) a[row][j] = cols[j][row];
  Vec rhs = coords;
  Vec sol = lin_solve_any(std::move(a), std::move(rhs), c.precision() - 4);
  IwasawaPoly f = IwasawaPoly::from_coeffs(c, std::move(sol));
  return f.reduce_mod_omega(level, 0);
}

IwasawaPoly mellin_inverse_at_level(const PsiZeroSeries& h, int level) {
  return mellin_inverse_from_coords(*h.ctx(), mellin_coords(h, level), level);
}

Scalar ell_char_value(const Context& c, int64_t i, int64_t m, int level) {
  // x = u^(m-i) zeta_{p^level}; log(x) is computed by raising to p^level
  // (landing in the base ring) and taking the scalar log there.
  int64_t e = m - i;
  int64_t pl = 1;
  for (int l = 0; l < level; ++l) pl *= c.p();
  if (level > 0) {
    // verify in-ring that x^(p^level) is the expected constant
    CycloElement x = CycloElement::zeta_power(c, level, 1).mul_scalar(u_power(c, e));
    CycloElement pw = CycloElement::one(c, level);
    CycloElement base = x;
    uint64_t exp = static_cast<uint64_t>(pl);
    while (exp) {
      if (exp & 1) pw = pw * base;
      base = base * base;
      exp >>= 1;
    }
    CycloElement expect = CycloElement::from_scalar(c, level, u_power(c, e * pl));
    if (CycloElement::diff_valuation(pw, expect) < c.precision() - 8)
      fail(Status::kInternal, "tower power of character point is not constant");
  }
  Scalar num = log_one_unit(u_power(c, e * pl));
  Scalar den = log_one_unit(u_power(c, pl));
  if (num.is_exact_zero()) return Scalar::zero(c);
  return num * den.inv();
}

bool omega_divides(const IwasawaPoly& f, int n, int64_t m, int64_t tol) {
  const Context& c = *f.ctx();
  PsiZeroSeries h = f.mellin().partial_pow(m);
  for (int j = 1; j <= n; ++j)
    if (!h.eval_at_level(j).is_zero_at(tol)) return false;
  return true;
}

CycloQuotientReport cyclotomic_quotient_constant_check(const Context& c, int k,
                                                       int64_t i, int n, int64_t j) {
  if (k < n + 1) fail(Status::kDomainError, "requires k >= n+1");
  IwasawaPoly phi_ki = IwasawaPoly::cyclo_factor(c, k, i);
  IwasawaPoly red = phi_ki.reduce_mod_omega(n, j);
  CycloQuotientReport rep;
  rep.constant = red.coeff(0).mul_p_pow(-1);
  rep.is_constant = true;
  for (int64_t t = 1; t <= red.degree(); ++t)
    if (red.coeff(t).valuation() < c.precision() - 6) rep.is_constant = false;
  Scalar dm1 = rep.constant - Scalar::one(c);
  rep.in_one_plus_pn = dm1.valuation() >= n && rep.constant.valuation() == 0;
  return rep;
}

IwasawaPoly ell_times(const Context& c, int64_t m, const IwasawaPoly& f, int window) {
  // log(gamma) = sum (-1)^(j+1) (gamma-1)^j / j, truncated once the omitted
  // terms act below p^N on a degree-`window` densification; the j-th term
  // gains j digits against window/(p-1) from binomial denominators.
  int cut = c.precision() + window / static_cast<int>(c.p() - 1) + 24;
  std::vector<Scalar> coeffs(static_cast<size_t>(cut) + 1, Scalar::zero(c));
  for (int jj = 1; jj <= cut; ++jj) {
    Scalar t = Scalar::one(c).divexact_int(jj);
    coeffs[static_cast<size_t>(jj)] = (jj % 2 == 0) ? -t : t;
  }
  IwasawaPoly loggamma = IwasawaPoly::from_coeffs(c, std::move(coeffs));
  Scalar inv_logu = log_one_unit(u_power(c, 1)).inv();
  IwasawaPoly ell = loggamma.mul_scalar(inv_logu) - IwasawaPoly::one(c).mul_scalar(Scalar::from_int(c, m));
  return ell * f;
}

PowerSeries nabla(const PowerSeries& f, int64_t m) {
  const Context& c = *f.ctx();
  PowerSeries t = PowerSeries::log_one_plus_pi(c, f.cap());
  return t * f.partial(1) - f.mul_scalar(Scalar::from_int(c, m));
}

}  // namespace ptw
