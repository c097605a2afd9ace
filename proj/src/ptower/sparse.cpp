#include "ptower/sparse.hpp"

#include "ptower/linalg.hpp"

namespace ptw {

Scalar scalar_from_bigint(const Context& c, const BigInt& x) {
  if (x == 0) return Scalar::zero(c);
  BigInt a = x < 0 ? -x : x;
  int64_t v = 0;
  while (a % c.p() == 0 && v < c.precision()) {
    a /= c.p();
    ++v;
  }
  if (v >= c.precision()) return Scalar::approx_zero(c, v);
  BigInt mod = boost::multiprecision::pow(BigInt(c.p()), static_cast<unsigned>(c.precision()));
  BigInt r = a % mod;
  Nat u = Nat::from_decimal(r.str());
  Scalar s = Scalar::from_val_unit(c, v, [&] {
    Unit un = c.unit_zero();
    un[0] = u;
    return un;
  }());
  return x < 0 ? -s : s;
}

PsiZeroSeries PsiZeroSeries::one_plus_pi(const Context& c) {
  PsiZeroSeries f(c);
  f.add_term(1, Scalar::one(c));
  return f;
}

void PsiZeroSeries::add_term(const BigInt& exponent, const Scalar& coeff) {
  if (exponent <= 0 || exponent % ctx_->p() == 0)
    fail(Status::kNotPsiZero, "support exponents must be positive and prime to p");
  if (coeff.is_exact_zero()) return;
  auto it = supp_.find(exponent);
  if (it == supp_.end()) {
    supp_.emplace(exponent, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_exact_zero()) supp_.erase(it);
  }
}

PsiZeroSeries PsiZeroSeries::operator+(const PsiZeroSeries& b) const {
  PsiZeroSeries r = *this;
  for (const auto& [e, co] : b.supp_) r.add_term(e, co);
  return r;
}

PsiZeroSeries PsiZeroSeries::operator-() const {
  PsiZeroSeries r = *this;
  for (auto& [e, co] : r.supp_) co = -co;
  return r;
}

PsiZeroSeries PsiZeroSeries::operator-(const PsiZeroSeries& b) const {
  return *this + (-b);
}

PsiZeroSeries PsiZeroSeries::mul_scalar(const Scalar& s) const {
  PsiZeroSeries r(*ctx_);
  if (s.is_exact_zero()) return r;
  for (const auto& [e, co] : supp_) r.supp_.emplace(e, co * s);
  return r;
}

PsiZeroSeries PsiZeroSeries::gamma_pow(int k) const {
  if (k == 0) return *this;
  if (k < 0) fail(Status::kDomainError, "gamma_pow supports k >= 0");
  BigInt uk = boost::multiprecision::pow(BigInt(ctx_->u()), static_cast<unsigned>(k));
  PsiZeroSeries r(*ctx_);
  for (const auto& [e, co] : supp_) r.add_term(e * uk, co);
  return r;
}

PsiZeroSeries PsiZeroSeries::partial_pow(int64_t m) const {
  PsiZeroSeries r(*ctx_);
  for (const auto& [e, co] : supp_) {
    Scalar i = scalar_from_bigint(*ctx_, e);
    Scalar f;
    if (m >= 0) {
      f = i.pow_u64(static_cast<uint64_t>(m));
    } else {
      f = i.inv().pow_u64(static_cast<uint64_t>(-m));
    }
    r.supp_.emplace(e, co * f);
  }
  return r;
}

Scalar PsiZeroSeries::value_at_zero() const {
  Scalar acc = Scalar::zero(*ctx_);
  for (const auto& [e, co] : supp_) acc += co;
  return acc;
}

PowerSeries PsiZeroSeries::to_series(int cap) const {
  const Context& c = *ctx_;
  PowerSeries out(c, cap);
  for (const auto& [e, co] : supp_) {
    // binomial row of (1+pi)^e via the exact falling-factorial recurrence
    Scalar b = Scalar::one(c);
    out.at(0) += co;
    BigInt num = e;
    for (int t = 1; t < cap; ++t) {
      if (num == 0) break;  // integer exponent exhausted: binom(e, t) = 0 onward
      b = b * scalar_from_bigint(c, num);
      b = b.divexact_int(t);
      out.at(t) += co * b;
      num -= 1;
    }
  }
  return out;
}

CycloElement PsiZeroSeries::eval_at_level(int level) const {
  const Context& c = *ctx_;
  BigInt pn = boost::multiprecision::pow(BigInt(c.p()), static_cast<unsigned>(level));
  int64_t deg = c.cyclo_degree(level);
  // accumulate on the zeta-power basis; memoize reduced powers above deg
  std::vector<Scalar> zb(static_cast<size_t>(deg), Scalar::zero(c));
  CycloElement high = CycloElement::zero(c, level);
  std::map<int64_t, CycloElement> memo;
  bool any_high = false;
  for (const auto& [e, co] : supp_) {
    int64_t j = static_cast<int64_t>(e % pn);
    if (j < deg) {
      zb[static_cast<size_t>(j)] += co;
    } else {
      auto it = memo.find(j);
      if (it == memo.end()) it = memo.emplace(j, CycloElement::zeta_power(c, level, j)).first;
      high = high + it->second.mul_scalar(co);
      any_high = true;
    }
  }
  CycloElement acc = CycloElement::from_zeta_basis(c, level, zb);
  if (any_high) acc = acc + high;
  return acc;
}

int64_t PsiZeroSeries::min_valuation() const {
  int64_t v = Scalar::kInfVal;
  for (const auto& [e, co] : supp_) v = std::min(v, co.valuation());
  return v;
}

int64_t PsiZeroSeries::diff_valuation(const PsiZeroSeries& a, const PsiZeroSeries& b) {
  return (a - b).min_valuation();
}

PsiZeroSeries PsiZeroSeries::tracezero_preimage(const CycloElement& x) {
  const Context& c = *x.ctx();
  int level = x.level();
  if (level < 1) fail(Status::kLevelMismatch, "preimage needs level >= 1");
  int64_t pn = 1;
  for (int i = 0; i < level; ++i) pn *= c.p();
  // candidate exponents: 1 <= i < p^level, p coprime; solve for coordinates in
  // the zeta-power basis of the residue ring
  std::vector<int64_t> exps;
  for (int64_t i = 1; i < pn; ++i)
    if (i % c.p() != 0) exps.push_back(i);
  int64_t deg = x.degree();
  Mat a(static_cast<size_t>(deg), Vec(exps.size(), Scalar::zero(c)));
  for (size_t col = 0; col < exps.size(); ++col) {
    std::vector<Scalar> zb = CycloElement::zeta_power(c, level, exps[col]).zeta_basis();
    for (int64_t row = 0; row < deg; ++row) a[static_cast<size_t>(row)][col] = zb[static_cast<size_t>(row)];
  }
  Vec rhs = x.zeta_basis();
  // the zeta^i with p coprime to i only span (they are p^(n-1)(p-1)^2-many
  // independent directions at level n >= 2), so solve allowing free variables
  Vec sol = lin_solve_any(a, rhs, c.precision() - 4);
  PsiZeroSeries out(c);
  for (size_t i = 0; i < exps.size(); ++i)
    if (!sol[i].is_zero()) out.add_term(exps[i], sol[i]);
  // consistency: the preimage must evaluate back to x
  if (CycloElement::diff_valuation(out.eval_at_level(level), x) <
      c.precision() - 8)
    fail(Status::kNotInvertible, "element is not in the trace-zero image");
  return out;
}

}  // namespace ptw
