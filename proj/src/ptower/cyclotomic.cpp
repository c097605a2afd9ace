#include "ptower/cyclotomic.hpp"

#include <algorithm>
#include <sstream>

namespace ptw {

namespace {

int64_t level_degree(const Context& c, int level) {
  return level == 0 ? 1 : c.cyclo_degree(level);
}

// with_signs: b_s = sum_t c_t (-1)^(t-s) binom(t,s), rewriting a poly in X
// over the (1+X)-power basis; without signs it expands (1+X)^j back into
// powers of X.
std::vector<Scalar> binom_updown(const Context& ctx, const std::vector<Scalar>& c,
                                 bool with_signs) {
  size_t n = c.size();
  std::vector<Scalar> out(n, Scalar::zero(ctx));
  // Pascal rows modulo p^N
  std::vector<Nat> row(n, Nat());
  for (size_t t = 0; t < n; ++t) {
    // row of binom(t, s)
    if (t == 0) {
      row[0] = Nat::from_u64(1);
    } else {
      for (size_t s = std::min(t, n - 1); s >= 1; --s)
        row[s] = Nat::mod(Nat::add(row[s], row[s - 1]), ctx.modulus());
    }
    if (c[t].is_exact_zero()) continue;
    for (size_t s = 0; s <= std::min(t, n - 1); ++s) {
      if (row[s].is_zero()) continue;
      Scalar term = c[t] * Scalar::from_nat(ctx, row[s]);
      if (with_signs && ((t - s) & 1)) term = -term;
      out[s] += term;
    }
  }
  return out;
}

}  // namespace

CycloElement CycloElement::zero(const Context& c, int level) {
  CycloElement e;
  e.ctx_ = &c;
  e.level_ = level;
  e.c_.assign(static_cast<size_t>(level_degree(c, level)), Scalar::zero(c));
  return e;
}

CycloElement CycloElement::one(const Context& c, int level) {
  CycloElement e = zero(c, level);
  e.c_[0] = Scalar::one(c);
  return e;
}

CycloElement CycloElement::from_scalar(const Context& c, int level, const Scalar& s) {
  CycloElement e = zero(c, level);
  e.c_[0] = s;
  return e;
}

CycloElement CycloElement::zeta_power(const Context& c, int level, int64_t j) {
  if (level == 0) return one(c, 0);
  int64_t pn = 1;
  for (int i = 0; i < level; ++i) pn *= c.p();
  j = ((j % pn) + pn) % pn;
  // (1 + pi_n)^j reduced mod Phi; j < p^level, expand binomially then reduce
  int64_t deg = level_degree(c, level);
  std::vector<Scalar> full(static_cast<size_t>(j) + 1, Scalar::zero(c));
  Scalar b = Scalar::one(c);
  for (int64_t t = 0; t <= j; ++t) {
    if (t > 0) b = b.mul_int(j - t + 1).divexact_int(t);
    full[t] = b;
  }
  CycloElement e = zero(c, level);
  if (j < deg) {
    for (int64_t t = 0; t <= j; ++t) e.c_[t] = full[t];
    return e;
  }
  // reduce by the monic cyclotomic modulus
  const auto& mod = c.cyclo_poly(level);
  for (int64_t d = j; d >= deg; --d) {
    Scalar top = full[d];
    if (top.is_exact_zero()) continue;
    for (int64_t t = 0; t < deg; ++t) {
      if (mod[t].is_zero()) continue;
      full[d - deg + t] -= top * Scalar::from_nat(c, mod[t]);
    }
    full[d] = Scalar::zero(c);
  }
  for (int64_t t = 0; t < deg; ++t) e.c_[t] = full[t];
  return e;
}

CycloElement CycloElement::operator+(const CycloElement& b) const {
  if (level_ != b.level_) fail(Status::kLevelMismatch, "cyclotomic level mismatch in add");
  CycloElement r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + b.c_[i];
  r.tail_floor_ = std::min(tail_floor_, b.tail_floor_);
  return r;
}

CycloElement CycloElement::operator-(const CycloElement& b) const { return *this + (-b); }

CycloElement CycloElement::operator-() const {
  CycloElement r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycloElement CycloElement::mul_scalar(const Scalar& s) const {
  CycloElement r = *this;
  for (auto& x : r.c_) x = x * s;
  if (!s.is_exact_zero() && tail_floor_ < Scalar::kInfVal)
    r.tail_floor_ = tail_floor_ + s.valuation();
  return r;
}

CycloElement CycloElement::mul_p_pow(int64_t e) const {
  CycloElement r = *this;
  for (auto& x : r.c_) x = x.mul_p_pow(e);
  if (tail_floor_ < Scalar::kInfVal) r.tail_floor_ = tail_floor_ + e;
  return r;
}

CycloElement CycloElement::sigma(int k) const {
  CycloElement r = *this;
  for (auto& x : r.c_) x = x.sigma(k);
  return r;
}

CycloElement CycloElement::operator*(const CycloElement& b) const {
  if (level_ != b.level_) fail(Status::kLevelMismatch, "cyclotomic level mismatch in mul");
  const Context& c = *ctx_;
  int64_t deg = degree();
  std::vector<Scalar> conv(static_cast<size_t>(2 * deg - 1), Scalar::zero(c));
  for (int64_t i = 0; i < deg; ++i) {
    if (c_[i].is_exact_zero()) continue;
    for (int64_t j = 0; j < deg; ++j) {
      if (b.c_[j].is_exact_zero()) continue;
      conv[i + j] += c_[i] * b.c_[j];
    }
  }
  CycloElement r = zero(c, level_);
  if (level_ == 0) {
    r.c_[0] = conv[0];
    return r;
  }
  const auto& mod = c.cyclo_poly(level_);
  std::vector<Scalar> modl(static_cast<size_t>(deg));
  for (int64_t t = 0; t < deg; ++t) modl[t] = Scalar::from_nat(c, mod[t]);
  for (int64_t d = 2 * deg - 2; d >= deg; --d) {
    Scalar top = conv[d];
    if (top.is_exact_zero()) continue;
    for (int64_t t = 0; t < deg; ++t) {
      if (modl[t].is_exact_zero()) continue;
      conv[d - deg + t] -= top * modl[t];
    }
  }
  for (int64_t t = 0; t < deg; ++t) r.c_[t] = conv[t];
  return r;
}

bool CycloElement::is_zero_at(int64_t digits) const {
  for (const auto& x : c_)
    if (x.valuation() < digits) return false;
  return true;
}

int64_t CycloElement::min_valuation() const {
  int64_t v = Scalar::kInfVal;
  for (const auto& x : c_) v = std::min(v, x.valuation());
  return v;
}

int64_t CycloElement::diff_valuation(const CycloElement& a, const CycloElement& b) {
  CycloElement d = a - b;
  return d.min_valuation();
}

std::vector<Scalar> CycloElement::zeta_basis() const {
  return binom_updown(*ctx_, c_, true);
}

CycloElement CycloElement::from_zeta_basis(const Context& c, int level,
                                           const std::vector<Scalar>& b) {
  CycloElement e = zero(c, level);
  e.c_ = binom_updown(c, b, false);
  e.c_.resize(static_cast<size_t>(level_degree(c, level)), Scalar::zero(c));
  return e;
}

CycloElement CycloElement::trace_down() const {
  const Context& c = *ctx_;
  if (level_ == 0) fail(Status::kLevelMismatch, "no trace below the base ring");
  std::vector<Scalar> zb = zeta_basis();
  if (level_ == 1) {
    // Tr(zeta^j) = p*[j=0] - 1
    Scalar acc = Scalar::zero(c);
    for (const auto& x : zb) acc -= x;
    acc += zb[0].mul_int(c.p());
    CycloElement r = zero(c, 0);
    r.c_[0] = acc;
    r.tail_floor_ = tail_floor_;
    return r;
  }
  // Tr(zeta^j) = p * zeta_{p^(n-1)}^(j/p) when p | j, else 0
  int64_t deg_dn = level_degree(c, level_ - 1);
  std::vector<Scalar> out(static_cast<size_t>(deg_dn), Scalar::zero(c));
  for (size_t j = 0; j < zb.size(); j += static_cast<size_t>(c.p()))
    out[j / static_cast<size_t>(c.p())] = zb[j].mul_int(c.p());
  CycloElement r = from_zeta_basis(c, level_ - 1, out);
  r.tail_floor_ = tail_floor_;
  return r;
}

CycloElement CycloElement::trace_to(int target) const {
  if (target > level_) fail(Status::kLevelMismatch, "trace target above current level");
  CycloElement r = *this;
  while (r.level_ > target) r = r.trace_down();
  return r;
}

CycloElement CycloElement::embed_up() const {
  const Context& c = *ctx_;
  int up = level_ + 1;
  if (up > 24) fail(Status::kLevelMismatch, "embedding beyond supported level");
  // Horner in the upper ring: substitute pi_lo = (1+pi_up)^p - 1
  CycloElement base = zero(c, up);
  {
    // (1+pi)^p - 1 at the upper level
    CycloElement one_plus = zeta_power(c, up, 1);
    CycloElement pw = one(c, up);
    for (int64_t i = 0; i < c.p(); ++i) pw = pw * one_plus;
    base = pw - one(c, up);
  }
  CycloElement acc = zero(c, up);
  for (int64_t t = degree(); t-- > 0;) {
    acc = acc * base;
    acc = acc + from_scalar(c, up, c_[t]);
  }
  acc.tail_floor_ = tail_floor_;
  return acc;
}

CycloElement CycloElement::embed_to(int target) const {
  if (target < level_) fail(Status::kLevelMismatch, "embed target below current level");
  CycloElement r = *this;
  while (r.level_ < target) r = r.embed_up();
  return r;
}

bool CycloElement::is_trace_zero(int64_t digits) const {
  if (level_ < 2) fail(Status::kLevelMismatch, "trace-zero test needs level >= 2");
  return trace_down().is_zero_at(digits);
}

std::vector<CycloElement> CycloElement::decompose() const {
  const Context& c = *ctx_;
  std::vector<CycloElement> comps(static_cast<size_t>(std::max(level_, 1)) + 1,
                                  CycloElement());
  CycloElement cur = *this;
  for (int i = level_; i >= 2; --i) {
    CycloElement tr = cur.trace_down();           // divisible by p by construction
    CycloElement down = tr.mul_p_pow(-1);         // exact: zeta-basis traces carry p
    comps[static_cast<size_t>(i)] = cur - down.embed_up();
    cur = down;
  }
  comps[1] = cur.embed_to(1);
  return comps;
}

std::string CycloElement::str() const {
  std::ostringstream os;
  os << "level " << level_ << ": [";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ", ";
    os << c_[i].str();
  }
  os << "]";
  return os.str();
}

}  // namespace ptw
