#include "ptower/context.hpp"

#include <algorithm>

namespace ptw {

namespace {

bool is_odd_prime(int64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t m) {
  unsigned __int128 acc = 1, base = b % m;
  while (e) {
    if (e & 1) acc = acc * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<uint64_t>(acc);
}

// ---- tiny F_p[x] helpers used only to pick the unramified defining poly ----

using FpPoly = std::vector<uint64_t>;  // little-endian, coefficients mod p

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, uint64_t p) {
  std::vector<unsigned __int128> tmp(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) tmp[i + j] += (unsigned __int128)a[i] * b[j] % p;
  FpPoly r(tmp.size());
  for (size_t i = 0; i < tmp.size(); ++i) r[i] = static_cast<uint64_t>(tmp[i] % p);
  size_t nu = f.size() - 1;
  for (size_t d = r.size(); d-- > nu;) {
    uint64_t c = r[d];  // leading coefficient of f is 1
    if (c == 0) continue;
    for (size_t j = 0; j < nu; ++j) r[d - nu + j] = (r[d - nu + j] + (p - c) * f[j]) % p;
    r[d] = 0;
  }
  r.resize(nu);
  return r;
}

FpPoly fp_xpow_ppow(int k, const FpPoly& f, uint64_t p) {
  // x^(p^k) mod f by repeated frobenius-power
  size_t nu = f.size() - 1;
  FpPoly r(nu, 0);
  if (nu == 1) {
    // x = -f[0]
    r[0] = (p - f[0] % p) % p;
    return r;
  }
  r[1] = 1;
  for (int step = 0; step < k; ++step) {
    // raise to p-th power
    FpPoly acc(nu, 0);
    acc[0] = 1;
    FpPoly base = r;
    uint64_t e = p;
    while (e) {
      if (e & 1) acc = fp_mulmod(acc, base, f, p);
      base = fp_mulmod(base, base, f, p);
      e >>= 1;
    }
    r = acc;
  }
  return r;
}

bool fp_is_x(const FpPoly& a) {
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t want = (i == 1) ? 1 : 0;
    if (a[i] != want) return false;
  }
  return a.size() >= 2;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, uint64_t p) {
  auto deg = [](const FpPoly& x) {
    for (size_t i = x.size(); i-- > 0;)
      if (x[i]) return static_cast<int>(i);
    return -1;
  };
  while (deg(b) >= 0) {
    int da = deg(a), db = deg(b);
    if (da < db) {
      std::swap(a, b);
      continue;
    }
    uint64_t lb = b[db];
    uint64_t inv = powmod_u64(lb, p - 2, p);
    uint64_t c = a[da] * inv % p;
    for (int j = 0; j <= db; ++j)
      a[da - db + j] = (a[da - db + j] + (p - c) * b[j]) % p;
    a.resize(da);  // leading term cancelled
  }
  return a;
}

bool fp_irreducible(const FpPoly& f, uint64_t p) {
  int nu = static_cast<int>(f.size()) - 1;
  FpPoly top = fp_xpow_ppow(nu, f, p);
  if (!fp_is_x(top) && nu > 1) return false;
  if (nu == 1) return true;
  for (int q = 2; q <= nu; ++q) {
    if (nu % q != 0) continue;
    bool prime = true;
    for (int d = 2; d * d <= q; ++d)
      if (q % d == 0) prime = false;
    if (!prime) continue;
    FpPoly sub = fp_xpow_ppow(nu / q, f, p);
    // gcd(x^(p^(nu/q)) - x, f) must be trivial
    FpPoly diff = sub;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    FpPoly g = fp_gcd(f, diff, p);
    int dg = -1;
    for (size_t i = g.size(); i-- > 0;)
      if (g[i]) {
        dg = static_cast<int>(i);
        break;
      }
    if (dg > 0) return false;
  }
  return true;
}

}  // namespace

Context::Context(const ContextParams& prm)
    : p_(prm.p), N_(prm.precision), nu_(prm.nu), u_(prm.u),
      degree_cap_(prm.degree_cap), tower_cap_(prm.tower_cap) {
  if (!is_odd_prime(p_)) fail(Status::kInvalidArgument, "p must be an odd prime");
  if (N_ < 1 || N_ > 880) fail(Status::kInvalidArgument, "precision out of range");
  if (nu_ < 1 || nu_ > 8) fail(Status::kInvalidArgument, "unramified degree out of range");
  if (u_ == 0) u_ = static_cast<uint64_t>(p_) + 1;
  if (u_ % static_cast<uint64_t>(p_) != 1 ||
      (u_ - 1) % static_cast<uint64_t>(p_ * p_) == 0 || u_ == 1)
    fail(Status::kInvalidArgument, "u must satisfy v_p(u-1) = 1");
  if (degree_cap_ <= 0) {
    int64_t d = 3 * p_ * p_ * p_;
    degree_cap_ = static_cast<int>(std::min<int64_t>(d, 4096));
  }
  if (tower_cap_ <= 0) tower_cap_ = p_ == 3 ? 4 : 3;

  p_pow_.reserve(N_ + 1);
  p_pow_.push_back(Nat::from_u64(1));
  for (int i = 1; i <= N_; ++i) {
    p_pow_.push_back(Nat::mul_u64(p_pow_.back(), static_cast<uint64_t>(p_)));
    if (p_pow_.back().limbs() > Nat::kCap - 2)
      fail(Status::kInvalidArgument, "p^precision exceeds the residue limb budget");
  }
  build_unramified();
}

void Context::build_unramified() {
  if (nu_ == 1) return;
  uint64_t p = static_cast<uint64_t>(p_);
  // pick a monic irreducible X^nu + a X + b over F_p
  FpPoly fbar;
  bool found = false;
  for (uint64_t b = 1; b < p && !found; ++b) {
    for (uint64_t a = 0; a < p && !found; ++a) {
      fbar.assign(nu_ + 1, 0);
      fbar[0] = b;
      fbar[1] = (fbar.size() > 1) ? a : 0;
      fbar[nu_] = 1;
      if (fp_irreducible(fbar, p)) found = true;
    }
  }
  if (!found) fail(Status::kInternal, "no unramified defining polynomial found");

  defpoly_.resize(nu_ + 1);
  for (int i = 0; i <= nu_; ++i) defpoly_[i] = Nat::from_u64(fbar[i]);

  // Hensel-lift the residue Frobenius: find s = X^p mod (f, p) with f(s) = 0 mod p^N.
  std::vector<Nat> s(nu_);
  {
    FpPoly s0 = fp_xpow_ppow(1, fbar, p);
    for (int i = 0; i < nu_; ++i) s[i] = Nat::from_u64(s0[i]);
  }
  auto eval_poly = [&](const std::vector<Nat>& coeffs, const std::vector<Nat>& at,
                       bool derivative) {
    // Horner over the residue ring
    std::vector<Nat> acc(nu_);
    int top = static_cast<int>(coeffs.size()) - 1;
    for (int i = top; i >= (derivative ? 1 : 0); --i) {
      // acc = acc*at + c_i (times i if derivative)
      Unit au(acc.begin(), acc.end()), atu(at.begin(), at.end());
      Unit prod = unit_mul(au, atu);
      acc.assign(prod.begin(), prod.end());
      Nat c = derivative ? Nat::mod(Nat::mul_u64(coeffs[i], static_cast<uint64_t>(i)), modulus())
                         : coeffs[i];
      acc[0] = Nat::mod(Nat::add(acc[0], c), modulus());
    }
    return acc;
  };
  for (int iter = 0; iter < 64; ++iter) {
    std::vector<Nat> fs = eval_poly(defpoly_, s, false);
    Unit fsu(fs.begin(), fs.end());
    if (unit_is_zero(fsu)) break;
    std::vector<Nat> dfs = eval_poly(defpoly_, s, true);
    Unit dfsu(dfs.begin(), dfs.end());
    Unit corr = unit_mul(fsu, unit_inv(dfsu));
    Unit su(s.begin(), s.end());
    Unit next = unit_sub(su, corr);
    s.assign(next.begin(), next.end());
    if (iter == 63) fail(Status::kInternal, "Frobenius lift did not converge");
  }

  // sigma^k matrices: column i is sigma^k(X^i) = (sigma(X))^(k-composed) powers
  sigma_mat_.resize(nu_);
  for (int k = 1; k < nu_; ++k) sigma_mat_[k].assign(nu_, std::vector<Nat>(nu_));
  std::vector<Nat> sk = s;  // sigma^k(X)
  for (int k = 1; k < nu_; ++k) {
    // powers of sk
    Unit pow = unit_one();
    for (int i = 0; i < nu_; ++i) {
      for (int row = 0; row < nu_; ++row)
        sigma_mat_[k][row][i] = row < static_cast<int>(pow.size()) ? pow[row] : Nat();
      Unit sku(sk.begin(), sk.end());
      pow = unit_mul(pow, sku);
    }
    if (k + 1 < nu_) {
      // sigma^(k+1)(X) = sigma^k applied to s
      Unit su(s.begin(), s.end());
      Unit next = unit_sigma(su, k);
      sk.assign(next.begin(), next.end());
    }
  }
}

const Nat& Context::p_pow(int e) const {
  if (e < 0 || e > N_) fail(Status::kInternal, "p_pow exponent out of range");
  return p_pow_[e];
}

Unit Context::unit_zero() const { return Unit(static_cast<size_t>(nu_), Nat()); }

Unit Context::unit_one() const {
  Unit r(static_cast<size_t>(nu_), Nat());
  r[0] = Nat::from_u64(1);
  return r;
}

Unit Context::unit_from_u64(uint64_t x) const {
  Unit r(static_cast<size_t>(nu_), Nat());
  r[0] = Nat::mod(Nat::from_u64(x), modulus());
  return r;
}

bool Context::unit_is_zero(const Unit& a) const {
  for (const Nat& c : a)
    if (!c.is_zero()) return false;
  return true;
}

bool Context::unit_eq(const Unit& a, const Unit& b) const {
  for (int i = 0; i < nu_; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

Unit Context::unit_add(const Unit& a, const Unit& b) const {
  Unit r(static_cast<size_t>(nu_));
  for (int i = 0; i < nu_; ++i) r[i] = Nat::mod(Nat::add(a[i], b[i]), modulus());
  return r;
}

Unit Context::unit_sub(const Unit& a, const Unit& b) const {
  Unit r(static_cast<size_t>(nu_));
  for (int i = 0; i < nu_; ++i) {
    Nat ai = a[i];
    if (Nat::cmp(ai, b[i]) < 0) ai = Nat::add(ai, modulus());
    r[i] = Nat::sub(ai, b[i]);
  }
  return r;
}

Unit Context::unit_neg(const Unit& a) const { return unit_sub(unit_zero(), a); }

std::vector<Nat> Context::poly_mulmod(const std::vector<Nat>& a,
                                      const std::vector<Nat>& b) const {
  std::vector<Nat> conv(2 * nu_ - 1, Nat());
  for (int i = 0; i < nu_; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < nu_; ++j) {
      if (b[j].is_zero()) continue;
      conv[i + j] = Nat::mod(Nat::add(conv[i + j], Nat::mulmod(a[i], b[j], modulus())), modulus());
    }
  }
  // reduce by the monic defining polynomial
  for (int d = 2 * nu_ - 2; d >= nu_; --d) {
    Nat c = conv[d];
    if (c.is_zero()) continue;
    for (int j = 0; j < nu_; ++j) {
      Nat t = Nat::mulmod(c, defpoly_[j], modulus());
      Nat cur = conv[d - nu_ + j];
      if (Nat::cmp(cur, t) < 0) cur = Nat::add(cur, modulus());
      conv[d - nu_ + j] = Nat::sub(cur, t);
    }
    conv[d] = Nat();
  }
  conv.resize(nu_);
  return conv;
}

Unit Context::unit_mul(const Unit& a, const Unit& b) const {
  if (nu_ == 1) {
    Unit r(1);
    r[0] = Nat::mulmod(a[0], b[0], modulus());
    return r;
  }
  std::vector<Nat> av(a.begin(), a.end()), bv(b.begin(), b.end());
  std::vector<Nat> rv = poly_mulmod(av, bv);
  return Unit(rv.begin(), rv.end());
}

Unit Context::unit_mul_nat(const Unit& a, const Nat& b) const {
  Unit r(static_cast<size_t>(nu_));
  for (int i = 0; i < nu_; ++i) r[i] = Nat::mulmod(a[i], b, modulus());
  return r;
}

Unit Context::unit_inv(const Unit& a) const {
  if (unit_val(a) > 0) fail(Status::kNotInvertible, "residue is divisible by p");
  Unit x;
  uint64_t p = static_cast<uint64_t>(p_);
  if (nu_ == 1) {
    uint64_t a0 = Nat::mod_u64(a[0], p);
    x = unit_from_u64(powmod_u64(a0, p - 2, p));
  } else {
    // inverse mod p via Fermat in F_(p^nu): a^(p^nu - 2)
    Unit abar(static_cast<size_t>(nu_));
    for (int i = 0; i < nu_; ++i) abar[i] = Nat::from_u64(Nat::mod_u64(a[i], p));
    // exponent p^nu - 2 by square and multiply over the residue ring mod p
    // (we work mod p^N with inputs reduced mod p; the final Newton lift fixes
    // the higher digits anyway)
    Nat e = p_pow_[std::min(nu_, N_)];
    if (std::min(nu_, N_) < nu_) {
      // precision smaller than nu digits cannot happen (N >= 1, nu <= 8 => fine
      // only when N >= nu); recompute exactly
      e = Nat::from_u64(1);
      for (int i = 0; i < nu_; ++i) e = Nat::mul_u64(e, p);
    }
    e.sub_u64_inplace(2);
    Unit acc = unit_one();
    Unit base = abar;
    Nat ecur = e;
    while (!ecur.is_zero()) {
      if (Nat::mod_u64(ecur, 2) == 1) acc = unit_mul(acc, base);
      base = unit_mul(base, base);
      ecur = Nat::divexact_u64(Nat::sub(ecur, Nat::from_u64(Nat::mod_u64(ecur, 2))), 2);
    }
    // reduce acc mod p to get a clean seed
    for (int i = 0; i < nu_; ++i) acc[i] = Nat::from_u64(Nat::mod_u64(acc[i], p));
    x = acc;
  }
  // Newton: x <- x(2 - a x); doubles correct digits each step
  Unit two = unit_from_u64(2);
  for (int iter = 0, need = 1; need < N_ && iter < 12; ++iter, need *= 2)
    x = unit_mul(x, unit_sub(two, unit_mul(a, x)));
  x = unit_mul(x, unit_sub(two, unit_mul(a, x)));
  return x;
}

Unit Context::unit_sigma(const Unit& a, int k) const {
  if (nu_ == 1) return a;
  int kk = ((k % nu_) + nu_) % nu_;
  if (kk == 0) return a;
  const auto& m = sigma_mat_[kk];
  Unit r(static_cast<size_t>(nu_), Nat());
  for (int col = 0; col < nu_; ++col) {
    if (a[col].is_zero()) continue;
    for (int row = 0; row < nu_; ++row) {
      Nat t = Nat::mulmod(m[row][col], a[col], modulus());
      r[row] = Nat::mod(Nat::add(r[row], t), modulus());
    }
  }
  return r;
}

int Context::unit_val(const Unit& a) const {
  int best = N_;
  for (const Nat& c : a) {
    if (c.is_zero()) continue;
    auto [v, u] = val_unit_of_nat(c);
    (void)u;
    best = std::min(best, v);
    if (best == 0) return 0;
  }
  return best;
}

Unit Context::unit_divexact_p(const Unit& a, int e) const {
  if (e == 0) return a;
  Unit r(static_cast<size_t>(nu_));
  for (int i = 0; i < nu_; ++i) {
    Nat c = a[i];
    for (int j = 0; j < e; ++j) c = Nat::divexact_u64(c, static_cast<uint64_t>(p_));
    r[i] = c;
  }
  return r;
}

Unit Context::unit_mul_ppow(const Unit& a, int e) const {
  if (e == 0) return a;
  Unit r(static_cast<size_t>(nu_));
  const Nat& pe = p_pow(std::min(e, N_));
  for (int i = 0; i < nu_; ++i) r[i] = Nat::mulmod(a[i], pe, modulus());
  return r;
}

Nat Context::nat_inv_unit(const Nat& x) const {
  uint64_t p = static_cast<uint64_t>(p_);
  uint64_t x0 = Nat::mod_u64(x, p);
  if (x0 == 0) fail(Status::kNotInvertible, "residue is divisible by p");
  Nat inv = Nat::from_u64(powmod_u64(x0, p - 2, p));
  Nat two = Nat::from_u64(2);
  for (int iter = 0, need = 1; need < N_ && iter < 12; ++iter, need *= 2) {
    Nat t = Nat::mulmod(x, inv, modulus());
    Nat d = Nat::cmp(two, t) >= 0 ? Nat::sub(two, t) : Nat::sub(Nat::add(two, modulus()), t);
    inv = Nat::mulmod(inv, d, modulus());
  }
  return inv;
}

std::pair<int, Nat> Context::val_unit_of_nat(const Nat& x) const {
  if (x.is_zero()) return {N_, Nat()};
  Nat cur = x;
  int v = 0;
  uint64_t p = static_cast<uint64_t>(p_);
  while (v < N_ && Nat::mod_u64(cur, p) == 0) {
    cur = Nat::divexact_u64(cur, p);
    ++v;
  }
  return {v, cur};
}

const std::vector<Nat>& Context::cyclo_poly(int level) const {
  if (level < 1 || level > 24) fail(Status::kLevelMismatch, "cyclotomic level out of range");
  std::lock_guard<std::mutex> lock(cache_mu_);
  if (cyclo_cache_.size() < static_cast<size_t>(level)) cyclo_cache_.resize(level);
  auto& slot = cyclo_cache_[level - 1];
  if (!slot.empty()) return slot;

  int64_t step = 1;
  for (int i = 1; i < level; ++i) step *= p_;  // p^(level-1)
  int64_t deg = (p_ - 1) * step;
  std::vector<Nat> poly(static_cast<size_t>(deg) + 1, Nat());
  // Phi_{p^level}(1+X) = sum_{t=0}^{p-1} (1+X)^(t*step)
  for (int64_t t = 0; t < p_; ++t) {
    int64_t m = t * step;
    // binomial row of (1+X)^m, tracked as exact (valuation, unit) pairs
    int bval = 0;
    Nat bunit = Nat::from_u64(1);
    for (int64_t j = 0; j <= m; ++j) {
      if (j > 0) {
        // c <- c * (m - j + 1) / j
        auto [v1, u1] = val_unit_of_nat(Nat::from_u64(static_cast<uint64_t>(m - j + 1)));
        auto [v2, u2] = val_unit_of_nat(Nat::from_u64(static_cast<uint64_t>(j)));
        bval += v1 - v2;
        bunit = Nat::mulmod(bunit, u1, modulus());
        bunit = Nat::mulmod(bunit, nat_inv_unit(u2), modulus());
      }
      if (bval < N_) {
        Nat contrib = Nat::mulmod(bunit, p_pow_[bval], modulus());
        poly[j] = Nat::mod(Nat::add(poly[j], contrib), modulus());
      }
    }
  }
  slot = std::move(poly);
  return slot;
}

int64_t Context::cyclo_degree(int level) const {
  int64_t step = 1;
  for (int i = 1; i < level; ++i) step *= p_;
  return (p_ - 1) * step;
}

ContextPtr make_context(const ContextParams& params) {
  return std::make_shared<const Context>(params);
}

}  // namespace ptw
