#include "ptower/qsystem.hpp"

namespace ptw {

QSystemFamily build_q_system(const PhiModule& t_module, const SparseDatum& g,
                             std::vector<Scalar> q_poly, int64_t m, int n_max,
                             int64_t r, int64_t s) {
  const Context& c = *t_module.ctx();
  if (m < 0 || (m > 0 && m > r - 1))
    fail(Status::kDomainError, "twist must satisfy 0 <= m <= r-1");
  QSystemFamily qs{t_module.twist(-m), 0, {}, {}, 0, 0};
  qs.twist_m = m;
  qs.q_poly = std::move(q_poly);
  qs.schedule_coeff = r - m - 1;
  qs.schedule_const = r + s - 1;
  if (!qs.module.is_k_polynomial(qs.q_poly, 1 + qs.schedule_coeff, c.precision() - 8))
    fail(Status::kDomainError,
         "polynomial does not annihilate the scheduled rescaling of phi");
  SparseDatum tw = twist_datum(g, -m);
  for (int n = 1; n <= n_max; ++n) {
    TangentVector d = tangent_eval_direct(qs.module, tw, n);
    d.twist_index = -m;
    d.scaling_exponent = qs.schedule_const + qs.schedule_coeff * n;
    qs.family.push_back(std::move(d));
  }
  return qs;
}

bool QSystemReport::all_ok() const {
  for (bool b : trace_step_ok)
    if (!b) return false;
  for (bool b : q_relation_ok)
    if (!b) return false;
  return !trace_step_ok.empty();
}

QSystemReport verify_q_system(const QSystemFamily& qs, int64_t tol) {
  const Context& c = *qs.module.ctx();
  QSystemReport rep;
  rep.checked_digits = tol;
  int n_max = static_cast<int>(qs.family.size());
  if (n_max < 1) fail(Status::kInvalidArgument, "empty family");
  // (i) trace steps
  for (int n = 1; n + 1 <= n_max; ++n) {
    TangentVector lhs = tangent_trace_down(qs.family[static_cast<size_t>(n)]);
    TangentVector rhs = tangent_apply_phi(qs.module, qs.family[static_cast<size_t>(n - 1)]);
    for (auto& x : rhs.comp) x = x.mul_p_pow(1);
    rep.trace_step_ok.push_back(tangent_diff_valuation(lhs, rhs) >= tol);
  }
  // (ii) scheduled corestriction relation
  int deg = static_cast<int>(qs.q_poly.size()) - 1;
  for (int n = 1; n + deg <= n_max; ++n) {
    TangentVector acc;
    acc.level = n;
    acc.comp.assign(qs.module.rank() >= 0 ? static_cast<size_t>(qs.module.rank()) : 0,
                    CycloElement::zero(c, n));
    for (int i = 0; i <= deg; ++i) {
      if (qs.q_poly[static_cast<size_t>(i)].is_exact_zero()) continue;
      TangentVector tr = qs.family[static_cast<size_t>(n + i - 1)];
      while (tr.level > n) tr = tangent_trace_down(tr);
      int64_t e = qs.schedule_coeff * (n + i);
      for (size_t t = 0; t < acc.comp.size(); ++t)
        acc.comp[t] = acc.comp[t] +
                      tr.comp[t].mul_scalar(qs.q_poly[static_cast<size_t>(i)]).mul_p_pow(e);
    }
    bool ok = true;
    for (const auto& x : acc.comp)
      if (!x.is_zero_at(tol)) ok = false;
    rep.q_relation_ok.push_back(ok);
  }
  return rep;
}

}  // namespace ptw
