#include "ptower/runner.hpp"

#include <random>
#include <sstream>

#include "ptower/bounds.hpp"
#include "ptower/iwasawa.hpp"
#include "ptower/json_io.hpp"
#include "ptower/qsystem.hpp"

namespace ptw {

namespace {

Json parse(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Status::kParseError, "malformed JSON input");
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json constants_to_json(const PhiConstants& k) {
  Json out;
  out["r"] = k.r;
  out["s"] = k.s;
  out["s1"] = k.s1;
  out["s2"] = k.s2;
  return out;
}

}  // namespace

std::string run_solve(const std::string& instance_json) {
  Json in = parse(instance_json);
  ContextPtr cp = make_context(context_params_from_json(in));
  const Context& c = *cp;
  PhiModule m = module_from_json(c, in.at("module"));
  SparseDatum g = datum_from_json(c, in.at("g"), m.rank());
  int64_t r = in.contains("r") ? in.at("r").get<int64_t>() : std::max<int64_t>(1, m.weight_max());
  int degree = in.contains("degree") ? in.at("degree").get<int>() : c.degree_cap();

  Json out;
  out["op"] = "solve";
  out["p"] = c.p();
  out["precision"] = c.precision();
  out["degree"] = degree;
  try {
    SolveResult res = solve_one_minus_phi(m, g, r, degree);
    out["constants"] = constants_to_json(res.stats.constants);
    out["iterations"] = res.stats.iterations;
    out["loss_bound"] = res.stats.loss_bound;
    out["residual_valuation"] = res.stats.residual_valuation;
    out["residual_required"] = c.precision() - res.stats.loss_bound;
    out["psi_fixed_valuation"] = res.stats.psi_fixed_valuation;
    out["psi_check_threshold"] = res.stats.psi_check_threshold;
    out["psi_window"] = res.stats.psi_window;
    bool pass = res.stats.residual_valuation >= c.precision() - res.stats.loss_bound &&
                res.stats.psi_fixed_valuation >= res.stats.psi_check_threshold;
    out["pass"] = pass;
  } catch (const Error& e) {
    if (e.code() == Status::kParseError || e.code() == Status::kInvalidArgument ||
        e.code() == Status::kDomainError)
      throw;
    out["error"] = status_name(e.code());
    out["message"] = e.what();
    out["pass"] = false;
  }
  return dump(out);
}

std::string run_qsystem(const std::string& instance_json) {
  Json in = parse(instance_json);
  ContextPtr cp = make_context(context_params_from_json(in));
  const Context& c = *cp;
  PhiModule m = module_from_json(c, in.at("module"));
  SparseDatum g = datum_from_json(c, in.at("g"), m.rank());
  std::vector<Scalar> q = poly_from_json(c, in.at("Q"));
  int64_t tw = in.contains("m") ? in.at("m").get<int64_t>() : 0;
  int n_max = in.contains("n_max") ? in.at("n_max").get<int>() : 3;
  int64_t r = in.contains("r") ? in.at("r").get<int64_t>() : std::max<int64_t>(1, m.weight_max());
  int64_t s = in.contains("s") ? in.at("s").get<int64_t>() : m.derive_constants(r).s;
  int64_t tol = in.contains("tolerance") ? in.at("tolerance").get<int64_t>()
                                         : c.precision() - 8;
  Json out;
  out["op"] = "qsystem";
  out["p"] = c.p();
  out["n_max"] = n_max;
  try {
    QSystemFamily qs = build_q_system(m, g, q, tw, n_max, r, s);
    out["schedule_coeff"] = qs.schedule_coeff;
    out["schedule_const"] = qs.schedule_const;
    QSystemReport rep = verify_q_system(qs, tol);
    out["checked_digits"] = rep.checked_digits;
    out["trace_step_ok"] = rep.trace_step_ok;
    out["q_relation_ok"] = rep.q_relation_ok;
    out["pass"] = rep.all_ok();
  } catch (const Error& e) {
    if (e.code() == Status::kParseError || e.code() == Status::kInvalidArgument)
      throw;
    if (e.code() == Status::kDomainError) throw;
    out["error"] = status_name(e.code());
    out["message"] = e.what();
    out["pass"] = false;
  }
  return dump(out);
}

std::string run_wach(const std::string& instance_json) {
  Json in = parse(instance_json);
  ContextPtr cp = make_context(context_params_from_json(in));
  const Context& c = *cp;
  WachData w = wach_data_from_json(c, in);
  int pi_target = in.contains("pi_target") ? in.at("pi_target").get<int>() : 12;
  int levels = in.contains("log_levels") ? in.at("log_levels").get<int>() : 2;
  Json out;
  out["op"] = "wach";
  out["p"] = c.p();
  out["pi_target"] = pi_target;
  try {
    WachSolution sol = solve_wach_matrix(c, w, pi_target);
    out["iterations"] = sol.iterations;
    out["residual_pi_order"] = sol.residual_pi_order;
    out["residual_valuation"] = sol.residual_valuation;
    out["check_digits"] = sol.check_digits;
    out["congruence_digits"] = sol.congruence_digits;
    Json divis = Json::array();
    bool all = true;
    for (int n = 1; n <= levels; ++n) {
      bool ok = wach_log_divisibility_check(c, sol, n);
      divis.push_back(Json{{"level", n}, {"check", "log_matrix_divisibility"}, {"ok", ok}});
      all = all && ok;
    }
    out["log_divisibility"] = std::move(divis);
    out["pass"] = all && sol.residual_pi_order >= pi_target &&
                  sol.congruence_digits >= sol.check_digits;
  } catch (const Error& e) {
    if (e.code() == Status::kParseError || e.code() == Status::kInvalidArgument ||
        e.code() == Status::kDomainError)
      throw;
    out["error"] = status_name(e.code());
    out["message"] = e.what();
    out["pass"] = false;
  }
  return dump(out);
}

std::string run_lemmas(const std::string& request_json) {
  Json in = parse(request_json);
  ContextParams prm = context_params_from_json(in);
  if (!in.contains("precision")) prm.precision = 48;
  ContextPtr cp = make_context(prm);
  const Context& c = *cp;
  int n_max = in.contains("n_max") ? in.at("n_max").get<int>() : 3;
  Json checks = Json::array();
  bool pass = true;
  auto push = [&](Json j, bool ok) {
    j["ok"] = ok;
    pass = pass && ok;
    checks.push_back(std::move(j));
  };

  // unit-power valuation and congruence over beta with v(beta) in {0,1}
  for (int64_t bval = 0; bval <= 1; ++bval) {
    for (int64_t bu : {1, 2}) {
      Scalar beta = Scalar::from_int(c, bu).mul_p_pow(bval);
      for (int n = 0; n <= std::min(n_max + 1, 4); ++n) {
        if (n + 1 + bval >= c.precision() - 2) continue;
        auto rep = unit_power_valuation_check(beta, n);
        push(Json{{"check", "unit_power_valuation"},
                  {"beta_unit", bu},
                  {"beta_valuation", bval},
                  {"n", n},
                  {"observed", rep.observed_valuation},
                  {"expected", rep.expected_valuation}},
             rep.valuation_ok && rep.congruence_ok);
      }
    }
  }
  // cyclotomic quotient constants: Phi_{p^k}(u^-i gamma)/p mod omega_{n,j}
  for (int n = 1; n <= std::min(n_max, 2); ++n)
    for (int k = n + 1; k <= std::min(n_max + 1, 3); ++k)
      for (int64_t i = -1; i <= 1; ++i)
        for (int64_t jj = -1; jj <= 1; ++jj) {
          auto rep = cyclotomic_quotient_constant_check(c, k, i, n, jj);
          push(Json{{"check", "cyclotomic_quotient_constant"},
                    {"k", k},
                    {"i", i},
                    {"n", n},
                    {"j", jj}},
               rep.is_constant && rep.in_one_plus_pn);
        }
  // log-shift constants: ell_i at gamma = u^j zeta equals j - i
  for (int64_t i = -3; i <= 3; ++i)
    for (int64_t jj = -3; jj <= 3; ++jj)
      for (int level = 0; level <= std::min(n_max, 3); ++level) {
        Scalar got = ell_char_value(c, i, jj, level);
        bool ok = Scalar::diff_valuation(got, Scalar::from_int(c, jj - i)) >=
                  c.precision() - 10;
        push(Json{{"check", "log_shift_constant"}, {"i", i}, {"j", jj}, {"level", level}},
             ok);
      }

  Json out;
  out["op"] = "lemmas";
  out["p"] = c.p();
  out["precision"] = c.precision();
  out["checks"] = std::move(checks);
  out["pass"] = pass;
  return dump(out);
}

std::string run_mellin(const std::string& request_json) {
  Json in = parse(request_json);
  ContextParams prm = context_params_from_json(in);
  if (!in.contains("precision")) prm.precision = 48;
  ContextPtr cp = make_context(prm);
  const Context& c = *cp;
  int level = in.contains("level") ? in.at("level").get<int>() : 2;
  int samples = in.contains("samples") ? in.at("samples").get<int>() : 50;
  int m_max = in.contains("m_max") ? in.at("m_max").get<int>() : 2;
  uint64_t seed = in.contains("seed") ? in.at("seed").get<uint64_t>() : 1;
  int window = in.contains("window") ? in.at("window").get<int>() : 48;
  std::mt19937_64 rng(seed);
  auto rnd_coeff = [&]() {
    return Scalar::from_int(c, static_cast<int64_t>(rng() % 41) - 20);
  };
  Json checks = Json::array();
  bool pass = true;
  auto push = [&](Json j, bool ok) {
    j["ok"] = ok;
    pass = pass && ok;
    checks.push_back(std::move(j));
  };

  // normalization: the transform of 1 is exactly 1+pi
  {
    PsiZeroSeries m1 = IwasawaPoly::one(c).mellin();
    bool ok = m1.support().size() == 1 && m1.support().begin()->first == 1 &&
              Scalar::diff_valuation(m1.support().begin()->second, Scalar::one(c)) >=
                  c.precision();
    push(Json{{"check", "mellin_normalization"}}, ok);
  }
  // twisting identity against nabla_m = t d/dt - m
  for (int64_t m = 0; m <= m_max; ++m) {
    std::vector<Scalar> coeffs;
    for (int t = 0; t < 5; ++t) coeffs.push_back(rnd_coeff());
    IwasawaPoly f = IwasawaPoly::from_coeffs(c, coeffs);
    PowerSeries lhs = ell_times(c, m, f, window).mellin().to_series(window);
    PowerSeries rhs = nabla(f.mellin().to_series(window), m);
    int64_t agree = PowerSeries::diff_valuation(lhs, rhs);
    push(Json{{"check", "twisting_identity"}, {"m", m}, {"agreement", agree}},
         agree >= c.precision() - 6);
  }
  // divisibility in both directions
  int dividing = 0, generic_rejected = 0, tested = 0, generic_tested = 0;
  for (int s = 0; s < samples; ++s) {
    int64_t m = static_cast<int64_t>(rng() % static_cast<uint64_t>(m_max + 1));
    std::vector<Scalar> coeffs;
    int deg = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t <= deg; ++t) coeffs.push_back(rnd_coeff());
    IwasawaPoly f = IwasawaPoly::from_coeffs(c, coeffs);
    IwasawaPoly multiple = f * IwasawaPoly::omega(c, level - 1, m);
    ++tested;
    if (omega_divides(multiple, level, m, c.precision() - 8)) ++dividing;
    // the reverse direction is only decided for elements that do not vanish
    // at the test characters
    bool vanish = f.char_value(m, level).is_zero_at(c.precision() - 8);
    if (!vanish) {
      ++generic_tested;
      if (!omega_divides(f, level, m, c.precision() - 8)) ++generic_rejected;
    }
  }
  push(Json{{"check", "divisibility_constructed_multiples"},
            {"tested", tested},
            {"passed", dividing}},
       dividing == tested);
  push(Json{{"check", "divisibility_generic_rejected"},
            {"tested", generic_tested},
            {"rejected", generic_rejected}},
       generic_rejected == generic_tested && generic_tested > 0);
  // inverse transform round trip at the requested level
  {
    int64_t pn = 1;
    for (int i = 0; i < level; ++i) pn *= c.p();
    std::vector<Scalar> coeffs;
    for (int64_t t = 0; t < pn; ++t) coeffs.push_back(rnd_coeff());
    IwasawaPoly f = IwasawaPoly::from_coeffs(c, coeffs);
    IwasawaPoly back = mellin_inverse_at_level(f.mellin(), level);
    int64_t agree = IwasawaPoly::diff_valuation(back, f.reduce_mod_omega(level, 0));
    push(Json{{"check", "mellin_inverse_round_trip"}, {"level", level}, {"agreement", agree}},
         agree >= c.precision() - 10);
  }

  Json out;
  out["op"] = "mellin";
  out["p"] = c.p();
  out["precision"] = c.precision();
  out["level"] = level;
  out["checks"] = std::move(checks);
  out["pass"] = pass;
  return dump(out);
}

namespace {

Json bounds_rows(const Json& in) {
  std::string mode = in.contains("mode") ? in.at("mode").get<std::string>() : "modular";
  int64_t n_max = in.contains("n_max") ? in.at("n_max").get<int64_t>() : 3;
  Json rows = Json::array();
  if (mode == "modular") {
    int64_t p = in.at("p").get<int64_t>();
    int64_t k = in.at("k").get<int64_t>();
    int64_t e = in.contains("e") ? in.at("e").get<int64_t>() : 1;
    int64_t bd = in.contains("base_degree") ? in.at("base_degree").get<int64_t>() : 1;
    for (int64_t n = 1; n <= n_max; ++n) {
      BigExp mine = modular_form_exponent(p, k, e, n);
      BigExp other = laurent_exponent(p, k, e, n, bd);
      Json row;
      row["p"] = p;
      row["k"] = k;
      row["e"] = e;
      row["n"] = n;
      row["new_exponent"] = mine.str();
      row["laurent_exponent"] = other.str();
      row["winner"] = mine < other ? "new" : (other < mine ? "laurent" : "tie");
      rows.push_back(std::move(row));
    }
  } else if (mode == "general") {
    BoundInputs bi;
    bi.p = in.at("p").get<int64_t>();
    bi.r = in.contains("r") ? in.at("r").get<int64_t>() : 1;
    bi.s1 = in.contains("s1") ? in.at("s1").get<int64_t>() : 0;
    bi.s2 = in.contains("s2") ? in.at("s2").get<int64_t>() : 0;
    bi.d_prime = in.contains("d_prime") ? in.at("d_prime").get<int64_t>() : 1;
    if (in.contains("det_val")) bi.det_val = BigExp(in.at("det_val").get<int64_t>());
    for (int64_t n = 1; n <= n_max; ++n) {
      bi.n = n;
      Json row;
      row["p"] = bi.p;
      row["n"] = n;
      row["index_exponent"] = index_bound_exponent(bi).str();
      row["bound_exponent"] = general_bound_exponent(bi).str();
      row["sum_identity"] = index_sum_identity_check(bi);
      rows.push_back(std::move(row));
    }
  } else {
    fail(Status::kParseError, "mode must be 'modular' or 'general'");
  }
  return rows;
}

}  // namespace

std::string run_bounds(const std::string& request_json) {
  Json in = parse(request_json);
  Json rows = bounds_rows(in);
  Json out;
  out["op"] = "bounds";
  out["rows"] = rows;
  bool pass = true;
  for (const Json& row : rows)
    if (row.contains("sum_identity") && !row.at("sum_identity").get<bool>()) pass = false;
  out["pass"] = pass;
  return dump(out);
}

std::string run_bounds_csv(const std::string& request_json) {
  Json in = parse(request_json);
  Json rows = bounds_rows(in);
  std::ostringstream os;
  if (!rows.empty() && rows.at(0).contains("k")) {
    os << "p,k,e,n,new_exponent,laurent_exponent,winner\n";
    for (const Json& r : rows)
      os << r.at("p").get<int64_t>() << "," << r.at("k").get<int64_t>() << ","
         << r.at("e").get<int64_t>() << "," << r.at("n").get<int64_t>() << ","
         << r.at("new_exponent").get<std::string>() << ","
         << r.at("laurent_exponent").get<std::string>() << ","
         << r.at("winner").get<std::string>() << "\n";
  } else {
    os << "p,n,index_exponent,bound_exponent,sum_identity\n";
    for (const Json& r : rows)
      os << r.at("p").get<int64_t>() << "," << r.at("n").get<int64_t>() << ","
         << r.at("index_exponent").get<std::string>() << ","
         << r.at("bound_exponent").get<std::string>() << ","
         << (r.at("sum_identity").get<bool>() ? "true" : "false") << "\n";
  }
  return os.str();
}

}  // namespace ptw
