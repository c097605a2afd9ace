#include "ptower/json_io.hpp"

namespace ptw {

Json scalar_to_json(const Scalar& s) {
  if (s.is_exact_zero()) return nullptr;
  if (s.is_zero()) return Json{{"zero_floor", s.valuation()}};
  Json arr = Json::array();
  arr.push_back(s.valuation());
  for (const Nat& u : s.unit()) arr.push_back(u.to_decimal());
  return arr;
}

Scalar scalar_from_json(const Context& c, const Json& j) {
  if (j.is_null()) return Scalar::zero(c);
  if (j.is_number_integer()) return Scalar::from_int(c, j.get<int64_t>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    bool neg = !s.empty() && s[0] == '-';
    Scalar x = Scalar::from_nat(c, Nat::from_decimal(neg ? s.substr(1) : s));
    return neg ? -x : x;
  }
  if (j.is_object() && j.contains("zero_floor"))
    return Scalar::approx_zero(c, j.at("zero_floor").get<int64_t>());
  if (j.is_array() && j.size() >= 2) {
    int64_t v = j.at(0).get<int64_t>();
    Unit u = c.unit_zero();
    for (int i = 0; i + 1 < static_cast<int>(j.size()) && i < c.nu(); ++i) {
      const Json& e = j.at(static_cast<size_t>(i) + 1);
      std::string s = e.is_string() ? e.get<std::string>() : e.dump();
      u[static_cast<size_t>(i)] = Nat::mod(Nat::from_decimal(s), c.modulus());
    }
    if (c.unit_is_zero(u)) return Scalar::approx_zero(c, v + c.precision());
    return Scalar::from_val_unit(c, v, std::move(u));
  }
  fail(Status::kParseError, "unrecognized scalar encoding");
}

ContextParams context_params_from_json(const Json& j) {
  ContextParams prm;
  if (j.contains("p")) prm.p = j.at("p").get<int64_t>();
  if (j.contains("precision")) prm.precision = j.at("precision").get<int>();
  if (j.contains("nu")) prm.nu = j.at("nu").get<int>();
  if (j.contains("u")) prm.u = j.at("u").get<uint64_t>();
  if (j.contains("degree")) prm.degree_cap = j.at("degree").get<int>();
  if (j.contains("tower_cap")) prm.tower_cap = j.at("tower_cap").get<int>();
  return prm;
}

PhiModule module_from_json(const Context& c, const Json& j) {
  if (!j.contains("phi") || !j.contains("weights"))
    fail(Status::kParseError, "module needs 'phi' and 'weights'");
  const Json& pm = j.at("phi");
  size_t d = pm.size();
  Mat m(d, Vec(d, Scalar::zero(c)));
  for (size_t i = 0; i < d; ++i) {
    if (pm.at(i).size() != d) fail(Status::kParseError, "phi matrix must be square");
    for (size_t k = 0; k < d; ++k) m[i][k] = scalar_from_json(c, pm.at(i).at(k));
  }
  std::vector<int64_t> w = j.at("weights").get<std::vector<int64_t>>();
  int64_t dp = j.contains("d_prime") ? j.at("d_prime").get<int64_t>() : -1;
  return PhiModule(c, std::move(m), std::move(w), dp);
}

SparseDatum datum_from_json(const Context& c, const Json& j, int rank) {
  if (static_cast<int>(j.size()) != rank)
    fail(Status::kParseError, "datum needs one component per basis vector");
  SparseDatum g;
  for (const Json& comp : j) {
    PsiZeroSeries f(c);
    for (const Json& term : comp) {
      if (!term.is_array() || term.size() != 2)
        fail(Status::kParseError, "datum terms are [exponent, scalar] pairs");
      BigInt e;
      if (term.at(0).is_string())
        e = BigInt(term.at(0).get<std::string>());
      else
        e = term.at(0).get<int64_t>();
      f.add_term(e, scalar_from_json(c, term.at(1)));
    }
    g.push_back(std::move(f));
  }
  return g;
}

std::vector<Scalar> poly_from_json(const Context& c, const Json& j) {
  std::vector<Scalar> q;
  for (const Json& e : j) q.push_back(scalar_from_json(c, e));
  if (q.empty()) fail(Status::kParseError, "empty polynomial");
  return q;
}

WachData wach_data_from_json(const Context& c, const Json& j) {
  if (!j.contains("A0") || !j.contains("weights"))
    fail(Status::kParseError, "wach data needs 'A0' and 'weights'");
  const Json& am = j.at("A0");
  size_t d = am.size();
  Mat a0(d, Vec(d, Scalar::zero(c)));
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k) a0[i][k] = scalar_from_json(c, am.at(i).at(k));
  return WachData{std::move(a0), j.at("weights").get<std::vector<int64_t>>()};
}

Json cyclo_to_json(const CycloElement& x) {
  Json coeffs = Json::array();
  for (int64_t i = 0; i < x.degree(); ++i) coeffs.push_back(scalar_to_json(x.coeff(i)));
  Json out;
  out["level"] = x.level();
  out["coeffs"] = std::move(coeffs);
  return out;
}

Json tangent_to_json(const TangentVector& tv) {
  Json comps = Json::array();
  for (const auto& x : tv.comp) comps.push_back(cyclo_to_json(x));
  Json out;
  out["level"] = tv.level;
  out["twist"] = tv.twist_index;
  out["scaling_exponent"] = tv.scaling_exponent;
  out["components"] = std::move(comps);
  return out;
}

Json series_to_json(const PowerSeries& f) {
  Json arr = Json::array();
  for (int i = 0; i < f.cap(); ++i) arr.push_back(scalar_to_json(f[i]));
  return arr;
}

PowerSeries series_from_json(const Context& c, const Json& j, int cap) {
  PowerSeries f(c, cap);
  int i = 0;
  for (const Json& e : j) {
    if (i >= cap) break;
    f.at(i++) = scalar_from_json(c, e);
  }
  return f;
}

}  // namespace ptw
