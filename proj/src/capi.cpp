#include "ptower.h"

#include <cstring>
#include <string>

#include "ptower/json_io.hpp"
#include "ptower/runner.hpp"

using namespace ptw;

extern "C" {

struct ptw_context {
  ContextPtr rep;
};

struct ptw_series {
  PowerSeries rep;
};

const char* ptw_status_name(ptw_status s) {
  return status_name(static_cast<Status>(s));
}

const char* ptw_version(void) { return "0.1.0"; }

void ptw_buffer_free(char* buf) { delete[] buf; }

namespace {

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ptw_status to_status(const Error& e) { return static_cast<ptw_status>(e.code()); }

using RunnerFn = std::string (*)(const std::string&);

ptw_status run_command(RunnerFn fn, const char* in, char** out) {
  if (!in || !out) return PTW_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  try {
    std::string report = fn(std::string(in));
    *out = dup_string(report);
    // reports carry an explicit pass flag; surface failures in the status
    Json j = Json::parse(report, nullptr, false);
    if (!j.is_discarded() && j.contains("pass") && !j.at("pass").get<bool>())
      return PTW_ERR_CHECK_FAILED;
    return PTW_OK;
  } catch (const Error& e) {
    *out = dup_string(std::string(e.what()) + "\n");
    return to_status(e);
  } catch (const std::exception& e) {
    *out = dup_string(std::string(e.what()) + "\n");
    return PTW_ERR_INTERNAL;
  }
}

}  // namespace

ptw_status ptw_run_solve(const char* in, char** out) {
  return run_command(&run_solve, in, out);
}
ptw_status ptw_run_qsystem(const char* in, char** out) {
  return run_command(&run_qsystem, in, out);
}
ptw_status ptw_run_wach(const char* in, char** out) {
  return run_command(&run_wach, in, out);
}
ptw_status ptw_run_lemmas(const char* in, char** out) {
  return run_command(&run_lemmas, in, out);
}
ptw_status ptw_run_mellin(const char* in, char** out) {
  return run_command(&run_mellin, in, out);
}
ptw_status ptw_run_bounds(const char* in, char** out) {
  return run_command(&run_bounds, in, out);
}
ptw_status ptw_run_bounds_csv(const char* in, char** out) {
  return run_command(&run_bounds_csv, in, out);
}

ptw_status ptw_context_create(int64_t p, int precision, int degree_cap, uint64_t u,
                              int nu, ptw_context** out) {
  if (!out) return PTW_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  try {
    ContextParams prm;
    prm.p = p;
    prm.precision = precision;
    prm.degree_cap = degree_cap;
    prm.u = u;
    prm.nu = nu > 0 ? nu : 1;
    *out = new ptw_context{make_context(prm)};
    return PTW_OK;
  } catch (const Error& e) {
    return to_status(e);
  } catch (...) {
    return PTW_ERR_INTERNAL;
  }
}

void ptw_context_destroy(ptw_context* ctx) { delete ctx; }

ptw_status ptw_series_parse(ptw_context* ctx, const char* json, int cap,
                            ptw_series** out) {
  if (!ctx || !json || !out || cap <= 0) return PTW_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  try {
    Json j = Json::parse(json, nullptr, false);
    if (j.is_discarded()) return PTW_ERR_PARSE;
    *out = new ptw_series{series_from_json(*ctx->rep, j, cap)};
    return PTW_OK;
  } catch (const Error& e) {
    return to_status(e);
  } catch (...) {
    return PTW_ERR_INTERNAL;
  }
}

ptw_status ptw_series_write(const ptw_series* f, char** json_out) {
  if (!f || !json_out) return PTW_ERR_INVALID_ARGUMENT;
  try {
    *json_out = dup_string(series_to_json(f->rep).dump());
    return PTW_OK;
  } catch (...) {
    return PTW_ERR_INTERNAL;
  }
}

void ptw_series_destroy(ptw_series* f) { delete f; }

ptw_status ptw_series_op(ptw_context* ctx, const ptw_series* in, const char* op,
                         int arg, ptw_series** out) {
  if (!ctx || !op || !out) return PTW_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  try {
    const Context& c = *ctx->rep;
    std::string o(op);
    PowerSeries r;
    if (o == "phi") {
      if (!in) return PTW_ERR_INVALID_ARGUMENT;
      r = in->rep.phi_pow(arg > 0 ? arg : 1);
    } else if (o == "psi") {
      if (!in) return PTW_ERR_INVALID_ARGUMENT;
      r = in->rep.psi();
    } else if (o == "partial") {
      if (!in) return PTW_ERR_INVALID_ARGUMENT;
      r = in->rep.partial(arg > 0 ? arg : 1);
    } else if (o == "log") {
      r = PowerSeries::log_one_plus_pi(c, arg > 0 ? arg : c.degree_cap());
    } else if (o == "cyclo_q") {
      r = PowerSeries::cyclo_q(c, arg > 0 ? arg : 1, c.degree_cap());
    } else if (o == "mu") {
      r = PowerSeries::mu_unit(c, arg > 0 ? arg : c.degree_cap());
    } else {
      return PTW_ERR_INVALID_ARGUMENT;
    }
    *out = new ptw_series{std::move(r)};
    return PTW_OK;
  } catch (const Error& e) {
    return to_status(e);
  } catch (...) {
    return PTW_ERR_INTERNAL;
  }
}

ptw_status ptw_series_eval_level(ptw_context* ctx, const ptw_series* f, int level,
                                 char** json_out) {
  if (!ctx || !f || !json_out) return PTW_ERR_INVALID_ARGUMENT;
  try {
    CycloElement v = f->rep.eval_at_level(level);
    *json_out = dup_string(cyclo_to_json(v).dump());
    return PTW_OK;
  } catch (const Error& e) {
    *json_out = nullptr;
    return to_status(e);
  } catch (...) {
    return PTW_ERR_INTERNAL;
  }
}

}  // extern "C"
