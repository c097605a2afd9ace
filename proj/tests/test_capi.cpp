// Exercises the shared-library surface the way an embedding client would:
// opaque handles, JSON exchange, status codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ptower.h"

#include <cstring>
#include <string>

namespace {

std::string take(char* buf) {
  std::string s = buf ? buf : "";
  ptw_buffer_free(buf);
  return s;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::strcmp(ptw_status_name(PTW_OK), "ok") == 0);
  CHECK(std::strcmp(ptw_status_name(PTW_ERR_DIVERGENCE), "divergence_detected") == 0);
  CHECK(ptw_version() != nullptr);
}

TEST_CASE("bounds command") {
  char* out = nullptr;
  ptw_status st = ptw_run_bounds(R"({"mode":"modular","p":5,"k":4,"e":1,"n_max":2})", &out);
  std::string rep = take(out);
  CHECK(st == PTW_OK);
  CHECK(rep.find("\"new_exponent\": \"13\"") != std::string::npos);
  CHECK(rep.find("\"laurent_exponent\": \"100\"") != std::string::npos);
  st = ptw_run_bounds_csv(R"({"mode":"modular","p":5,"k":4,"e":1,"n_max":2})", &out);
  rep = take(out);
  CHECK(st == PTW_OK);
  CHECK(rep.find("p,k,e,n,new_exponent,laurent_exponent,winner") == 0);
  CHECK(rep.find("5,4,1,2,33,100,new") != std::string::npos);
  // domain error surfaces as a status
  st = ptw_run_bounds(R"({"mode":"modular","p":5,"k":3,"e":1,"n_max":2})", &out);
  take(out);
  CHECK(st == PTW_ERR_DOMAIN);
  st = ptw_run_bounds("{nonsense", &out);
  take(out);
  CHECK(st == PTW_ERR_PARSE);
}

TEST_CASE("solve command") {
  const char* instance = R"({
    "p": 3, "precision": 64, "degree": 100,
    "module": {"phi": [[2]], "weights": [1]},
    "g": [[[1, 1]]],
    "r": 1
  })";
  char* out = nullptr;
  ptw_status st = ptw_run_solve(instance, &out);
  std::string rep = take(out);
  CHECK(st == PTW_OK);
  CHECK(rep.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("series handles") {
  ptw_context* ctx = nullptr;
  REQUIRE(ptw_context_create(3, 48, 64, 0, 1, &ctx) == PTW_OK);
  ptw_series* pi = nullptr;
  REQUIRE(ptw_series_parse(ctx, "[0, 1]", 64, &pi) == PTW_OK);
  ptw_series* fpi = nullptr;
  REQUIRE(ptw_series_op(ctx, pi, "phi", 1, &fpi) == PTW_OK);
  char* json = nullptr;
  REQUIRE(ptw_series_write(fpi, &json) == PTW_OK);
  std::string s = take(json);
  // phi(pi) = 3pi + 3pi^2 + pi^3
  CHECK(s.find("[1,\"1\"]") != std::string::npos);  // valuation-1 coefficients
  CHECK(s.find("[0,\"1\"]") != std::string::npos);  // the pi^3 term
  ptw_series* q = nullptr;
  REQUIRE(ptw_series_op(ctx, nullptr, "cyclo_q", 1, &q) == PTW_OK);
  char* ev = nullptr;
  REQUIRE(ptw_series_eval_level(ctx, q, 1, &ev) == PTW_OK);
  std::string evs = take(ev);
  CHECK(evs.find("\"level\":1") != std::string::npos);
  ptw_series_destroy(pi);
  ptw_series_destroy(fpi);
  ptw_series_destroy(q);
  ptw_context_destroy(ctx);
}

TEST_CASE("lemma suite through the API") {
  char* out = nullptr;
  ptw_status st = ptw_run_lemmas(R"({"p":3,"precision":40,"n_max":2})", &out);
  std::string rep = take(out);
  CHECK(st == PTW_OK);
  CHECK(rep.find("\"pass\": true") != std::string::npos);
  CHECK(rep.find("unit_power_valuation") != std::string::npos);
  CHECK(rep.find("cyclotomic_quotient_constant") != std::string::npos);
  CHECK(rep.find("log_shift_constant") != std::string::npos);
}
