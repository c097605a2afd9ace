#pragma once

#include <string>

namespace ptw {

// Command layer shared by the shared-library API and (through it) the CLI.
// Each function takes a JSON request/instance and returns a JSON report with
// deterministic key order and a top-level "pass" flag.  Parse and domain
// problems throw; honest negative results (a failing check, a detected
// divergence) come back as reports with pass = false.
std::string run_solve(const std::string& instance_json);
std::string run_qsystem(const std::string& instance_json);
std::string run_wach(const std::string& instance_json);
std::string run_lemmas(const std::string& request_json);
std::string run_mellin(const std::string& request_json);
std::string run_bounds(const std::string& request_json);
// CSV rendering of the bounds table (header + one row per level)
std::string run_bounds_csv(const std::string& request_json);

}  // namespace ptw
