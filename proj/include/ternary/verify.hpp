#pragma once

/* The verification tasks behind `ternary verify`: each desk-checkable
 * claim runs as a named task producing a machine-readable report. */

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"
#include "ternary/correspond.hpp"

namespace ternary {

enum class VerifyStatus { verified, counterexample, inconclusive };

std::string to_string(VerifyStatus s);

struct VerificationReport {
  std::string task;
  nlohmann::json parameters;
  VerifyStatus status = VerifyStatus::verified;
  nlohmann::json details;  // per-case records; counterexamples carry inputs
  std::int64_t runtime_ms = 0;

  nlohmann::json to_json() const;
  static VerificationReport from_json(const nlohmann::json& doc);
};

struct VerifyOptions {
  Int nmax = -1;      // -1 = task default
  Int kmax = -1;
  Int bound = -1;
  Int n = -1;
  Int deltaratio = -1;
  Int samples = -1;
  Int count = -1;
  std::string family = "a";
  std::uint64_t seed = 0;
  int threads = 1;
  std::string cache_dir;  // empty = no cache
};

const std::vector<std::string>& verification_task_names();

// Runs one task; throws std::invalid_argument for unknown tasks or bad
// parameters.
VerificationReport run_verification(const std::string& task, const VerifyOptions& options);

// Shared with tests: multipliers m with n*m^2 <= bound whose prime factors
// are all 1 mod 4 (the Jones-Pall family; m = 1 included).
std::vector<Int> jones_pall_multipliers(Int n, Int bound);

// Class-table access honoring the optional cache directory.
ClassTable table_for(Int delta, const VerifyOptions& options);

}  // namespace ternary
