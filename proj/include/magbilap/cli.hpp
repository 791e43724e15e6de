#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace magbilap {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes beyond 0 (success): 1 verify found a failing check, 2 check found
// the hypotheses not satisfied or inconclusive, 64 malformed input or usage,
// 65 graph validation failure, 66 unreadable input file, 69 horizon, margin or
// capacity limits, 70 structural mismatch or internal error.
enum ExitCode : int {
  kExitOk = 0,
  kExitChecksFailed = 1,
  kExitNotSatisfied = 2,
  kExitUsage = 64,
  kExitData = 65,
  kExitNoInput = 66,
  kExitUnavailable = 69,
  kExitSoftware = 70,
};

struct InputDigest {
  std::string path;
  std::string sha256;
};

// Self-description embedded in every report. The timestamp is omitted unless
// requested, so equal manifests give byte-identical reports.
struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::vector<InputDigest> inputs;
  std::string timestamp;

  nlohmann::json to_json() const;
};

std::string sha256_hex(const std::string& bytes);

// Runs the command line; data goes to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace magbilap
