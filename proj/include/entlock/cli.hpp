#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "entlock/harness.hpp"

namespace entlock {

/// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Everything a run depends on. Zero-valued sizes mean "command default".
struct RunConfig {
  std::string command;     // verify | compute | table
  std::string subcommand;  // e.g. lemma1, esq-flower, locking-gap
  int d = 2;
  int m = 0;
  int samples = -1;  // -1 = command default
  std::uint64_t seed = 0;
  std::vector<int> env_dims;
  int d_out = 0;
  int ext_dim = 0;
  int series = 0;
  int outcomes = 0;
  OptConfig opt;
  std::string state;
  std::vector<int> aside, bside, eside;
  std::string format = "json";
  std::string out;
  int threads = 0;
  bool quick = false;
  std::string group = "zd";
  bool timing = false;
  bool conjugate_pair = false;
  bool haar_basis = false;
  int bins = 20;
  std::vector<int> dims;
};

Json run_config_to_json(const RunConfig& cfg);
/// Missing keys take defaults; unknown keys and bad types throw Error(Parse).
RunConfig run_config_from_json(const Json& j);
/// Applies the --quick caps (samples <= 100, dims <= 3) and validates enums.
RunConfig normalize(RunConfig cfg);

/// Runs a parsed configuration, writing the report to `out`. Returns the exit code.
int run(const RunConfig& cfg, std::ostream& out);

/// Full command line entry point (argv[0] is the program name).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace entlock
