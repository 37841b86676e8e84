#ifndef FQM_CLI_HPP
#define FQM_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fqm/report.hpp"

namespace fqm {

/// Everything a run depends on. Serializing it and running the result
/// reproduces the run.
struct RunConfig {
  std::string command;  // prime, lfunc, moment, verify, constants, report
  std::string target;   // e.g. "second" for moment, "fe" for verify, "dm" for constants
  std::uint32_t p = 0;
  int e = 1;
  int degQ = 0;
  int deg_max = 0;  // last degree of a report sweep
  std::string Q;    // explicit modulus; otherwise chosen from (degQ, seed)
  int k = 0;
  std::optional<int> l;
  std::uint64_t j = 1;
  std::uint64_t seed = 0;
  bool decompose = false;
  int max_m = 8;
  bool exact = true;
  std::optional<double> tolerance;
  unsigned workers = 0;  // 0 = FQM_WORKERS, then hardware concurrency
  std::string format = "json";
  std::string output;  // empty = stdout

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitVerification = 2 };

json config_to_json(const RunConfig& c);
/// Throws std::invalid_argument on missing or mistyped fields.
RunConfig config_from_json(const json& j);

/// Parses argv-style arguments (without the program name). Throws
/// std::invalid_argument on usage errors. A help request returns a config
/// with an empty command and stores the help text in *help when given.
RunConfig parse_args(const std::vector<std::string>& args, std::string* help = nullptr);

/// Runs one configuration, writing the artifact to cfg.output or out.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args + run with the exit-code contract: 0 success, 2 verification
/// failure, 1 usage or resource error.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fqm

#endif  // FQM_CLI_HPP
