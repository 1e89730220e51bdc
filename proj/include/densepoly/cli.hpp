#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "densepoly/tangle.hpp"

namespace densepoly::cli {

// Parsed command line. Optionals are flags the user may omit; each
// subcommand validates the combination it needs and throws
// std::invalid_argument (exit code 2) on missing or inconsistent flags.
struct RunConfig {
  std::string command;

  std::optional<int> N;
  std::optional<int> Nmin;
  std::optional<int> Nmax;
  std::optional<int> r;
  std::optional<int> s;
  std::optional<int> M;          // qcat index
  std::optional<int> rho_prime;  // second projector index, boundary checks
  std::string rho_parity;        // "even" | "odd" | ""

  std::vector<double> us;  // --u comma list, radians
  double xi = kDefaultXi;
  double lambda = kLambdaCritical;  // boundary subcommand only
  std::string kind = "plain";       // qcat: "plain" | "primed"

  std::optional<int> order;
  std::optional<double> tol;

  std::string out_path;  // empty means stdout
  std::string format;    // "" | "json" | "csv"
  int jobs = 1;

  std::string matrix_out;      // optional operator export path
  bool matrix_binary = false;  // raw column-major float64 instead of JSON
};

// Runs the subcommand and writes its report to `out`. Returns the process
// exit code: 0 when every check passed, 1 when a check failed. Configuration
// problems are reported by throwing std::invalid_argument.
int dispatch(const RunConfig& config, std::ostream& out);

}  // namespace densepoly::cli
