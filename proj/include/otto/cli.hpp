#pragma once

// Command-line front end: analyze | sweep | boundaries | optimize | table1,
// plus replay of a run from its provenance block.

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "otto/optimize.hpp"

namespace otto::cli {

// Raised for invalid command lines; the message names the offending flag.
// Exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by parse() for --help; what() holds the help text. Exit status 0.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Either reduced (jz, r1, r2) or raw seven-parameter input for one endpoint.
struct EndpointInput {
  std::optional<double> jz, r1, r2;
  std::optional<double> b1, b2, jx, jy, dz, gz;
};

struct RunConfig {
  std::string command;
  // Every option that was set, by flag name without dashes; echoed in the
  // provenance block so the run can be replayed.
  std::map<std::string, std::string> given;

  std::optional<double> tc, th;
  std::vector<double> th_list;  // table1
  double zero_tol = kDefaultZeroTol;
  double refine_tol = kDefaultRefineTol;
  std::string output;
  std::string format;

  EndpointInput shared, initial, final;

  std::string family;
  std::optional<double> x_min, x_max, y_min, y_max;
  std::size_t n = kDefaultResolution;
  std::size_t grid = kDefaultResolution;
  std::size_t samples = kDefaultBoundarySamples;
  bool maximize = false;
  bool no_mirror = false;
  bool reverse = false;
};

// Parses argv without the program name. Config-file entries (--config)
// fill only flags that are absent from the command line.
RunConfig parse(std::vector<std::string> args);

// Per-command required fields and ranges. Throws UsageError.
void validate(const RunConfig& config);

// Resolved inputs, as used by run().
Spectrum resolve_endpoint(const RunConfig& config, bool final_endpoint);
ControlPlane resolve_plane(const RunConfig& config);
Window resolve_window(const RunConfig& config);

// Executes a validated config. Returns the process exit status: 0 on
// success, 1 on a domain error (its name is printed to err).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Rebuilds the argument list stored in a provenance block.
std::vector<std::string> replay_args(const nlohmann::ordered_json& provenance);

// Full entry point used by the executable: parse, validate, run. Handles
// the replay subcommand and OTTO_SPIN_THREADS.
int main_entry(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace otto::cli
