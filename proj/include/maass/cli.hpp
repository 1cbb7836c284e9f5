#pragma once

#include <string>
#include <vector>

#include "maass/specials.hpp"

namespace maass::cli {

// Stable process exit codes.
enum Exit : int { kPass = 0, kCheckFailed = 1, kInputError = 2, kDomainError = 3 };

enum class Command { LSeries, FECheck, Converse, SummationCheck, FixturesExport, FixturesList };
enum class Format { Json, Csv };

struct FormSource {
  std::string fixture;  // fixture name, or empty
  std::string path;     // coefficient file, or empty
  long precision = 0;   // fixture precision; 0 picks a default
  bool given() const { return !fixture.empty() || !path.empty(); }
};

struct BatterySpec {
  std::string kind = "default";  // default | extended | custom
  int count = 10;
  double lo = 0.25, hi = 4.0;
  std::vector<double> shifts;
};

struct RunConfig {
  Command command = Command::LSeries;
  FormSource f, g, gw;
  BatterySpec battery;
  double tol = 0.0;  // 0: operation default
  double tol_gf = 1e-10, tol_mf = 1e-6;
  long dcap = 20;
  bool primitive = false;
  bool include_delta = true;
  std::vector<long> moduli{1};
  std::vector<double> s_values;
  bool classical = false;
  bool integral = true;
  std::vector<std::string> terms{"gf", "mf"};
  std::vector<int> ks{2, 4, 12};
  long nmax = 5;
  long level = 1;
  double phi_lo = 1.0, phi_hi = 2.0;
  std::string output;
  Format format = Format::Json;
};

// Throws InputError when an invariant (positive tolerances, battery count ≥ 1,
// D-cap ≥ 1, …) is violated.
void validate(const RunConfig& c);

// Executes one command; the report goes to c.output (stdout when empty).
int execute(const RunConfig& c);

// Parses argv and executes; maps errors onto the exit codes.
int run(int argc, char** argv);

}  // namespace maass::cli
