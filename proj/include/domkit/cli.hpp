#pragma once

// Command-line front end. run() is the whole CLI as a pure-ish function so
// tests can drive it; main_entry() wraps it for the binary.
//
// Exit codes: 0 success/validated, 1 mathematical negative (identity fails,
// certificate invalid, no witness, ...), 2 usage or input error.

#include <string>
#include <vector>

namespace domkit::cli {

struct RunResult {
  int exit_code = 0;
  std::string report;
};

RunResult run(const std::vector<std::string>& args);
int main_entry(int argc, char** argv);

}  // namespace domkit::cli
