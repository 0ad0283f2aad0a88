#pragma once

// Command-line front end: parse, enum, derive, transform, equiv, nonempty.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rrw::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,    // not equal, or word not derivable
  kInputError = 2,  // usage, parse, validation, mode or kind error
  kIncomplete = 3,  // a budget or the workspace cut the search short
};

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<std::string> mode;
  std::optional<std::string> mode_b;
  std::size_t max_len = 8;
  std::optional<std::size_t> workspace;  // default 2 * max_len + 4
  std::size_t step_budget = 10000000;
  std::size_t form_budget = 1000000;
  std::string output;
  std::string construction;
  std::optional<unsigned> k;
  bool compact_erasing = false;
  bool normalized = false;
  std::string word;
  bool trace = false;
  bool json = false;
  bool timing = false;
  bool reference = false;

  std::size_t effective_workspace() const { return workspace.value_or(2 * max_len + 4); }
};

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        bool color = false);

/// Executes an already parsed configuration.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err, bool color = false);

}  // namespace rrw::cli
