#ifndef DGLAKIT_CLI_HPP
#define DGLAKIT_CLI_HPP

#include <string>
#include <vector>

#include "dglakit/io.hpp"

namespace dglakit {

struct CommandOutput {
  /// 0 success, 1 verdict failure, 2 error.
  int exit_code = 0;
  Json report;
  /// What goes to standard output: aligned columns, or the JSON report with --json.
  std::string text;
};

/// `args` excludes the program name. Never throws: errors become exit code 2
/// with an "error" entry in the report.
CommandOutput run_command(const std::vector<std::string>& args);

/// Flattens a report into "key  value" lines with the keys padded to one width.
std::string render_text(const Json& report);

}  // namespace dglakit

#endif  // DGLAKIT_CLI_HPP
