#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "logfirm/json_io.hpp"

namespace logfirm {

enum class CommandStatus { Ok, Infeasible, Error };

struct CommandResult {
    CommandStatus status = CommandStatus::Ok;
    Json payload;
    std::vector<std::string> diagnostics;
    /// Raw output (help text, SVG) printed instead of the payload.
    std::optional<std::string> text;
    /// 0 ok, 1 negative answer, 2 input error, 3 resource limit.
    int exit_code = 0;
    /// Compact single-line JSON.
    bool compact = false;
};

/// args excludes the program name.
CommandResult dispatch(const std::vector<std::string>& args);
/// Runs dispatch and prints; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace logfirm
