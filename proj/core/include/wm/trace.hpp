#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wm/event.hpp"
#include "wm/numfmt.hpp"

namespace wm {

using Trace = std::vector<InputEvent>;

/// Parses one trace line. Blank lines and `#` comments give nullopt.
/// Throws ParseError (where() is empty; callers add the line reference).
std::optional<InputEvent> parse_trace_line(std::string_view line);

/// Parses a whole trace. Errors carry "line N"; timestamps must not
/// decrease.
Trace parse_trace(std::string_view text);

std::string format_event(const InputEvent& event);
std::string format_trace(const Trace& trace);

}  // namespace wm
