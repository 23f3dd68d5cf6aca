#include "wm/trace.hpp"

#include <sstream>
#include <stdexcept>

namespace wm {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

long long integer_field(std::string_view token, const char* what) {
  try {
    return parse_integer(token);
  } catch (const std::invalid_argument&) {
    throw ParseError("", std::string("bad ") + what + " \"" + std::string(token) + "\"");
  }
}

double real_field(std::string_view token) {
  try {
    return parse_real(token);
  } catch (const std::invalid_argument&) {
    throw ParseError("", "bad number \"" + std::string(token) + "\"");
  }
}

void expect_arity(const std::vector<std::string_view>& f, std::size_t n, std::string_view kind) {
  if (f.size() != n) {
    throw ParseError("", std::string(kind) + " takes " + std::to_string(n - 2) + " argument(s), got " +
                             std::to_string(f.size() - 2));
  }
}

const char* button_name(MouseButton b) {
  switch (b) {
    case MouseButton::Left:
      return "LEFT";
    case MouseButton::Right:
      return "RIGHT";
    case MouseButton::Middle:
      return "MIDDLE";
  }
  return "?";
}

}  // namespace

std::optional<InputEvent> parse_trace_line(std::string_view line) {
  const auto fields = split_ws(line);
  if (fields.empty() || fields[0].front() == '#') {
    return std::nullopt;
  }
  if (fields.size() < 2) {
    throw ParseError("", "expected \"<t_ms> <KIND> ...\"");
  }
  InputEvent event;
  event.t = integer_field(fields[0], "timestamp");
  if (event.t < 0) {
    throw ParseError("", "negative timestamp " + std::to_string(event.t));
  }
  const std::string_view kind = fields[1];
  if (kind == "DELTA") {
    expect_arity(fields, 4, kind);
    event.kind = DeltaEvent{integer_field(fields[2], "dx"), integer_field(fields[3], "dy")};
  } else if (kind == "BTN") {
    expect_arity(fields, 4, kind);
    ButtonEvent b;
    if (fields[2] == "LEFT") {
      b.button = MouseButton::Left;
    } else if (fields[2] == "RIGHT") {
      b.button = MouseButton::Right;
    } else if (fields[2] == "MIDDLE") {
      b.button = MouseButton::Middle;
    } else {
      throw ParseError("", "unknown button \"" + std::string(fields[2]) + "\"");
    }
    if (fields[3] == "DOWN") {
      b.pressed = true;
    } else if (fields[3] == "UP") {
      b.pressed = false;
    } else {
      throw ParseError("", "expected DOWN or UP, got \"" + std::string(fields[3]) + "\"");
    }
    event.kind = b;
  } else if (kind == "SCROLL") {
    expect_arity(fields, 3, kind);
    event.kind = ScrollEvent{integer_field(fields[2], "tick count")};
  } else if (kind == "VIEW") {
    expect_arity(fields, 11, kind);
    double v[9];
    for (int i = 0; i < 9; ++i) v[i] = real_field(fields[2 + i]);
    ViewPose pose{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8]}};
    try {
      pose.validate();
    } catch (const GeometryError& e) {
      throw ParseError("", std::string("invalid view pose: ") + e.what());
    }
    event.kind = ViewEvent{pose};
  } else {
    throw ParseError("", "unknown event kind \"" + std::string(kind) + "\"");
  }
  return event;
}

Trace parse_trace(std::string_view text) {
  Trace trace;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    const std::string where = "line " + std::to_string(line_no);
    std::optional<InputEvent> event;
    try {
      event = parse_trace_line(line);
    } catch (const ParseError& e) {
      throw ParseError(where, e.what());
    }
    if (!event) continue;
    if (!trace.empty() && event->t < trace.back().t) {
      throw ParseError(where, "timestamp " + std::to_string(event->t) + " is earlier than the previous " +
                                  std::to_string(trace.back().t));
    }
    trace.push_back(std::move(*event));
  }
  return trace;
}

std::string format_event(const InputEvent& event) {
  std::ostringstream out;
  out << event.t << ' ';
  std::visit(
      [&out](const auto& e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, DeltaEvent>) {
          out << "DELTA " << e.dx << ' ' << e.dy;
        } else if constexpr (std::is_same_v<E, ButtonEvent>) {
          out << "BTN " << button_name(e.button) << (e.pressed ? " DOWN" : " UP");
        } else if constexpr (std::is_same_v<E, ScrollEvent>) {
          out << "SCROLL " << e.ticks;
        } else {
          out << "VIEW";
          for (const Vec3* v : {&e.pose.origin, &e.pose.forward, &e.pose.up}) {
            out << ' ' << format_real(v->x) << ' ' << format_real(v->y) << ' ' << format_real(v->z);
          }
        }
      },
      event.kind);
  return out.str();
}

std::string format_trace(const Trace& trace) {
  std::string out;
  for (const InputEvent& e : trace) {
    out += format_event(e);
    out += '\n';
  }
  return out;
}

}  // namespace wm
