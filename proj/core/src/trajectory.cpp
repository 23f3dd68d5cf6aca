#include "wm/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wm/numfmt.hpp"

namespace wm {

namespace {

constexpr std::string_view kAbsent = "-";

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = text.find(sep, pos);
    out.push_back(text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

std::optional<std::string> optional_field(std::string_view field) {
  if (field == kAbsent) return std::nullopt;
  return std::string(field);
}

double real_field(std::string_view token, const char* name) {
  try {
    return parse_real(token);
  } catch (const std::invalid_argument&) {
    throw ParseError("", std::string("bad ") + name + " \"" + std::string(token) + "\"");
  }
}

}  // namespace

CursorMode parse_mode(std::string_view text) {
  if (text == "surface") return CursorMode::OnSurface;
  if (text == "void") return CursorMode::InVoid;
  if (text == "panel") return CursorMode::OnPanel;
  throw ParseError("", "unknown mode \"" + std::string(text) + "\"");
}

std::string format_sample(const TrajectorySample& s) {
  std::string out;
  out.reserve(160);
  out += std::to_string(s.t);
  out += '\t';
  out += to_string(s.mode);
  for (double v : {s.position.x, s.position.y, s.position.z, s.depth, s.yaw, s.pitch}) {
    out += '\t';
    out += format_real(v);
  }
  out += '\t';
  out += s.hovered ? *s.hovered : std::string(kAbsent);
  out += '\t';
  if (s.selection.empty()) {
    out += kAbsent;
  } else {
    for (std::size_t i = 0; i < s.selection.size(); ++i) {
      if (i > 0) out += ',';
      out += s.selection[i];
    }
  }
  out += '\t';
  out += s.action ? *s.action : std::string(kAbsent);
  return out;
}

TrajectorySample parse_sample(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = split(line, '\t');
  if (f.size() != 11) {
    throw ParseError("", "expected 11 tab-separated fields, got " + std::to_string(f.size()));
  }
  TrajectorySample s;
  try {
    s.t = parse_integer(f[0]);
  } catch (const std::invalid_argument&) {
    throw ParseError("", "bad timestamp \"" + std::string(f[0]) + "\"");
  }
  s.mode = parse_mode(f[1]);
  s.position = {real_field(f[2], "x"), real_field(f[3], "y"), real_field(f[4], "z")};
  s.depth = real_field(f[5], "depth");
  s.yaw = real_field(f[6], "yaw");
  s.pitch = real_field(f[7], "pitch");
  s.hovered = optional_field(f[8]);
  if (f[9] != kAbsent) {
    for (std::string_view id : split(f[9], ',')) s.selection.emplace_back(id);
  }
  s.action = optional_field(f[10]);
  return s;
}

std::string format_log(std::span<const TrajectorySample> samples) {
  std::string out;
  for (const TrajectorySample& s : samples) {
    out += format_sample(s);
    out += '\n';
  }
  return out;
}

std::vector<TrajectorySample> parse_log(std::string_view text) {
  std::vector<TrajectorySample> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.empty() || line == "\r") continue;
    try {
      out.push_back(parse_sample(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no), e.what());
    }
  }
  return out;
}

Metrics compute_metrics(std::span<const TrajectorySample> samples) {
  Metrics m;
  if (samples.empty()) return m;

  for (std::size_t i = 1; i < samples.size(); ++i) {
    const TrajectorySample& a = samples[i - 1];
    const TrajectorySample& b = samples[i];
    m.path_length += distance(a.position, b.position);
    if (a.mode != b.mode) ++m.mode_transitions;
    m.max_depth_jump = std::max(m.max_depth_jump, std::abs(b.depth - a.depth));
  }

  const long long span = samples.back().t - samples.front().t;
  if (span > 0) {
    long long on_surface = 0;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      if (samples[i].mode == CursorMode::OnSurface) on_surface += samples[i + 1].t - samples[i].t;
    }
    m.surface_time_fraction = static_cast<double>(on_surface) / static_cast<double>(span);
  } else {
    const auto count = std::count_if(samples.begin(), samples.end(),
                                     [](const TrajectorySample& s) { return s.mode == CursorMode::OnSurface; });
    m.surface_time_fraction = static_cast<double>(count) / static_cast<double>(samples.size());
  }
  return m;
}

std::string format_metrics(const Metrics& m) {
  std::string out;
  out += "path_length " + format_real(m.path_length) + '\n';
  out += "mode_transitions " + std::to_string(m.mode_transitions) + '\n';
  out += "max_depth_jump " + format_real(m.max_depth_jump) + '\n';
  out += "surface_time_fraction " + format_real(m.surface_time_fraction) + '\n';
  return out;
}

}  // namespace wm
