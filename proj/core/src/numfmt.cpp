#include "wm/numfmt.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace wm {

std::string format_real(double value) {
  // Negative zero prints as "0": JSON readers parse "-0" as the integer 0.
  if (value == 0.0) {
    value = 0.0;
  }
  char buf[40];
  const int n = std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

double parse_real(std::string_view token) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (!token.empty() && *begin == '+') {
    ++begin;
  }
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (token.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw std::invalid_argument("expected a finite real number, got \"" + std::string(token) + "\"");
  }
  return value;
}

long long parse_integer(std::string_view token) {
  long long value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (!token.empty() && *begin == '+') {
    ++begin;
  }
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (token.empty() || ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("expected an integer, got \"" + std::string(token) + "\"");
  }
  return value;
}

}  // namespace wm
