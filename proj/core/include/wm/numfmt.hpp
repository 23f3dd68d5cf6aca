#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wm {

/// Text-format parse failure. `where` is a field path ("nodes[2].id") or a
/// line reference ("line 4"); what() carries "where: message".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& message)
      : std::runtime_error(where.empty() ? message : where + ": " + message), where_(std::move(where)) {}

  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// 17 significant digits ("%.17g"): every double round-trips exactly.
/// Negative zero is written as "0".
std::string format_real(double value);

/// Strict full-token parsers; throw std::invalid_argument on junk.
double parse_real(std::string_view token);
long long parse_integer(std::string_view token);

}  // namespace wm
