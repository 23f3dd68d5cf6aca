#pragma once

#include <string>
#include <string_view>

#include "wm/config.hpp"
#include "wm/numfmt.hpp"
#include "wm/scene.hpp"

namespace wm {

/// Parses a `.wmscene` document. Unknown fields, duplicate ids, missing
/// required fields and malformed geometry raise ParseError whose where()
/// names the field path (or the line for JSON syntax errors).
Scene parse_scene(std::string_view text);

enum class JsonStyle { Pretty, SingleLine };

/// Writes every field explicitly with 17 significant digits.
std::string serialize_scene(const Scene& scene, JsonStyle style = JsonStyle::Pretty);

/// Standalone config file: same schema as a scene's `config` block.
ConfigOverrides parse_config(std::string_view text);
std::string serialize_config(const ConfigOverrides& config);

}  // namespace wm
