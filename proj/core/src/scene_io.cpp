#include "wm/scene_io.hpp"

#include <algorithm>
#include <initializer_list>

#include "json.hpp"

namespace wm {

namespace {

using json = nlohmann::json;

std::string child(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string item(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

void expect_object(const json& v, const std::string& path) {
  if (!v.is_object()) {
    throw ParseError(path, "expected an object");
  }
}

void expect_array(const json& v, const std::string& path) {
  if (!v.is_array()) {
    throw ParseError(path, "expected an array");
  }
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  expect_object(obj, path);
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ParseError(child(path, key), "unknown field");
    }
  }
}

const json& require(const json& obj, const std::string& path, std::string_view key) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(child(path, key), "missing required field");
  }
  return *it;
}

const json* optional_field(const json& obj, std::string_view key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_real(const json& v, const std::string& path) {
  if (!v.is_number()) {
    throw ParseError(path, "expected a number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    throw ParseError(path, "expected a finite number");
  }
  return d;
}

long long as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) {
    throw ParseError(path, "expected an integer");
  }
  return v.get<long long>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) {
    throw ParseError(path, "expected true or false");
  }
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) {
    throw ParseError(path, "expected a string");
  }
  return v.get<std::string>();
}

Vec3 as_vec3(const json& v, const std::string& path) {
  expect_array(v, path);
  if (v.size() != 3) {
    throw ParseError(path, "expected 3 numbers");
  }
  return {as_real(v[0], item(path, 0)), as_real(v[1], item(path, 1)), as_real(v[2], item(path, 2))};
}

std::vector<Vec3> as_vec3_list(const json& v, const std::string& path) {
  expect_array(v, path);
  std::vector<Vec3> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_vec3(v[i], item(path, i)));
  }
  return out;
}

ViewPose parse_view(const json& v, const std::string& path) {
  check_keys(v, path, {"position", "forward", "up"});
  ViewPose view;
  view.origin = as_vec3(require(v, path, "position"), child(path, "position"));
  view.forward = as_vec3(require(v, path, "forward"), child(path, "forward"));
  view.up = as_vec3(require(v, path, "up"), child(path, "up"));
  try {
    view.validate();
  } catch (const GeometryError& e) {
    throw ParseError(path, e.what());
  }
  return view;
}

Transform parse_transform(const json& v, const std::string& path) {
  check_keys(v, path, {"t", "r", "s"});
  Transform xf;
  if (const json* t = optional_field(v, "t")) {
    xf.translation = as_vec3(*t, child(path, "t"));
  }
  if (const json* r = optional_field(v, "r")) {
    const std::string rp = child(path, "r");
    expect_array(*r, rp);
    if (r->size() != 4) {
      throw ParseError(rp, "expected a quaternion [x, y, z, w]");
    }
    xf.rotation = {as_real((*r)[0], item(rp, 0)), as_real((*r)[1], item(rp, 1)), as_real((*r)[2], item(rp, 2)),
                   as_real((*r)[3], item(rp, 3))};
  }
  if (const json* s = optional_field(v, "s")) {
    xf.scale = as_vec3(*s, child(path, "s"));
  }
  try {
    xf.validate();
  } catch (const GeometryError& e) {
    throw ParseError(path, e.what());
  }
  return xf;
}

TriMesh parse_mesh(const json& v, const std::string& path) {
  check_keys(v, path, {"vertices", "triangles", "normals"});
  TriMesh mesh;
  mesh.vertices = as_vec3_list(require(v, path, "vertices"), child(path, "vertices"));
  const std::string tp = child(path, "triangles");
  const json& tris = require(v, path, "triangles");
  expect_array(tris, tp);
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const std::string ip = item(tp, i);
    expect_array(tris[i], ip);
    if (tris[i].size() != 3) {
      throw ParseError(ip, "expected 3 vertex indices");
    }
    Triangle tri{};
    for (std::size_t k = 0; k < 3; ++k) {
      const long long idx = as_int(tris[i][k], item(ip, k));
      if (idx < 0 || static_cast<std::size_t>(idx) >= mesh.vertices.size()) {
        throw ParseError(item(ip, k), "vertex index " + std::to_string(idx) + " out of range");
      }
      tri[k] = static_cast<std::uint32_t>(idx);
    }
    mesh.triangles.push_back(tri);
  }
  if (const json* normals = optional_field(v, "normals")) {
    mesh.vertex_normals = as_vec3_list(*normals, child(path, "normals"));
  }
  try {
    mesh.validate();
  } catch (const GeometryError& e) {
    throw ParseError(path, e.what());
  }
  return mesh;
}

PanelSpec parse_panel(const json& v, const std::string& path) {
  check_keys(v, path, {"w", "h", "px", "py"});
  PanelSpec p;
  p.width = as_real(require(v, path, "w"), child(path, "w"));
  p.height = as_real(require(v, path, "h"), child(path, "h"));
  const long long px = as_int(require(v, path, "px"), child(path, "px"));
  const long long py = as_int(require(v, path, "py"), child(path, "py"));
  if (p.width <= 0.0) throw ParseError(child(path, "w"), "must be positive");
  if (p.height <= 0.0) throw ParseError(child(path, "h"), "must be positive");
  if (px <= 0 || px > 1'000'000) throw ParseError(child(path, "px"), "must be a positive pixel count");
  if (py <= 0 || py > 1'000'000) throw ParseError(child(path, "py"), "must be a positive pixel count");
  p.resolution_x = static_cast<int>(px);
  p.resolution_y = static_cast<int>(py);
  return p;
}

Geometry parse_geometry(const json& v, const std::string& path) {
  check_keys(v, path, {"mesh", "hull_points", "panel"});
  if (v.size() != 1) {
    throw ParseError(path, "expected exactly one of mesh, hull_points, panel");
  }
  if (const json* mesh = optional_field(v, "mesh")) {
    return parse_mesh(*mesh, child(path, "mesh"));
  }
  if (const json* pts = optional_field(v, "hull_points")) {
    const std::string hp = child(path, "hull_points");
    try {
      return HullGeometry::from_points(as_vec3_list(*pts, hp));
    } catch (const GeometryError& e) {
      throw ParseError(hp, e.what());
    }
  }
  return parse_panel(require(v, path, "panel"), child(path, "panel"));
}

LabelActions parse_label_actions(const json& v, const std::string& path) {
  expect_object(v, path);
  LabelActions table;
  for (const auto& [cls, items] : v.items()) {
    const std::string cp = child(path, cls);
    expect_array(items, cp);
    std::vector<MenuItem>& out = table[cls];
    for (std::size_t i = 0; i < items.size(); ++i) {
      const std::string ip = item(cp, i);
      check_keys(items[i], ip, {"label", "action"});
      out.push_back({as_string(require(items[i], ip, "label"), child(ip, "label")),
                     as_string(require(items[i], ip, "action"), child(ip, "action"))});
    }
  }
  return table;
}

ConfigOverrides parse_config_object(const json& v, const std::string& path) {
  check_keys(v, path,
             {"angular_gain", "pitch_limit", "panel_gain", "idw_power", "idw_epsilon", "k_nearest", "default_depth",
              "silhouette_samples", "scroll_depth_factor", "depth_smoothing", "snap_distance", "label_actions"});
  ConfigOverrides c;
  auto real = [&](const char* key, std::optional<double>& dst) {
    if (const json* f = optional_field(v, key)) dst = as_real(*f, child(path, key));
  };
  auto integer = [&](const char* key, std::optional<int>& dst) {
    if (const json* f = optional_field(v, key)) {
      const long long x = as_int(*f, child(path, key));
      if (x <= 0 || x > 1'000'000) throw ParseError(child(path, key), "must be a positive integer");
      dst = static_cast<int>(x);
    }
  };
  real("angular_gain", c.angular_gain);
  real("pitch_limit", c.pitch_limit);
  real("panel_gain", c.panel_gain);
  real("idw_power", c.idw_power);
  real("idw_epsilon", c.idw_epsilon);
  integer("k_nearest", c.k_nearest);
  real("default_depth", c.default_depth);
  integer("silhouette_samples", c.silhouette_samples);
  real("scroll_depth_factor", c.scroll_depth_factor);
  real("depth_smoothing", c.depth_smoothing);
  real("snap_distance", c.snap_distance);
  if (const json* f = optional_field(v, "label_actions")) {
    c.label_actions = parse_label_actions(*f, child(path, "label_actions"));
  }
  try {
    c.applied_to(EngineConfig{}).validate();
  } catch (const ConfigError& e) {
    throw ParseError(path, e.what());
  }
  return c;
}

SceneNode parse_node(const json& v, const std::string& path) {
  check_keys(v, path, {"id", "label", "origin", "transform", "geometry", "interactable", "dynamic"});
  SceneNode node;
  node.id = as_string(require(v, path, "id"), child(path, "id"));

  const std::string lp = child(path, "label");
  const json& label = require(v, path, "label");
  check_keys(label, lp, {"class", "confidence"});
  node.label.class_name = as_string(require(label, lp, "class"), child(lp, "class"));
  if (const json* conf = optional_field(label, "confidence")) {
    node.label.confidence = as_real(*conf, child(lp, "confidence"));
  }

  const std::string origin = as_string(require(v, path, "origin"), child(path, "origin"));
  if (origin == "real") {
    node.origin = OriginKind::Real;
  } else if (origin == "virtual") {
    node.origin = OriginKind::Virtual;
  } else {
    throw ParseError(child(path, "origin"), "expected \"real\" or \"virtual\", got \"" + origin + "\"");
  }

  if (const json* xf = optional_field(v, "transform")) {
    node.transform = parse_transform(*xf, child(path, "transform"));
  }
  node.geometry = parse_geometry(require(v, path, "geometry"), child(path, "geometry"));
  if (const json* f = optional_field(v, "interactable")) {
    node.interactable = as_bool(*f, child(path, "interactable"));
  }
  if (const json* f = optional_field(v, "dynamic")) {
    node.dynamic = as_bool(*f, child(path, "dynamic"));
  }
  return node;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line number.
    const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n');
    throw ParseError("line " + std::to_string(line), "malformed JSON");
  }
}

// ---------------------------------------------------------------------------
// Writer

class Writer {
 public:
  explicit Writer(JsonStyle style) : pretty_(style == JsonStyle::Pretty) {}

  void newline(int depth) {
    if (pretty_) {
      out_ += '\n';
      out_.append(static_cast<std::size_t>(depth) * 2, ' ');
    }
  }
  void raw(std::string_view s) { out_ += s; }
  void key(std::string_view k) {
    string(k);
    out_ += pretty_ ? ": " : ":";
  }
  void sep() { out_ += pretty_ ? ", " : ","; }
  void string(std::string_view s) { out_ += json(std::string(s)).dump(); }
  void real(double v) { out_ += format_real(v); }
  void vec3(const Vec3& v) {
    out_ += '[';
    real(v.x);
    sep();
    real(v.y);
    sep();
    real(v.z);
    out_ += ']';
  }
  void vec3_list(const std::vector<Vec3>& list) {
    out_ += '[';
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i) sep();
      vec3(list[i]);
    }
    out_ += ']';
  }

  std::string take() { return std::move(out_); }

 private:
  bool pretty_;
  std::string out_;
};

void write_config(Writer& w, const ConfigOverrides& c) {
  w.raw("{");
  bool first = true;
  auto field = [&](const char* name) {
    if (!first) w.sep();
    first = false;
    w.key(name);
  };
  auto real = [&](const char* name, const std::optional<double>& v) {
    if (v) {
      field(name);
      w.real(*v);
    }
  };
  auto integer = [&](const char* name, const std::optional<int>& v) {
    if (v) {
      field(name);
      w.raw(std::to_string(*v));
    }
  };
  real("angular_gain", c.angular_gain);
  real("pitch_limit", c.pitch_limit);
  real("panel_gain", c.panel_gain);
  real("idw_power", c.idw_power);
  real("idw_epsilon", c.idw_epsilon);
  integer("k_nearest", c.k_nearest);
  real("default_depth", c.default_depth);
  integer("silhouette_samples", c.silhouette_samples);
  real("scroll_depth_factor", c.scroll_depth_factor);
  real("depth_smoothing", c.depth_smoothing);
  real("snap_distance", c.snap_distance);
  if (c.label_actions) {
    field("label_actions");
    w.raw("{");
    bool first_class = true;
    for (const auto& [cls, items] : *c.label_actions) {
      if (!first_class) w.sep();
      first_class = false;
      w.key(cls);
      w.raw("[");
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) w.sep();
        w.raw("{");
        w.key("label");
        w.string(items[i].label);
        w.sep();
        w.key("action");
        w.string(items[i].action_id);
        w.raw("}");
      }
      w.raw("]");
    }
    w.raw("}");
  }
  w.raw("}");
}

void write_geometry(Writer& w, const Geometry& g) {
  w.raw("{");
  if (const auto* mesh = std::get_if<TriMesh>(&g)) {
    w.key("mesh");
    w.raw("{");
    w.key("vertices");
    w.vec3_list(mesh->vertices);
    w.sep();
    w.key("triangles");
    w.raw("[");
    for (std::size_t i = 0; i < mesh->triangles.size(); ++i) {
      if (i) w.sep();
      const Triangle& t = mesh->triangles[i];
      w.raw("[" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "]");
    }
    w.raw("]");
    if (mesh->has_normals()) {
      w.sep();
      w.key("normals");
      w.vec3_list(mesh->vertex_normals);
    }
    w.raw("}");
  } else if (const auto* hull = std::get_if<HullGeometry>(&g)) {
    w.key("hull_points");
    w.vec3_list(hull->points);
  } else {
    const PanelSpec& p = std::get<PanelSpec>(g);
    w.key("panel");
    w.raw("{");
    w.key("w");
    w.real(p.width);
    w.sep();
    w.key("h");
    w.real(p.height);
    w.sep();
    w.key("px");
    w.raw(std::to_string(p.resolution_x));
    w.sep();
    w.key("py");
    w.raw(std::to_string(p.resolution_y));
    w.raw("}");
  }
  w.raw("}");
}

void write_node(Writer& w, const SceneNode& node, int depth) {
  w.raw("{");
  w.newline(depth + 1);
  w.key("id");
  w.string(node.id);
  w.raw(",");
  w.newline(depth + 1);
  w.key("label");
  w.raw("{");
  w.key("class");
  w.string(node.label.class_name);
  w.sep();
  w.key("confidence");
  w.real(node.label.confidence);
  w.raw("},");
  w.newline(depth + 1);
  w.key("origin");
  w.string(node.origin == OriginKind::Real ? "real" : "virtual");
  w.raw(",");
  w.newline(depth + 1);
  w.key("transform");
  w.raw("{");
  w.key("t");
  w.vec3(node.transform.translation);
  w.sep();
  w.key("r");
  const Quat& q = node.transform.rotation;
  w.raw("[");
  w.real(q.x);
  w.sep();
  w.real(q.y);
  w.sep();
  w.real(q.z);
  w.sep();
  w.real(q.w);
  w.raw("]");
  w.sep();
  w.key("s");
  w.vec3(node.transform.scale);
  w.raw("},");
  w.newline(depth + 1);
  w.key("geometry");
  write_geometry(w, node.geometry);
  w.raw(",");
  w.newline(depth + 1);
  w.key("interactable");
  w.raw(node.interactable ? "true" : "false");
  w.raw(",");
  w.newline(depth + 1);
  w.key("dynamic");
  w.raw(node.dynamic ? "true" : "false");
  w.newline(depth);
  w.raw("}");
}

}  // namespace

Scene parse_scene(std::string_view text) {
  const json doc = parse_json(text);
  check_keys(doc, "", {"view", "nodes", "config"});
  Scene scene;
  if (const json* view = optional_field(doc, "view")) {
    scene.view = parse_view(*view, "view");
  }
  if (const json* config = optional_field(doc, "config")) {
    scene.config = parse_config_object(*config, "config");
  }
  const json& nodes = require(doc, "", "nodes");
  expect_array(nodes, "nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = item("nodes", i);
    SceneNode node = parse_node(nodes[i], path);
    if (scene.index_of(node.id)) {
      throw ParseError(child(path, "id"), "duplicate node id \"" + node.id + "\"");
    }
    try {
      scene.add_node(std::move(node));
    } catch (const SceneError& e) {
      throw ParseError(path, e.what());
    }
  }
  return scene;
}

std::string serialize_scene(const Scene& scene, JsonStyle style) {
  Writer w(style);
  w.raw("{");
  w.newline(1);
  w.key("view");
  w.raw("{");
  w.key("position");
  w.vec3(scene.view.origin);
  w.sep();
  w.key("forward");
  w.vec3(scene.view.forward);
  w.sep();
  w.key("up");
  w.vec3(scene.view.up);
  w.raw("},");
  if (!scene.config.empty()) {
    w.newline(1);
    w.key("config");
    write_config(w, scene.config);
    w.raw(",");
  }
  w.newline(1);
  w.key("nodes");
  w.raw("[");
  for (std::size_t i = 0; i < scene.size(); ++i) {
    if (i) w.raw(",");
    w.newline(2);
    write_node(w, scene.node(i), 2);
  }
  if (scene.size()) w.newline(1);
  w.raw("]");
  w.newline(0);
  w.raw("}");
  std::string out = w.take();
  if (style == JsonStyle::Pretty) out += '\n';
  return out;
}

ConfigOverrides parse_config(std::string_view text) {
  return parse_config_object(parse_json(text), "config");
}

std::string serialize_config(const ConfigOverrides& config) {
  Writer w(JsonStyle::SingleLine);
  write_config(w, config);
  return w.take() + "\n";
}

}  // namespace wm
