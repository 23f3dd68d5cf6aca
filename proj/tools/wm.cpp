// wm: replay traces, compute metrics, validate inputs and serve sessions.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wm/replay.hpp"
#include "wm/scene_io.hpp"
#include "wm/server.hpp"
#include "wm/session.hpp"
#include "wm/trace.hpp"
#include "wm/trajectory.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitInvalid = 2;

// Input that fails validation, as opposed to an environment failure.
struct Invalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

template <class F>
auto validated(const std::string& path, F&& parse) {
  try {
    return parse(read_file(path));
  } catch (const wm::ParseError& e) {
    throw Invalid(path + ": " + e.what());
  } catch (const wm::SceneError& e) {
    throw Invalid(path + ": " + e.what());
  } catch (const wm::ConfigError& e) {
    throw Invalid(path + ": " + e.what());
  } catch (const wm::GeometryError& e) {
    throw Invalid(path + ": " + e.what());
  }
}

wm::Scene load_scene(const std::string& path) {
  return validated(path, [](const std::string& text) { return wm::parse_scene(text); });
}

wm::EngineConfig load_config(const wm::Scene& scene, const std::string& path) {
  if (path.empty()) {
    try {
      return wm::effective_config(scene);
    } catch (const wm::ConfigError& e) {
      throw Invalid(std::string("scene config: ") + e.what());
    }
  }
  return validated(path, [&scene](const std::string& text) {
    const wm::ConfigOverrides extra = wm::parse_config(text);
    return wm::effective_config(scene, &extra);
  });
}

wm::Trace load_trace(const std::string& path) {
  return validated(path, [](const std::string& text) { return wm::parse_trace(text); });
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw std::runtime_error("cannot write " + path);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wm: depth-adaptive 3D cursor engine"};
  app.require_subcommand(1);

  std::string scene_path;
  std::string trace_path;
  std::string config_path;
  std::string out_path;
  std::string log_path;
  std::string host = "127.0.0.1";
  unsigned short port = 0;
  bool websocket = false;
  bool once = false;

  auto* replay = app.add_subcommand("replay", "Replay a trace against a scene and write the trajectory log");
  replay->add_option("--scene", scene_path, "Scene file")->required();
  replay->add_option("--trace", trace_path, "Trace file")->required();
  replay->add_option("--out", out_path, "Log file, - for stdout")->required();
  replay->add_option("--config", config_path, "Config overrides");

  auto* metrics = app.add_subcommand("metrics", "Summarize a trajectory log");
  metrics->add_option("--log", log_path, "Trajectory log")->required();

  auto* serve = app.add_subcommand("serve", "Serve interactive sessions");
  serve->add_option("--scene", scene_path, "Scene file")->required();
  serve->add_option("--port", port, "TCP port, 0 picks one")->required();
  serve->add_option("--config", config_path, "Config overrides");
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_flag("--ws", websocket, "WebSocket transport (for the browser viewer)");
  serve->add_flag("--once", once, "Exit after the first client");

  auto* validate = app.add_subcommand("validate", "Check scene, trace and config files");
  validate->add_option("--scene", scene_path, "Scene file");
  validate->add_option("--trace", trace_path, "Trace file");
  validate->add_option("--config", config_path, "Config overrides");
  validate->callback([&] {
    if (scene_path.empty() && trace_path.empty()) {
      throw CLI::ValidationError("validate", "give --scene and/or --trace");
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*replay) {
      const wm::Scene scene = load_scene(scene_path);
      const wm::EngineConfig config = load_config(scene, config_path);
      const wm::Trace trace = load_trace(trace_path);
      write_output(out_path, wm::format_log(wm::replay(scene, trace, config)));
    } else if (*metrics) {
      const auto samples =
          validated(log_path, [](const std::string& text) { return wm::parse_log(text); });
      std::cout << wm::format_metrics(wm::compute_metrics(samples));
    } else if (*serve) {
      const wm::Scene scene = load_scene(scene_path);
      const wm::EngineConfig config = load_config(scene, config_path);
      wm::ServeOptions options;
      options.host = host;
      options.port = port;
      options.websocket = websocket;
      options.once = once;
      options.on_listening = [&](unsigned short bound) {
        std::cout << "listening on " << host << ':' << bound << (websocket ? " (websocket)" : "") << std::endl;
      };
      wm::serve(scene, config, options);
    } else if (*validate) {
      if (!scene_path.empty()) {
        const wm::Scene scene = load_scene(scene_path);
        load_config(scene, config_path);
        std::cout << scene_path << ": ok, " << scene.size() << " node(s)\n";
      }
      if (!trace_path.empty()) {
        const wm::Trace trace = load_trace(trace_path);
        std::cout << trace_path << ": ok, " << trace.size() << " event(s)\n";
      }
    }
  } catch (const Invalid& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
