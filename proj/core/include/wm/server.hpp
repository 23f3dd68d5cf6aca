#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wm/config.hpp"
#include "wm/scene.hpp"
#include "wm/session.hpp"

namespace wm {

/// The session protocol for one client, independent of the transport.
///
/// client -> engine: `HELLO`, `EVT <trace line>`, `BYE`
/// engine -> client: `SCENE <single-line scene document>`,
///                   `STATE <trajectory sample>`, `ERR <message>`
class ProtocolSession {
 public:
  ProtocolSession(const Scene& scene, const EngineConfig& config);

  struct Reply {
    std::vector<std::string> lines;
    bool close = false;
  };

  Reply handle(std::string_view message);

  const Session& session() const { return session_; }

 private:
  Session session_;
  std::optional<long long> last_t_;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  unsigned short port = 0;  // 0 picks a free port
  /// Speak WebSocket (one protocol line per text frame) instead of
  /// newline-delimited TCP.
  bool websocket = false;
  /// Return after the first client disconnects.
  bool once = false;
  /// Called with the bound port once the socket listens.
  std::function<void(unsigned short)> on_listening;
};

/// Accepts clients one at a time; each gets a fresh session over a copy of
/// `scene`. A reader feeds an ordered queue consumed by a dedicated engine
/// thread, so events are processed strictly in arrival order.
void serve(const Scene& scene, const EngineConfig& config, const ServeOptions& options);

}  // namespace wm
