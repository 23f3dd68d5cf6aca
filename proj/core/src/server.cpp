#include "wm/server.hpp"

#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "wm/scene_io.hpp"
#include "wm/trace.hpp"

namespace wm {

namespace asio = boost::asio;
namespace beast = boost::beast;
using tcp = asio::ip::tcp;

ProtocolSession::ProtocolSession(const Scene& scene, const EngineConfig& config) : session_(scene, config) {}

ProtocolSession::Reply ProtocolSession::handle(std::string_view message) {
  while (!message.empty() && (message.back() == '\r' || message.back() == ' ')) message.remove_suffix(1);
  Reply reply;
  try {
    if (message == "HELLO") {
      reply.lines.push_back("SCENE " + serialize_scene(session_.scene(), JsonStyle::SingleLine));
    } else if (message == "BYE") {
      reply.close = true;
    } else if (message.rfind("EVT ", 0) == 0) {
      const auto event = parse_trace_line(message.substr(4));
      if (!event) {
        throw ParseError("EVT", "empty event");
      }
      if (last_t_ && event->t < *last_t_) {
        throw ParseError("EVT", "timestamp " + std::to_string(event->t) + " is earlier than the previous " +
                                    std::to_string(*last_t_));
      }
      last_t_ = event->t;
      reply.lines.push_back("STATE " + format_sample(session_.step(*event)));
    } else {
      throw ParseError("", "unknown message \"" + std::string(message.substr(0, 32)) + "\"");
    }
  } catch (const ParseError& e) {
    reply.lines.push_back(std::string("ERR ") + e.what());
  } catch (const std::exception& e) {
    reply.lines.push_back(std::string("ERR ") + e.what());
  }
  return reply;
}

namespace {

class Inbox {
 public:
  void push(std::optional<std::string> line) {
    {
      std::lock_guard lock(mutex_);
      lines_.push_back(std::move(line));
    }
    ready_.notify_one();
  }

  std::optional<std::string> pop() {
    std::unique_lock lock(mutex_);
    ready_.wait(lock, [this] { return !lines_.empty(); });
    auto line = std::move(lines_.front());
    lines_.pop_front();
    return line;
  }

 private:
  std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<std::optional<std::string>> lines_;
};

// I/O side of one client. All members run on the connection's io_context
// thread; the engine thread only touches the inbox and posts sends.
class Connection {
 public:
  Connection(asio::io_context& io, Inbox& inbox) : io_(io), inbox_(inbox) {}
  virtual ~Connection() = default;

  virtual void start_read() = 0;

  void send(std::string line) {
    outbox_.push_back(std::move(line));
    if (outbox_.size() == 1) write_front();
  }

  void close_after_flush() {
    closing_ = true;
    if (outbox_.empty()) close_stream();
  }

 protected:
  virtual void write_front() = 0;
  virtual void close_stream() = 0;

  void on_written(const boost::system::error_code& ec) {
    outbox_.pop_front();
    if (ec) {
      outbox_.clear();
      close_stream();
      return;
    }
    if (!outbox_.empty()) {
      write_front();
    } else if (closing_) {
      close_stream();
    }
  }

  void deliver(std::string_view data) {
    std::size_t pos = 0;
    while (pos < data.size()) {
      const std::size_t end = std::min(data.find('\n', pos), data.size());
      std::string_view line = data.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty()) inbox_.push(std::string(line));
      pos = end + 1;
    }
  }

  asio::io_context& io_;
  Inbox& inbox_;
  std::deque<std::string> outbox_;
  bool closing_ = false;
  bool closed_ = false;
};

class TcpConnection final : public Connection {
 public:
  TcpConnection(asio::io_context& io, Inbox& inbox, tcp::socket socket)
      : Connection(io, inbox), socket_(std::move(socket)) {}

  void start_read() override {
    asio::async_read_until(socket_, buffer_, '\n', [this](const boost::system::error_code& ec, std::size_t n) {
      if (ec) {
        // A final line without a newline still counts.
        if (buffer_.size() > 0) {
          std::string rest(asio::buffers_begin(buffer_.data()), asio::buffers_end(buffer_.data()));
          buffer_.consume(buffer_.size());
          deliver(rest);
        }
        inbox_.push(std::nullopt);
        return;
      }
      std::string line(asio::buffers_begin(buffer_.data()), asio::buffers_begin(buffer_.data()) + n);
      buffer_.consume(n);
      deliver(line);
      start_read();
    });
  }

 private:
  void write_front() override {
    outbox_.front() += '\n';
    asio::async_write(socket_, asio::buffer(outbox_.front()),
                      [this](const boost::system::error_code& ec, std::size_t) { on_written(ec); });
  }

  void close_stream() override {
    if (closed_) return;
    closed_ = true;
    boost::system::error_code ignored;
    socket_.shutdown(tcp::socket::shutdown_both, ignored);
    socket_.close(ignored);
  }

  tcp::socket socket_;
  asio::streambuf buffer_;
};

class WsConnection final : public Connection {
 public:
  WsConnection(asio::io_context& io, Inbox& inbox, tcp::socket socket)
      : Connection(io, inbox), ws_(std::move(socket)) {
    ws_.accept();
    ws_.text(true);
  }

  void start_read() override {
    ws_.async_read(buffer_, [this](const boost::system::error_code& ec, std::size_t) {
      if (ec) {
        inbox_.push(std::nullopt);
        return;
      }
      const std::string message = beast::buffers_to_string(buffer_.data());
      buffer_.consume(buffer_.size());
      deliver(message);
      start_read();
    });
  }

 private:
  void write_front() override {
    ws_.async_write(asio::buffer(outbox_.front()),
                    [this](const boost::system::error_code& ec, std::size_t) { on_written(ec); });
  }

  void close_stream() override {
    if (closed_) return;
    closed_ = true;
    ws_.async_close(beast::websocket::close_code::normal, [](const boost::system::error_code&) {});
  }

  beast::websocket::stream<tcp::socket> ws_;
  beast::flat_buffer buffer_;
};

void run_client(asio::io_context& io, tcp::socket socket, const Scene& scene, const EngineConfig& config,
                bool websocket) {
  Inbox inbox;
  std::unique_ptr<Connection> conn;
  if (websocket) {
    conn = std::make_unique<WsConnection>(io, inbox, std::move(socket));
  } else {
    conn = std::make_unique<TcpConnection>(io, inbox, std::move(socket));
  }
  // Keeps run() alive until the engine thread is done posting.
  auto guard = asio::make_work_guard(io);

  std::thread engine([&] {
    ProtocolSession protocol(scene, config);
    while (auto line = inbox.pop()) {
      ProtocolSession::Reply reply = protocol.handle(*line);
      for (std::string& out : reply.lines) {
        asio::post(io, [&conn, out = std::move(out)]() mutable { conn->send(std::move(out)); });
      }
      if (reply.close) break;
    }
    asio::post(io, [&] {
      conn->close_after_flush();
      guard.reset();
    });
  });

  conn->start_read();
  io.run();
  engine.join();
}

}  // namespace

void serve(const Scene& scene, const EngineConfig& config, const ServeOptions& options) {
  asio::io_context io;
  const tcp::endpoint endpoint(asio::ip::make_address(options.host), options.port);
  tcp::acceptor acceptor(io, endpoint);
  if (options.on_listening) {
    options.on_listening(acceptor.local_endpoint().port());
  }
  do {
    asio::io_context client_io;
    tcp::socket socket(client_io);
    acceptor.accept(socket);
    try {
      run_client(client_io, std::move(socket), scene, config, options.websocket);
    } catch (const boost::system::system_error&) {
      // A failed handshake or reset only ends this client.
    }
  } while (!options.once);
}

}  // namespace wm
