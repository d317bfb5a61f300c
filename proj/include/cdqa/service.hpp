#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cdqa/knowledge_base.hpp"
#include "cdqa/pipeline.hpp"
#include "cdqa/rooms.hpp"

namespace httplib {
class Server;
}

namespace cdqa {

inline constexpr std::string_view kDefaultWelcome =
    "My name is Emma, your voice assistance, how can I help you today?";
inline constexpr int kDefaultPort = 8080;

struct BotConfig {
  std::string welcome_message = std::string(kDefaultWelcome);
};

/// Everything read from the service config file. A missing file means
/// defaults throughout.
struct ServiceConfig {
  BotConfig bot;
  PipelineConfig pipeline;
  std::string cors_origin = "*";
  std::optional<std::filesystem::path> static_dir;

  static ServiceConfig from_json(const nlohmann::json& j);
  /// Defaults when the path is empty or does not exist; throws
  /// std::runtime_error for an unreadable or invalid file.
  static ServiceConfig load(const std::filesystem::path& path);
};

struct HttpReply {
  int status = 200;
  nlohmann::json body;
};

/// Request handlers over an atomically swappable knowledge base. Handlers
/// take a reference-counted snapshot at entry, so a reload never changes
/// the data under an in-flight request.
class QaService {
 public:
  explicit QaService(ServiceConfig config, std::optional<RoomInventory> rooms = std::nullopt);

  void install(std::shared_ptr<const KnowledgeBase> kb);
  std::shared_ptr<const KnowledgeBase> current() const;
  const ServiceConfig& config() const { return config_; }

  HttpReply handle_ask(std::string_view body) const;
  HttpReply handle_rooms(const std::map<std::string, std::string>& params) const;
  HttpReply handle_config() const;
  HttpReply handle_health() const;
  HttpReply handle_reload(std::string_view body);

  /// Loads a snapshot and swaps it in. On failure the previous knowledge
  /// base keeps serving and the error is rethrown.
  void reload_index(const std::filesystem::path& path);

 private:
  ServiceConfig config_;
  std::optional<RoomInventory> rooms_;
  mutable std::mutex swap_mu_;
  std::mutex reload_mu_;
  std::shared_ptr<const KnowledgeBase> kb_;
};

/// Binds QaService handlers to HTTP routes.
class HttpServer {
 public:
  explicit HttpServer(QaService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Returns false if the address is unavailable. Port 0 picks a free port.
  bool bind(const std::string& host, int port);
  int port() const { return port_; }
  /// Blocks until stop() is called.
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  QaService& service_;
  std::unique_ptr<httplib::Server> server_;
  int port_ = -1;
};

}  // namespace cdqa
