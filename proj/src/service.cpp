#include "cdqa/service.hpp"

#include <charconv>
#include <chrono>
#include <fstream>

#include <httplib.h>

#include "cdqa/text.hpp"

namespace cdqa {
namespace {

HttpReply error_reply(int status, std::string message) {
  return HttpReply{status, {{"error", std::move(message)}}};
}

std::optional<int> parse_positive_int(std::string_view s) {
  int v = 0;
  if (s.empty()) return std::nullopt;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

ServiceConfig ServiceConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::runtime_error("config file must contain a JSON object");
  ServiceConfig c;
  if (j.contains("welcome_message")) {
    if (!j["welcome_message"].is_string() || j["welcome_message"].get<std::string>().empty()) {
      throw std::runtime_error("welcome_message must be a non-empty string");
    }
    c.bot.welcome_message = j["welcome_message"].get<std::string>();
  }
  c.cors_origin = j.value("cors_origin", c.cors_origin);
  if (j.contains("static_dir") && j["static_dir"].is_string()) {
    c.static_dir = j["static_dir"].get<std::string>();
  }
  if (j.contains("pipeline")) c.pipeline = PipelineConfig::from_json(j["pipeline"]);
  if (j.contains("external_reader")) {
    c.pipeline.external = ExternalReaderConfig::from_json(j["external_reader"]);
  }
  c.pipeline.validate();
  return c;
}

ServiceConfig ServiceConfig::load(const std::filesystem::path& path) {
  if (path.empty() || !std::filesystem::exists(path)) return ServiceConfig{};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config file " + path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error("config file " + path.string() + ": " + e.what());
  }
}

QaService::QaService(ServiceConfig config, std::optional<RoomInventory> rooms)
    : config_(std::move(config)), rooms_(std::move(rooms)) {
  config_.pipeline.validate();
}

void QaService::install(std::shared_ptr<const KnowledgeBase> kb) {
  std::lock_guard lock(swap_mu_);
  kb_ = std::move(kb);
}

std::shared_ptr<const KnowledgeBase> QaService::current() const {
  std::lock_guard lock(swap_mu_);
  return kb_;
}

HttpReply QaService::handle_ask(std::string_view body) const {
  nlohmann::json req;
  try {
    req = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error&) {
    return error_reply(400, "request body must be JSON");
  }
  if (!req.is_object() || !req.contains("query")) {
    return error_reply(400, "missing field \"query\"");
  }
  if (!req["query"].is_string()) return error_reply(400, "field \"query\" must be a string");
  const auto query = req["query"].get<std::string>();
  if (trim(query).empty()) return error_reply(400, "field \"query\" is empty");

  const auto kb = current();
  if (!kb) return error_reply(503, "index not loaded");

  const auto started = std::chrono::steady_clock::now();
  try {
    auto body_json = answer(query, *kb, config_.pipeline).to_json();
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
    body_json["latency_ms"] = elapsed.count();
    return HttpReply{200, std::move(body_json)};
  } catch (const ExternalReaderError& e) {
    return error_reply(502, e.what());
  }
}

HttpReply QaService::handle_rooms(const std::map<std::string, std::string>& params) const {
  if (!rooms_) return error_reply(503, "room availability is not configured on this server");
  auto get = [&](const char* key) -> std::optional<std::string> {
    const auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
  };
  const auto in_text = get("check_in");
  const auto out_text = get("check_out");
  const auto guests_text = get("guests");
  if (!in_text || !out_text || !guests_text) {
    return error_reply(400, "check_in, check_out and guests are required");
  }
  const auto check_in = parse_iso_date(*in_text);
  if (!check_in) return error_reply(400, "check_in must be a YYYY-MM-DD date");
  const auto check_out = parse_iso_date(*out_text);
  if (!check_out) return error_reply(400, "check_out must be a YYYY-MM-DD date");
  if (*check_out <= *check_in) return error_reply(400, "check_out must be after check_in");
  const auto guests = parse_positive_int(*guests_text);
  if (!guests || *guests < 1) return error_reply(400, "guests must be a positive integer");

  auto list = nlohmann::json::array();
  for (const auto& a : rooms_->search(*check_in, *check_out, *guests)) list.push_back(a.to_json());
  return HttpReply{200, std::move(list)};
}

HttpReply QaService::handle_config() const {
  return HttpReply{200, {{"welcome_message", config_.bot.welcome_message}}};
}

HttpReply QaService::handle_health() const {
  const auto kb = current();
  if (!kb) return HttpReply{503, {{"status", "loading"}}};
  return HttpReply{200,
                   {{"status", "ok"},
                    {"documents", kb->corpus.size()},
                    {"vocabulary_terms", kb->index.vocabulary_size()}}};
}

void QaService::reload_index(const std::filesystem::path& path) {
  std::lock_guard lock(reload_mu_);
  auto fresh = std::make_shared<const KnowledgeBase>(load_snapshot(path));
  install(std::move(fresh));
}

HttpReply QaService::handle_reload(std::string_view body) {
  nlohmann::json req;
  try {
    req = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error&) {
    return error_reply(400, "request body must be JSON");
  }
  if (!req.is_object() || !req.contains("index_path") || !req["index_path"].is_string()) {
    return error_reply(400, "missing field \"index_path\"");
  }
  try {
    reload_index(req["index_path"].get<std::string>());
  } catch (const SnapshotError& e) {
    return error_reply(422, e.what());
  }
  const auto kb = current();
  return HttpReply{200,
                   {{"status", "reloaded"},
                    {"documents", kb->corpus.size()},
                    {"vocabulary_terms", kb->index.vocabulary_size()}}};
}

HttpServer::HttpServer(QaService& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto& srv = *server_;
  // httplib defaults to SO_REUSEPORT, which lets a second server share a busy port.
  srv.set_socket_options([](int sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  const auto origin = service_.config().cors_origin;

  auto send = [origin](httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_content(reply.body.dump(), "application/json");
  };

  srv.Post("/api/ask", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.handle_ask(req.body));
  });
  srv.Get("/api/rooms", [this, send](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> params;
    for (const auto& [k, v] : req.params) params.emplace(k, v);
    send(res, service_.handle_rooms(params));
  });
  srv.Get("/api/config", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, service_.handle_config());
  });
  srv.Get("/api/health", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, service_.handle_health());
  });
  srv.Post("/api/reload", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.handle_reload(req.body));
  });
  srv.Options(R"(/api/.*)", [origin](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
  if (const auto& dir = service_.config().static_dir) srv.set_mount_point("/", dir->string());
}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
  } else {
    port_ = server_->bind_to_port(host, port) ? port : -1;
  }
  return port_ > 0;
}

bool HttpServer::listen() { return server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace cdqa
