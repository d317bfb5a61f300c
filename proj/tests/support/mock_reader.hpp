#pragma once

// Scripted stand-in for a neural reader endpoint.

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace testing_support {

class MockReader {
 public:
  /// Maps the decoded request to (status, raw body).
  using Script = std::function<std::pair<int, std::string>(const nlohmann::json&)>;

  MockReader() {
    server_.Post("/read", [this](const httplib::Request& req, httplib::Response& res) {
      ++calls_;
      Script script;
      {
        std::lock_guard lock(mu_);
        script = script_;
      }
      auto [status, body] = script(nlohmann::json::parse(req.body));
      res.status = status;
      res.set_content(body, "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockReader() {
    server_.stop();
    thread_.join();
  }

  void set_script(Script s) {
    std::lock_guard lock(mu_);
    script_ = std::move(s);
  }
  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_) + "/read"; }
  int calls() const { return calls_.load(); }

  /// One span per paragraph covering its first `width` bytes with `score`.
  static Script echo(double score, std::size_t width = 5) {
    return [=](const nlohmann::json& req) {
      auto answers = nlohmann::json::array();
      for (const auto& p : req["paragraphs"]) {
        const auto len = p["text"].get<std::string>().size();
        answers.push_back({{"doc_id", p["doc_id"]},
                           {"paragraph_index", p["paragraph_index"]},
                           {"char_start", 0},
                           {"char_end", std::min(width, len)},
                           {"score", score}});
      }
      std::reverse(answers.begin(), answers.end());  // any order is allowed
      return std::make_pair(200, nlohmann::json{{"answers", answers}}.dump());
    };
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = -1;
  std::mutex mu_;
  Script script_ = echo(0.5);
  std::atomic<int> calls_{0};
};

}  // namespace testing_support
