// Copyright 2026 The vrnote Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Local HTTP service over the session engine.
//
//   POST /sessions                 {"duration_s"?, "document"?} -> {"id", "duration_s"}
//   POST /sessions/{id}/events     {"events": [...]} or [...]   -> {"results": [...], "last_seq"}
//   GET  /sessions/{id}/clock                                    -> {"playing", "position_s", "duration_s", "t_wall_ms"}
//   GET  /sessions/{id}/pages/{n}                                -> {"page", "page_count", "current_page", "strokes", "pictures"}
//   GET  /sessions/{id}/document                                 -> canonical session document
//   POST /bench                    {"scenario", "frames", "seed"?} -> benchmark summary
//
// Errors come back as {"error": <code name>, "message": <text>} with status
// 400, or 404 for an unknown session or page.

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "vrnote/config.hpp"
#include "vrnote/session.hpp"

namespace vrnote {

/// Concurrent sessions; each is serialized by its own mutex.
class SessionManager {
 public:
  explicit SessionManager(AppConfig config = {}) : config_(std::move(config)) {}

  struct Created {
    std::string id;
    double duration_s = 0.0;
  };

  Created create(std::optional<double> duration_s = std::nullopt);
  /// Replays and verifies an exported document into a new session.
  Created open(const std::string& document);

  /// Applies a batch; events without t_wall_ms are stamped with the time
  /// since the session started.
  nlohmann::json append(const std::string& id, const nlohmann::json& body);
  nlohmann::json clock(const std::string& id);
  nlohmann::json page(const std::string& id, int index);
  std::string document(const std::string& id);

  const AppConfig& config() const { return config_; }

 private:
  struct Entry {
    explicit Entry(Session s) : session(std::move(s)) {}
    std::mutex mutex;
    Session session;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::int64_t now_ms() const;
  };

  std::shared_ptr<Entry> find(const std::string& id);
  Created insert(Session session, std::int64_t elapsed_ms);

  AppConfig config_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_ = 1;
};

class Server {
 public:
  explicit Server(AppConfig config = {});
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  bool run();
  void stop();
  SessionManager& sessions() { return sessions_; }

 private:
  struct Impl;
  SessionManager sessions_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vrnote
