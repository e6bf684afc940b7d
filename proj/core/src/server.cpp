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


#include "vrnote/server.hpp"

#include <httplib.h>

#include <utility>

#include "vrnote/error.hpp"

namespace vrnote {
namespace {

using nlohmann::json;

json error_body(const std::string& code, const std::string& message) {
  return {{"error", code}, {"message", message}};
}

}  // namespace

std::int64_t SessionManager::Entry::now_ms() const {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

SessionManager::Created SessionManager::insert(Session session, std::int64_t elapsed_ms) {
  auto entry = std::make_shared<Entry>(std::move(session));
  entry->start -= std::chrono::milliseconds(elapsed_ms);
  Created out;
  out.duration_s = entry->session.state().clock.duration_s();
  std::lock_guard lock(mutex_);
  out.id = "s" + std::to_string(next_++);
  sessions_[out.id] = std::move(entry);
  return out;
}

SessionManager::Created SessionManager::create(std::optional<double> duration_s) {
  return insert(Session(duration_s.value_or(config_.default_duration_s), config_.note), 0);
}

SessionManager::Created SessionManager::open(const std::string& document) {
  Session s = replay(document);
  const std::int64_t elapsed = s.last_wall_ms();
  return insert(std::move(s), elapsed);
}

std::shared_ptr<SessionManager::Entry> SessionManager::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::kUnknownSession, id);
  return it->second;
}

json SessionManager::append(const std::string& id, const json& body) {
  auto entry = find(id);
  const json* events = &body;
  if (body.is_object()) {
    if (!body.contains("events")) {
      throw Error(ErrorCode::kMalformedDocument, "body needs an events array");
    }
    events = &body.at("events");
  }
  if (!events->is_array()) throw Error(ErrorCode::kMalformedDocument, "events must be an array");

  std::lock_guard lock(entry->mutex);
  json results = json::array();
  for (json e : *events) {
    if (e.is_object() && !e.contains("t_wall_ms")) e["t_wall_ms"] = entry->now_ms();
    const json seq = e.is_object() && e.contains("seq") ? e.at("seq") : json(nullptr);
    try {
      results.push_back(entry->session.apply(SessionEvent::from_json(e)).to_json());
    } catch (const Error& err) {
      std::string status = "malformed";
      if (err.code() == ErrorCode::kSequenceGap) status = "gap";
      if (err.code() == ErrorCode::kDuplicateSequence) status = "duplicate";
      results.push_back({{"seq", seq}, {"status", status}, {"reason", err.what()}});
    }
  }
  return {{"results", std::move(results)}, {"last_seq", entry->session.last_seq()}};
}

json SessionManager::clock(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  const LectureClock& c = entry->session.state().clock;
  const std::int64_t now = std::max(entry->now_ms(), c.anchor_wall_ms);
  const std::int64_t position = c.position_at(now);
  return {{"playing", c.playing && position < c.duration_ms},
          {"position_s", static_cast<double>(position) / 1000.0},
          {"duration_s", c.duration_s()},
          {"t_wall_ms", now}};
}

json SessionManager::page(const std::string& id, int index) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  const Notebook& nb = entry->session.state().notebook;
  if (index < 0 || index >= static_cast<int>(nb.pages.size())) {
    throw std::out_of_range("page " + std::to_string(index));
  }
  json page = canonicalize(page_to_json(nb.pages[static_cast<std::size_t>(index)]));
  page["page"] = index;
  page["page_count"] = nb.pages.size();
  page["current_page"] = nb.current_page;
  return page;
}

std::string SessionManager::document(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  return entry->session.export_document();
}

struct Server::Impl {
  httplib::Server http;
};

Server::Server(AppConfig config)
    : sessions_(std::move(config)), impl_(std::make_unique<Impl>()) {
  httplib::Server& http = impl_->http;
  http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                            {"Access-Control-Allow-Headers", "Content-Type"},
                            {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  http.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  auto send = [](httplib::Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  };
  // Runs a handler and maps failures onto status codes.
  auto guarded = [send](auto handler) {
    return [send, handler](const httplib::Request& req, httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const Error& e) {
        const int status = e.code() == ErrorCode::kUnknownSession ? 404 : 400;
        send(res, error_body(std::string(to_string(e.code())), e.what()), status);
      } catch (const json::exception& e) {
        send(res, error_body("MalformedDocument", e.what()), 400);
      } catch (const std::out_of_range& e) {
        send(res, error_body("NotFound", e.what()), 404);
      } catch (const std::exception& e) {
        send(res, error_body("Internal", e.what()), 500);
      }
    };
  };
  auto body_json = [](const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    return json::parse(req.body);
  };

  http.Post("/sessions", guarded([this, send, body_json](const httplib::Request& req,
                                                         httplib::Response& res) {
    const json body = body_json(req);
    SessionManager::Created c;
    if (body.contains("document")) {
      const json& doc = body.at("document");
      c = sessions_.open(doc.is_string() ? doc.get<std::string>() : doc.dump());
    } else {
      std::optional<double> duration;
      if (body.contains("duration_s")) duration = body.at("duration_s").get<double>();
      c = sessions_.create(duration);
    }
    send(res, {{"id", c.id}, {"duration_s", c.duration_s}}, 201);
  }));
  http.Post(R"(/sessions/([^/]+)/events)",
            guarded([this, send, body_json](const httplib::Request& req, httplib::Response& res) {
              send(res, sessions_.append(req.matches[1], body_json(req)));
            }));
  http.Get(R"(/sessions/([^/]+)/clock)",
           guarded([this, send](const httplib::Request& req, httplib::Response& res) {
             send(res, sessions_.clock(req.matches[1]));
           }));
  http.Get(R"(/sessions/([^/]+)/pages/(\d+))",
           guarded([this, send](const httplib::Request& req, httplib::Response& res) {
             send(res, sessions_.page(req.matches[1], std::stoi(req.matches[2])));
           }));
  http.Get(R"(/sessions/([^/]+)/document)",
           guarded([this](const httplib::Request& req, httplib::Response& res) {
             res.set_content(sessions_.document(req.matches[1]), "application/json");
           }));
  http.Post("/bench", guarded([this, send, body_json](const httplib::Request& req,
                                                      httplib::Response& res) {
    const json body = body_json(req);
    const std::string scenario = body.value("scenario", "write");
    const int frames = body.value("frames", 200);
    if (frames < 1 || frames > 20000) {
      throw Error(ErrorCode::kInvalidArgument, "frames must be in [1, 20000]");
    }
    BenchConfig cfg = sessions_.config().bench();
    cfg.seed = body.value("seed", std::uint64_t{1});
    send(res, bench_summary(bench_tracking(scenario, frames, cfg)));
  }));
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Server::run() { return impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_) impl_->http.stop();
}

}  // namespace vrnote
