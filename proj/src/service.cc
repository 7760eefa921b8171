// Copyright 2026 The mincal Authors.
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


#include "mincal/service.h"

#include <ctime>
#include <map>
#include <mutex>
#include <random>

#include "httplib.h"
#include "mincal/dialog.h"
#include "mincal/json_io.h"

namespace mincal {

using nlohmann::json;

namespace {

void Reply(httplib::Response &res, int status, const json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void Error(httplib::Response &res, int status, const std::string &what) {
  Reply(res, status, json{{"error", what}});
}

}  // namespace

struct Service::Impl {
  struct Entry {
    std::mutex mu;  // one turn at a time per session
    std::unique_ptr<Session> session;
  };

  std::shared_ptr<const Runtime> rt;
  SharedCalendar *calendar;
  Clock today;
  httplib::Server server;
  mutable std::mutex mu;
  std::map<std::string, std::shared_ptr<Entry>> sessions;
  std::mt19937_64 rng{std::random_device{}()};

  std::string NewId() {
    static const char kHex[] = "0123456789abcdef";
    std::string id;
    do {
      uint64_t r = rng();
      id.clear();
      for (int i = 0; i < 16; ++i, r >>= 4) id += kHex[r & 15];
    } while (sessions.count(id));
    return id;
  }

  std::shared_ptr<Entry> Find(const std::string &id) {
    std::lock_guard lock(mu);
    auto it = sessions.find(id);
    return it == sessions.end() ? nullptr : it->second;
  }

  void Routes() {
    server.Get("/healthz", [](const httplib::Request &, httplib::Response &res) {
      Reply(res, 200, json{{"status", "ok"}});
    });

    server.Post("/sessions", [this](const httplib::Request &, httplib::Response &res) {
      auto entry = std::make_shared<Entry>();
      entry->session = std::make_unique<Session>(rt, calendar, today());
      std::string id;
      {
        std::lock_guard lock(mu);
        id = NewId();
        sessions.emplace(id, entry);
      }
      Reply(res, 201, json{{"id", id}});
    });

    server.Post(R"(/sessions/([^/]+)/utterances)",
                [this](const httplib::Request &req, httplib::Response &res) {
                  auto entry = Find(req.matches[1]);
                  if (!entry) return Error(res, 404, "unknown session");
                  json body = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
                  if (body.is_discarded() || !body.is_object() || !body.contains("text") ||
                      !body["text"].is_string())
                    return Error(res, 400, "expected {\"text\": \"...\"}");
                  std::string text = body["text"];
                  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
                    return Error(res, 400, "empty text");
                  std::lock_guard lock(entry->mu);
                  Reply(res, 200, TurnToJson(entry->session->HandleUtterance(text)));
                });

    server.Get("/calendar/events", [this](const httplib::Request &req, httplib::Response &res) {
      std::optional<CivilDate> from, to;
      for (auto [key, slot] : {std::pair{"from", &from}, std::pair{"to", &to}}) {
        if (!req.has_param(key)) continue;
        auto d = CivilDate::Parse(req.get_param_value(key));
        if (!d || !d->valid()) return Error(res, 400, std::string("bad ") + key + " date");
        *slot = *d;
      }
      if (from && to && *to < *from) return Error(res, 400, "from is after to");
      std::vector<CalendarEvent> events;
      if (!from && !to) {
        events = calendar->All();
      } else {
        events = calendar->Query(from.value_or(CivilDate{1, 1, 1}), to.value_or(CivilDate{9999, 12, 31}));
      }
      json list = json::array();
      for (const auto &e : events) list.push_back(EventToJson(e));
      Reply(res, 200, json{{"events", list}});
    });
  }
};

Service::Service(std::shared_ptr<const Runtime> rt, SharedCalendar *calendar, Clock today)
    : impl_(std::make_unique<Impl>()) {
  impl_->rt = std::move(rt);
  impl_->calendar = calendar;
  impl_->today = today ? std::move(today) : Clock(SystemToday);
  impl_->Routes();
}

Service::~Service() { Stop(); }

int Service::BindAnyPort(const std::string &host) { return impl_->server.bind_to_any_port(host); }
bool Service::Bind(const std::string &host, int port) { return impl_->server.bind_to_port(host, port); }
bool Service::Run() { return impl_->server.listen_after_bind(); }
void Service::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}
void Service::WaitUntilReady() const { impl_->server.wait_until_ready(); }

size_t Service::session_count() const {
  std::lock_guard lock(impl_->mu);
  return impl_->sessions.size();
}

CivilDate SystemToday() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  localtime_r(&now, &tm);
  return CivilDate{tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday};
}

}  // namespace mincal
