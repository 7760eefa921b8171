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


// HTTP session API over the dialog core.
//
//   POST /sessions                      -> 201 {"id": "..."}
//   POST /sessions/{id}/utterances      {"text": "..."} -> turn payload
//   GET  /calendar/events?from=&to=     -> {"events": [...]}
//   GET  /healthz                       -> {"status": "ok"}
//
// A turn payload is {"reply", "pending", "frame", "events_changed",
// "executed"}; pending is a question kind or null.

#ifndef MINCAL_SERVICE_H_
#define MINCAL_SERVICE_H_

#include <functional>
#include <memory>
#include <string>

#include "mincal/calendar.h"
#include "mincal/civil.h"
#include "mincal/runtime.h"

namespace mincal {

class Service {
 public:
  using Clock = std::function<CivilDate()>;

  Service(std::shared_ptr<const Runtime> rt, SharedCalendar *calendar, Clock today);
  ~Service();

  // Returns the port, or -1.
  int BindAnyPort(const std::string &host);
  bool Bind(const std::string &host, int port);
  // Serves until Stop(). Call after a successful bind.
  bool Run();
  void Stop();
  void WaitUntilReady() const;

  size_t session_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Today's date from the system clock (local time).
CivilDate SystemToday();

}  // namespace mincal

#endif  // MINCAL_SERVICE_H_
