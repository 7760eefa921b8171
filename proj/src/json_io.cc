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


#include "mincal/json_io.h"

#include "mincal/text.h"

namespace mincal {

using nlohmann::json;

json ToJson(const Avm &avm) {
  json out = json::object();
  for (const auto &e : avm.entries()) out[e.attr] = ToJson(e.value);
  return out;
}

json ToJson(const Value &v) {
  if (auto *a = v.get_if<Atom>()) return a->name;
  if (auto *n = v.get_if<Number>()) return n->value;
  if (auto *m = v.get_if<Avm>()) return ToJson(*m);
  if (auto *l = v.get_if<List>()) {
    json out = json::array();
    for (const auto &item : l->items) out.push_back(ToJson(item));
    return out;
  }
  return ToBracket(v);
}

json FrameToJson(const SlotFrame &frame) {
  json out = json::object();
  for (const auto &[slot, value] : frame.Slots()) out[slot] = ToJson(value);
  return out;
}

json EventToJson(const CalendarEvent &e) {
  return json{{"id", e.id},
              {"name", e.name},
              {"date", e.date.ToString()},
              {"time", e.time.ToString()},
              {"duration", e.duration},
              {"place", e.place},
              {"participants", e.participants}};
}

json TurnToJson(const DialogTurn &turn) {
  json out{{"reply", turn.reply},
           {"pending", turn.pending ? json(std::string(KindName(*turn.pending))) : json(nullptr)},
           {"frame", turn.frame ? FrameToJson(*turn.frame) : json(nullptr)},
           {"events_changed", turn.events_changed},
           {"executed", turn.executed}};
  return out;
}

}  // namespace mincal
