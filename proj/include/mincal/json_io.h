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


// JSON forms of values, frames, events and dialog turns, shared by the
// service and the CLI's machine-readable output.
//
// Atoms become strings, numbers integers, lists arrays, matrices objects;
// terms print in bracket syntax ("sent(ques, wh_time)").

#ifndef MINCAL_JSON_IO_H_
#define MINCAL_JSON_IO_H_

#include "json.hpp"
#include "mincal/avm.h"
#include "mincal/calendar.h"
#include "mincal/dialog.h"
#include "mincal/domain.h"

namespace mincal {

nlohmann::json ToJson(const Value &v);
nlohmann::json ToJson(const Avm &avm);
nlohmann::json FrameToJson(const SlotFrame &frame);
nlohmann::json EventToJson(const CalendarEvent &e);
// reply, pending, frame, events_changed, executed.
nlohmann::json TurnToJson(const DialogTurn &turn);

}  // namespace mincal

#endif  // MINCAL_JSON_IO_H_
