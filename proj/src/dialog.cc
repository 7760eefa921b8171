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


#include "mincal/dialog.h"

#include <algorithm>
#include <sstream>

#include "mincal/parser.h"
#include "mincal/text.h"

namespace mincal {
namespace {

bool Contains(const std::vector<std::string> &v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string SlotWord(std::string_view slot) {
  if (slot == "event_date" || slot == "new_date") return "date";
  if (slot == "event_time" || slot == "new_time") return "time";
  if (slot == "event_place") return "place";
  if (slot == "event_name") return "event";
  if (slot == "event_duration") return "duration";
  if (slot == "part_of_day") return "time of day";
  return std::string(slot);
}

std::string JoinAnd(const std::vector<std::string> &items) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += i + 1 == items.size() ? " and " : ", ";
    out += items[i];
  }
  return out;
}

// What kind of answer an adjunct is: time, pod, date, or empty.
std::string AnswerKind(const Ontology &ont, const Avm &pp) {
  const Value *type = pp.Find("type");
  if (type == nullptr) return "";
  if (auto *t = type->get_if<Term>()) {
    if (t->head == "time" && t->args.size() == 1) {
      if (t->args[0].IsAtom("hour")) return "time";
      if (t->args[0].IsAtom("part_of_day")) return "pod";
    }
    return "";
  }
  auto sort = ont.SortOf(*type);
  if (sort && ont.Subsumes("date", *sort)) return "date";
  return "";
}

bool ExplicitMeridiem(const Avm &pp) {
  const Value *den = pp.Find("den");
  const Avm *t = den ? den->get_if<Avm>() : nullptr;
  const Value *h = t ? t->Find("hour") : nullptr;
  const Avm *hour = h ? h->get_if<Avm>() : nullptr;
  const Value *m = hour ? hour->Find("meridiem") : nullptr;
  return m != nullptr && (m->IsAtom("am") || m->IsAtom("pm"));
}

bool Accepts(QuestionKind kind, std::string_view answer, bool explicit_meridiem) {
  switch (kind) {
    case QuestionKind::kWhDateTime:
      return answer == "date" || answer == "time" || answer == "pod";
    case QuestionKind::kWhTime:
      return answer == "time" || answer == "pod";
    case QuestionKind::kWhDate:
      return answer == "date";
    case QuestionKind::kMeridiemChoice:
      return answer == "pod" || (answer == "time" && explicit_meridiem);
    case QuestionKind::kEventRefChoice:
      return answer == "date" || answer == "time";
    case QuestionKind::kConfirmChange:
      return false;
  }
  return false;
}

std::optional<int64_t> HourOf(const Avm &time) {
  const Value *h = time.Find("hour");
  const Avm *hour = h ? h->get_if<Avm>() : nullptr;
  const Value *v = hour ? hour->Find("value") : nullptr;
  if (v == nullptr || !v->is<Number>()) return std::nullopt;
  return v->as<Number>().value;
}

bool Undecided(const Avm &time) {
  const Value *h = time.Find("hour");
  const Avm *hour = h ? h->get_if<Avm>() : nullptr;
  const Value *m = hour ? hour->Find("meridiem") : nullptr;
  return m != nullptr && m->IsAtom("am_or_pm");
}

// Merges a contribution into a frame. Returns the first slot whose value
// would change, leaving `out` with the new value in place.
std::optional<std::string> MergeFrames(const SlotFrame &base, const SlotFrame &add, QuestionKind kind,
                                       SlotFrame &out) {
  out = base;
  std::optional<std::string> conflict;
  auto take = [&](auto &slot, const auto &value, const char *name) {
    if (!value) return;
    if (slot && !(*slot == *value) && !conflict) conflict = name;
    slot = value;
  };
  auto take_time = [&](std::optional<Avm> &slot, const std::optional<Avm> &value, const char *name) {
    if (!value) return;
    // Answering "morning or afternoon?" with "8 pm" refines, not changes.
    if (slot && kind == QuestionKind::kMeridiemChoice && Undecided(*slot) &&
        HourOf(*slot) && HourOf(*value) && *HourOf(*slot) % 12 == *HourOf(*value) % 12) {
      slot = value;
      return;
    }
    take(slot, value, name);
  };
  take(out.event_name, add.event_name, "event_name");
  take(out.event_date, add.event_date, "event_date");
  take_time(out.event_time, add.event_time, "event_time");
  take(out.event_place, add.event_place, "event_place");
  take(out.event_duration, add.event_duration, "event_duration");
  take(out.part_of_day, add.part_of_day, "part_of_day");
  take(out.new_date, add.new_date, "new_date");
  take_time(out.new_time, add.new_time, "new_time");
  for (const auto &p : add.participants) {
    if (!Contains(out.participants, p)) out.participants.push_back(p);
  }
  return conflict;
}

std::vector<std::string> Gained(const SlotFrame &before, const SlotFrame &after) {
  std::vector<std::string> out;
  auto old = before.Slots();
  for (const auto &[name, value] : after.Slots()) {
    auto it = std::find_if(old.begin(), old.end(), [&](const auto &e) { return e.first == name; });
    if (it == old.end() || !(it->second == value)) out.push_back(name);
  }
  return out;
}

}  // namespace

std::string_view KindName(QuestionKind kind) {
  switch (kind) {
    case QuestionKind::kWhDateTime: return "wh_date_time";
    case QuestionKind::kWhTime: return "wh_time";
    case QuestionKind::kWhDate: return "wh_date";
    case QuestionKind::kMeridiemChoice: return "meridiem_choice";
    case QuestionKind::kEventRefChoice: return "event_ref_choice";
    case QuestionKind::kConfirmChange: return "confirm_change";
  }
  return "";
}

std::string_view QuestionText(QuestionKind kind) {
  switch (kind) {
    case QuestionKind::kWhDateTime: return "At what time and date?";
    case QuestionKind::kWhTime: return "At what time?";
    case QuestionKind::kWhDate: return "On what date?";
    case QuestionKind::kMeridiemChoice: return "Morning or afternoon?";
    case QuestionKind::kEventRefChoice: return "Which one do you mean? Please give the date or time.";
    case QuestionKind::kConfirmChange: return "Do you want to change it?";
  }
  return "";
}

Term QuestionTerm(QuestionKind kind) {
  return Term{"sent", {Atom{"ques"}, Atom{std::string(KindName(kind))}}};
}

QuestionKind NextQuestion(const std::vector<std::string> &pending) {
  if (Contains(pending, kEventRefChoice) || Contains(pending, "event_ref"))
    return QuestionKind::kEventRefChoice;
  bool date = Contains(pending, "event_date") || Contains(pending, "new_date");
  bool time = Contains(pending, "event_time") || Contains(pending, "new_time");
  if (date && time) return QuestionKind::kWhDateTime;
  if (time) return QuestionKind::kWhTime;
  if (date) return QuestionKind::kWhDate;
  return QuestionKind::kMeridiemChoice;
}

std::optional<SlotFrame> InterpretFragment(const Ontology &ont, const PendingQuestion &q,
                                           const std::vector<Avm> &messages) {
  for (const auto &m : messages) {
    auto adjuncts = FragmentAdjuncts(m);
    if (adjuncts.empty()) continue;
    bool fits = std::all_of(adjuncts.begin(), adjuncts.end(), [&](const Avm &pp) {
      return Accepts(q.kind, AnswerKind(ont, pp), ExplicitMeridiem(pp));
    });
    if (!fits) continue;
    SlotFrame add;
    try {
      for (const auto &pp : adjuncts) ApplyAdjunct(ont, pp, add);
    } catch (const InterpretError &) {
      continue;
    }
    // For a move the answer is where the event goes, unless the question
    // was which event.
    if (q.frame.action_name == "move" && q.kind != QuestionKind::kEventRefChoice) {
      add.new_time = std::move(add.event_time);
      add.new_date = std::move(add.event_date);
      add.event_time.reset();
      add.event_date.reset();
    }
    return add;
  }
  return std::nullopt;
}

DiscourseContext UpdateContext(DiscourseContext ctx, Term construction) {
  ctx.p_utter = std::move(construction);
  return ctx;
}

Session::Session(std::shared_ptr<const Runtime> rt, SharedCalendar *calendar, CivilDate today)
    : rt_(std::move(rt)), calendar_(calendar), today_(today) {}

void Session::Ask(QuestionKind kind, const SlotFrame &frame, DialogTurn &turn) {
  pending_ = PendingQuestion{kind, frame, {}, {}};
  last_question_ = std::string(QuestionText(kind));
  ctx_ = UpdateContext(std::move(ctx_), QuestionTerm(kind));
  turn.reply = last_question_;
}

bool Session::Proceed(const SlotFrame &frame, const Term &user_cons, DialogTurn &turn) {
  const auto &rules = rt_->rules();
  AppRequest req;
  try {
    req = ToAppRequest(rules, rt_->ontology(), frame, today_, calendar_->All());
  } catch (const InvalidDate &e) {
    turn.trace.push_back(std::string("invalid date: ") + e.what());
    turn.reply = "That date does not exist.";
    return false;
  } catch (const InvalidHour &e) {
    turn.trace.push_back(std::string("invalid hour: ") + e.what());
    turn.reply = "That time does not exist.";
    return false;
  }
  {
    std::string p;
    for (const auto &s : req.pending) p += (p.empty() ? "" : " ") + s;
    turn.trace.push_back("request " + req.action + (p.empty() ? " ready" : " pending: " + p));
  }
  turn.slots_gained = Gained(pending_ ? pending_->frame : SlotFrame{}, frame);
  if (Contains(req.pending, kEventNotFound)) {
    pending_.reset();
    ctx_ = UpdateContext(std::move(ctx_), user_cons);
    turn.reply = "I could not find that event.";
    return true;
  }
  if (!req.executable()) {
    Ask(NextQuestion(req.pending), frame, turn);
    return true;
  }
  Execute(req, user_cons, turn);
  return true;
}

void Session::Execute(const AppRequest &req, const Term &user_cons, DialogTurn &turn) {
  const auto &rules = rt_->rules();
  auto when = [&](const CivilDate &d, const CivilTime &t) {
    return " on " + rules.FormatDate(d) + " at " + rules.FormatTime(t);
  };
  try {
    if (req.action == "schedule") {
      CalendarEvent e;
      e.name = req.name.value_or("an event");
      e.date = *req.date;
      e.time = *req.time;
      e.duration = req.duration.value_or(rules.default_duration);
      e.place = req.place.value_or("");
      e.participants = req.participants;
      auto r = calendar_->Schedule(std::move(e));
      std::string reply = "Scheduled " + r.event.name;
      if (!r.event.participants.empty()) reply += " with " + JoinAnd(r.event.participants);
      if (!r.event.place.empty()) reply += " in " + r.event.place;
      reply += when(r.event.date, r.event.time) + ".";
      for (const auto &w : r.warnings) reply += " Note: it " + w + ".";
      turn.reply = reply;
      turn.events_changed.push_back(r.event.id);
    } else if (req.action == "move") {
      auto e = calendar_->Move(req.event_ref.at(0), *req.new_date, *req.new_time);
      turn.reply = "Moved " + e.name + " to" + when(e.date, e.time).substr(3) + ".";
      turn.events_changed.push_back(e.id);
    } else if (req.action == "cancel") {
      auto e = calendar_->Cancel(req.event_ref.at(0));
      turn.reply = "Canceled " + e.name + when(e.date, e.time) + ".";
      turn.events_changed.push_back(e.id);
    } else {
      turn.reply = "I cannot " + req.action + " events.";
    }
  } catch (const CalendarError &e) {
    turn.trace.push_back(std::string("calendar: ") + e.what());
    turn.reply = "I could not do that.";
    return;
  }
  turn.executed = !turn.events_changed.empty();
  pending_.reset();
  ctx_ = UpdateContext(std::move(ctx_), user_cons);
}

bool Session::AnswerPending(const std::vector<ParseResult> &parses, DialogTurn &turn) {
  PendingQuestion q = *pending_;
  if (q.kind == QuestionKind::kConfirmChange) {
    for (const auto &p : parses) {
      const Value *tv = p.message.Find("truth_value");
      if (tv == nullptr || !tv->is<Number>()) continue;
      bool yes = tv->as<Number>().value != 0;
      turn.trace.push_back(std::string("change ") + q.slot + (yes ? " accepted" : " declined"));
      SlotFrame frame = yes ? q.proposed : q.frame;
      pending_->frame = q.frame;
      Proceed(frame, p.construction, turn);
      return true;
    }
    return false;
  }
  for (const auto &p : parses) {
    auto add = InterpretFragment(rt_->ontology(), q, {p.message});
    if (!add) continue;
    SlotFrame merged;
    auto conflict = MergeFrames(q.frame, *add, q.kind, merged);
    if (conflict) {
      pending_ = PendingQuestion{QuestionKind::kConfirmChange, q.frame, merged, *conflict};
      last_question_ = "Do you want to change the " + SlotWord(*conflict) + "?";
      ctx_ = UpdateContext(std::move(ctx_), QuestionTerm(QuestionKind::kConfirmChange));
      turn.reply = last_question_;
      return true;
    }
    turn.trace.push_back("fragment " + NameKey(p.construction) + " read as " + std::string(KindName(q.kind)) +
                         " answer");
    Proceed(merged, p.construction, turn);
    return true;
  }
  return false;
}

DialogTurn Session::HandleUtterance(std::string_view text) {
  DialogTurn turn;
  turn.user = std::string(text);
  const Parser &parser = rt_->parser();
  auto tokens = TokenizeUtterance(text);
  std::vector<ParseResult> parses;
  if (!tokens.empty()) parses = parser.Parse(ctx_, tokens);
  turn.trace.push_back("context p_utter " + (ctx_.p_utter ? NameKey(*ctx_.p_utter) : std::string("none")));
  turn.trace.push_back(std::to_string(parses.size()) + " parse(s)");
  for (const auto &p : parses)
    turn.trace.push_back("  " + NameKey(p.construction) + " " + ToBracket(p.message));

  // New requests first; they replace whatever was being asked.
  std::optional<SlotFrame> best;
  const ParseResult *best_parse = nullptr;
  std::pair<size_t, size_t> best_score{0, 0};
  size_t ties = 0;
  for (const auto &p : parses) {
    if (!IsActionMessage(p.message)) continue;
    SlotFrame f;
    try {
      f = Interpret(rt_->ontology(), p.message);
    } catch (const InterpretError &e) {
      turn.trace.push_back(std::string("  not interpretable: ") + e.what());
      continue;
    }
    size_t required = 0;
    for (const auto &slot : rt_->rules().Required(f.action_name)) {
      if (slot == "event_ref" ? f.event_name.has_value() : f.Has(slot)) ++required;
    }
    std::pair<size_t, size_t> score{required, f.Slots().size()};
    if (!best || score > best_score) {
      best = f;
      best_parse = &p;
      best_score = score;
      ties = 0;
    } else if (score == best_score) {
      ++ties;
    }
  }
  if (ties > 0)
    turn.trace.push_back("tie: " + std::to_string(ties + 1) + " readings rank equally; took the first");

  if (best) {
    turn.trace.push_back("command " + NameKey(best_parse->construction));
    auto saved = pending_;
    pending_.reset();
    if (!Proceed(*best, best_parse->construction, turn)) pending_ = saved;
  } else if (pending_ && AnswerPending(parses, turn)) {
  } else if (pending_) {
    turn.trace.push_back("nothing fits the open question");
    turn.reply = parses.empty() ? std::string(kReformulate) : last_question_;
  } else {
    turn.reply = std::string(kReformulate);
  }
  if (turn.reply.empty()) turn.reply = std::string(kReformulate);
  if (pending_) {
    turn.pending = pending_->kind;
    turn.frame = pending_->frame;
  }
  return turn;
}

bool ReplayResult::ok() const {
  return std::all_of(steps.begin(), steps.end(), [](const ReplayStep &s) { return s.ok(); });
}

const ReplayStep *ReplayResult::first_failure() const {
  for (const auto &s : steps)
    if (!s.ok()) return &s;
  return nullptr;
}

ReplayResult Replay(std::shared_ptr<const Runtime> rt, SharedCalendar *calendar,
                    std::string_view transcript, CivilDate default_today) {
  struct Line {
    int no;
    char who;
    std::string text;
  };
  std::vector<Line> lines;
  CivilDate today = default_today;
  std::istringstream in{std::string(transcript)};
  int no = 0;
  for (std::string line; std::getline(in, line);) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("# today:", 0) == 0) {
      std::string d = line.substr(8);
      d.erase(0, d.find_first_not_of(' '));
      if (auto parsed = CivilDate::Parse(d)) today = *parsed;
      continue;
    }
    if (line.size() >= 2 && (line[0] == 'U' || line[0] == 'S') && line[1] == ':') {
      std::string text = line.substr(2);
      if (!text.empty() && text[0] == ' ') text.erase(0, 1);
      lines.push_back({no, line[0], text});
    }
  }
  ReplayResult result;
  Session session(std::move(rt), calendar, today);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].who != 'U') continue;
    ReplayStep step;
    step.line = lines[i].no;
    step.user = lines[i].text;
    step.actual = session.HandleUtterance(lines[i].text).reply;
    if (i + 1 < lines.size() && lines[i + 1].who == 'S') step.expected = lines[i + 1].text;
    result.steps.push_back(std::move(step));
  }
  return result;
}

}  // namespace mincal
