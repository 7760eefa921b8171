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


// Dialog sessions: the discourse context the parser consults, questions
// for missing or ambiguous parameters, fragment answers, and execution
// against the calendar once a request is complete.

#ifndef MINCAL_DIALOG_H_
#define MINCAL_DIALOG_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mincal/app.h"
#include "mincal/calendar.h"
#include "mincal/civil.h"
#include "mincal/context.h"
#include "mincal/domain.h"
#include "mincal/runtime.h"

namespace mincal {

enum class QuestionKind {
  kWhDateTime,
  kWhTime,
  kWhDate,
  kMeridiemChoice,
  kEventRefChoice,
  kConfirmChange,
};

std::string_view KindName(QuestionKind kind);  // wh_date_time, ...
std::string_view QuestionText(QuestionKind kind);

struct PendingQuestion {
  QuestionKind kind = QuestionKind::kWhDateTime;
  SlotFrame frame;     // the request being completed
  SlotFrame proposed;  // confirm_change: the frame with the new value
  std::string slot;    // confirm_change: the slot in question
};

struct DialogTurn {
  std::string user;
  std::string reply;
  std::vector<std::string> slots_gained;
  bool executed = false;
  std::vector<std::string> events_changed;
  std::optional<QuestionKind> pending;
  std::optional<SlotFrame> frame;  // partial frame while a question is open
  std::vector<std::string> trace;
};

inline constexpr std::string_view kReformulate = "Sorry, I didn't understand. Could you rephrase that?";

// The question for a list of unresolved requirements (AppRequest::pending).
QuestionKind NextQuestion(const std::vector<std::string> &pending);

// What a fragment answer adds, read according to the open question. The
// result carries only the contributed slots (action_name empty). Absent
// when no message fits the question.
std::optional<SlotFrame> InterpretFragment(const Ontology &ont, const PendingQuestion &question,
                                           const std::vector<Avm> &messages);

// Records the construction of the last utterance: the system's question
// (sent(ques, kind)) or the user's own sentence.
DiscourseContext UpdateContext(DiscourseContext ctx, Term construction);
Term QuestionTerm(QuestionKind kind);

class Session {
 public:
  Session(std::shared_ptr<const Runtime> rt, SharedCalendar *calendar, CivilDate today);

  DialogTurn HandleUtterance(std::string_view text);

  const DiscourseContext &context() const { return ctx_; }
  const std::optional<PendingQuestion> &pending() const { return pending_; }
  const CivilDate &today() const { return today_; }

 private:
  // False when the request cannot be formed; state is left alone.
  bool Proceed(const SlotFrame &frame, const Term &user_cons, DialogTurn &turn);
  bool AnswerPending(const std::vector<ParseResult> &parses, DialogTurn &turn);
  void Ask(QuestionKind kind, const SlotFrame &frame, DialogTurn &turn);
  void Execute(const AppRequest &req, const Term &user_cons, DialogTurn &turn);

  std::shared_ptr<const Runtime> rt_;
  SharedCalendar *calendar_;
  CivilDate today_;
  DiscourseContext ctx_;
  std::optional<PendingQuestion> pending_;
  std::string last_question_;
};

// One step of a transcript replay.
struct ReplayStep {
  int line = 0;
  std::string user;
  std::optional<std::string> expected;  // absent when no S: line follows
  std::string actual;
  bool ok() const { return !expected || *expected == actual; }
};

struct ReplayResult {
  std::vector<ReplayStep> steps;
  bool ok() const;
  const ReplayStep *first_failure() const;
};

// Transcript: `U:` and `S:` lines; `# today: YYYY-MM-DD` sets the session
// date; other `#` lines and blank lines are ignored.
ReplayResult Replay(std::shared_ptr<const Runtime> rt, SharedCalendar *calendar,
                    std::string_view transcript, CivilDate default_today);

}  // namespace mincal

#endif  // MINCAL_DIALOG_H_
