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

#include "mincal/domain.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "mincal/text.h"

namespace mincal {
namespace {

std::string Word(const SExpr &e, const char *what) {
  if (e.kind == SExpr::Kind::kSymbol || e.kind == SExpr::Kind::kString) return e.text;
  throw KbError(e.line, std::string("expected ") + what + ", got " + ToString(e));
}

int Int(const SExpr &e, const char *what) {
  if (e.kind != SExpr::Kind::kNumber) throw KbError(e.line, std::string("expected number for ") + what);
  return static_cast<int>(e.number);
}

const Avm *AvmAt(const Avm &a, std::string_view attr) {
  const Value *v = a.Find(attr);
  return v ? v->get_if<Avm>() : nullptr;
}

std::optional<std::string> AtomAt(const Avm &a, std::string_view attr) {
  const Value *v = a.Find(attr);
  if (v == nullptr) return std::nullopt;
  if (auto *at = v->get_if<Atom>()) return at->name;
  return std::nullopt;
}

[[noreturn]] void Malformed(const std::string &what) {
  throw InterpretError(InterpretError::Kind::kMalformedMessage, "malformed message: " + what);
}

// "my office", "a quick meeting", "bob".
std::string Phrase(const Avm &np) {
  auto den = AtomAt(np, "den");
  if (!den) Malformed("noun phrase without den");
  std::string out;
  if (const Avm *mods = AvmAt(np, "mods")) {
    if (auto det = AtomAt(*mods, "det")) out += *det + " ";
    if (auto adj = AtomAt(*mods, "adj")) out += *adj + " ";
  }
  return out + *den;
}

void CollectAdjuncts(const Avm &holder, std::vector<const Avm *> &out) {
  const Avm *mods = AvmAt(holder, "mods");
  if (mods == nullptr) return;
  const Value *pps = mods->Find("pp_msg");
  if (pps == nullptr) return;
  auto *list = pps->get_if<List>();
  if (list == nullptr) Malformed("pp_msg is not a list");
  for (const auto &item : list->items) {
    auto *pp = item.get_if<Avm>();
    if (pp == nullptr) Malformed("pp_msg element is not a matrix");
    out.push_back(pp);
    // Adjuncts nested under an adjunct's own noun phrase describe the
    // same event once the structure is gone.
    CollectAdjuncts(*pp, out);
  }
}

template <typename T>
void SetOnce(std::optional<T> &slot, T value, const char *name) {
  if (slot && !(*slot == value)) Malformed(std::string("conflicting ") + name);
  slot = std::move(value);
}

void AddParticipant(SlotFrame &f, std::string who) {
  if (std::find(f.participants.begin(), f.participants.end(), who) == f.participants.end())
    f.participants.push_back(std::move(who));
}

}  // namespace

Ontology Ontology::Load(std::string_view text) {
  std::vector<SExpr> forms;
  try {
    forms = ReadSExprs(text);
  } catch (const SyntaxError &e) {
    throw KbError(e.line(), e.what());
  }
  Ontology o;
  for (const auto &f : forms) {
    if (f.kind != SExpr::Kind::kList || f.items.empty() || f.items[0].kind != SExpr::Kind::kSymbol)
      throw KbError(f.line, "expected (fact ...)");
    const std::string &kind = f.items[0].text;
    const auto &a = f.items;
    auto need = [&](size_t lo, size_t hi) {
      if (a.size() < lo || a.size() > hi) throw KbError(f.line, "wrong arity for " + kind);
    };
    if (kind == "sort") {
      need(2, 3);
      o.parent_[Word(a[1], "sort")] = a.size() == 3 ? Word(a[2], "parent sort") : "";
    } else if (kind == "isa") {
      need(3, 3);
      o.isa_[Word(a[1], "word")] = Word(a[2], "sort");
    } else if (kind == "month") {
      need(5, 6);
      MonthInfo m{Word(a[1], "month"), Int(a[2], "month index"), Int(a[3], "days"),
                  a.size() == 6 ? Int(a[5], "leap days") : 0, Word(a[4], "next month")};
      if (m.index < 1 || m.index > 12 || m.days < 1 || m.days > 31)
        throw KbError(f.line, "bad month " + m.name);
      o.months_.push_back(std::move(m));
    } else if (kind == "weekday") {
      need(3, 3);
      o.weekdays_[Word(a[1], "weekday")] = Int(a[2], "weekday index");
    } else if (kind == "part_of_day") {
      need(5, 5);
      o.parts_.push_back({Word(a[1], "part of day"), Word(a[2], "meridiem"), Int(a[3], "lo"),
                          Int(a[4], "hi")});
    } else if (kind == "action") {
      if (a.size() < 2) throw KbError(f.line, "action needs a sem_type");
      ActionInfo info;
      info.sem_type = Word(a[1], "sem_type");
      for (size_t i = 2; i < a.size(); i += 2) {
        if (a[i].kind != SExpr::Kind::kKeyword || i + 1 >= a.size())
          throw KbError(a[i].line, "expected :keyword value in action");
        const std::string &k = a[i].text;
        std::string v = Word(a[i + 1], k.c_str());
        if (k == "maps") info.action = v;
        else if (k == "object") info.object_sort = v;
        else if (k == "role") info.object_role = v;
        else if (k == "event_name") info.event_name = v;
        else throw KbError(a[i].line, "unknown action field :" + k);
      }
      if (info.action.empty()) throw KbError(f.line, "action " + info.sem_type + " lacks :maps");
      o.actions_[info.sem_type] = std::move(info);
    } else if (kind == "forbid") {
      need(4, 4);
      if (!a[1].IsSymbol("modify")) throw KbError(f.line, "only (forbid modify ...) is supported");
      o.rules_.push_back({Word(a[2], "modifier sort"), Word(a[3], "head sort")});
    } else {
      throw KbError(f.line, "unknown fact " + kind);
    }
  }
  // Consistency.
  for (const auto &[s, p] : o.parent_) {
    if (!p.empty() && !o.parent_.count(p)) throw KbError(0, "sort " + s + " has unknown parent " + p);
    std::set<std::string> seen{s};
    for (std::string cur = p; !cur.empty(); cur = o.parent_.at(cur)) {
      if (!seen.insert(cur).second) throw KbError(0, "sort cycle through " + s);
    }
  }
  for (const auto &[w, s] : o.isa_) {
    if (!o.parent_.count(s)) throw KbError(0, w + " isa unknown sort " + s);
  }
  for (const auto &r : o.rules_) {
    if (!o.IsSort(r.modifier) || !o.IsSort(r.head))
      throw KbError(0, "filter mentions unknown sort (" + r.modifier + ", " + r.head + ")");
  }
  for (const auto &[k, info] : o.actions_) {
    if (!info.object_sort.empty() && !o.IsSort(info.object_sort))
      throw KbError(0, "action " + k + " selects unknown sort " + info.object_sort);
  }
  if (!o.months_.empty()) {
    if (o.months_.size() != 12) throw KbError(0, "month table needs 12 months");
    std::set<int> idx;
    for (const auto &m : o.months_) {
      idx.insert(m.index);
      if (!o.Month(m.next)) throw KbError(0, "month " + m.name + " followed by unknown " + m.next);
    }
    if (idx.size() != 12) throw KbError(0, "month indexes are not 1..12");
    std::set<std::string> visited;
    std::string cur = o.months_[0].name;
    for (int i = 0; i < 12; ++i) {
      visited.insert(cur);
      cur = o.Month(cur)->next;
    }
    if (visited.size() != 12 || cur != o.months_[0].name)
      throw KbError(0, "month successor table is not a 12-cycle");
  }
  return o;
}

Ontology Ontology::LoadFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw KbError(0, "cannot read knowledge base " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Load(ss.str());
}

bool Ontology::Subsumes(std::string_view ancestor, std::string_view sort) const {
  std::string cur(sort);
  for (int guard = 0; guard < 64 && !cur.empty(); ++guard) {
    if (cur == ancestor) return true;
    auto it = parent_.find(cur);
    if (it == parent_.end()) return false;
    cur = it->second;
  }
  return false;
}

std::optional<std::string> Ontology::SortOf(const Value &v) const {
  std::string name;
  if (auto *a = v.get_if<Atom>()) name = a->name;
  else if (auto *t = v.get_if<Term>()) name = t->head;
  else return std::nullopt;
  if (auto it = isa_.find(name); it != isa_.end()) return it->second;
  if (IsSort(name)) return name;
  return std::nullopt;
}

std::vector<std::string> Ontology::Sorts() const {
  std::vector<std::string> out;
  for (const auto &[s, p] : parent_) out.push_back(s);
  return out;
}

std::vector<std::string> Ontology::RootSorts() const {
  std::vector<std::string> out;
  for (const auto &[s, p] : parent_)
    if (p.empty()) out.push_back(s);
  return out;
}

const MonthInfo *Ontology::Month(std::string_view name) const {
  for (const auto &m : months_)
    if (m.name == name) return &m;
  return nullptr;
}

const MonthInfo *Ontology::MonthByIndex(int index) const {
  for (const auto &m : months_)
    if (m.index == index) return &m;
  return nullptr;
}

std::optional<int> Ontology::Weekday(std::string_view name) const {
  auto it = weekdays_.find(name);
  if (it == weekdays_.end()) return std::nullopt;
  return it->second;
}

const PartOfDayInfo *Ontology::PartOfDay(std::string_view name) const {
  for (const auto &p : parts_)
    if (p.name == name) return &p;
  return nullptr;
}

const ActionInfo *Ontology::Action(std::string_view sem_type) const {
  auto it = actions_.find(sem_type);
  return it == actions_.end() ? nullptr : &it->second;
}

Verdict FilterSet::Check(std::string_view modifier_sort, std::string_view head_sort) const {
  if (!enabled_) return Verdict::kAllow;
  for (const auto &r : ont_->filter_rules()) {
    if (ont_->Subsumes(r.modifier, modifier_sort) && ont_->Subsumes(r.head, head_sort))
      return Verdict::kVeto;
  }
  return Verdict::kAllow;
}

bool FilterSet::AllowsModifier(const Value &modifier, const Value &head) const {
  if (!enabled_) return true;
  auto m = ont_->SortOf(modifier);
  auto h = ont_->SortOf(head);
  if (!m || !h) return true;
  return Check(*m, *h) == Verdict::kAllow;
}

bool FilterSet::Selects(const Value &noun, const Value &expect) const {
  if (!enabled_) return true;
  auto *verb = expect.get_if<Atom>();
  if (verb == nullptr) return true;
  const ActionInfo *info = ont_->Action(verb->name);
  if (info == nullptr || info->object_sort.empty()) return true;
  auto sort = ont_->SortOf(noun);
  if (!sort) return true;
  return ont_->Subsumes(info->object_sort, *sort);
}

std::vector<std::pair<std::string, Value>> SlotFrame::Slots() const {
  std::vector<std::pair<std::string, Value>> out;
  out.emplace_back("action_name", Atom{action_name});
  if (event_name) out.emplace_back("event_name", Atom{*event_name});
  if (event_date) out.emplace_back("event_date", *event_date);
  if (event_time) out.emplace_back("event_time", *event_time);
  if (event_place) out.emplace_back("event_place", Atom{*event_place});
  if (!participants.empty()) {
    List l;
    for (const auto &p : participants) l.items.push_back(Atom{p});
    out.emplace_back("participants", l);
  }
  if (event_duration) out.emplace_back("event_duration", Number{*event_duration});
  if (part_of_day) out.emplace_back("part_of_day", Atom{*part_of_day});
  if (new_date) out.emplace_back("new_date", *new_date);
  if (new_time) out.emplace_back("new_time", *new_time);
  return out;
}

Avm SlotFrame::ToAvm() const {
  Avm out;
  for (auto &[k, v] : Slots()) out.Set(k, v);
  return out;
}

bool SlotFrame::Has(std::string_view slot) const {
  for (const auto &[k, v] : Slots())
    if (k == slot) return true;
  return false;
}

std::string FormatSlots(const std::vector<std::pair<std::string, Value>> &slots) {
  std::string out = "[";
  for (size_t i = 0; i < slots.size(); ++i) {
    out += i == 0 ? " " : "\n  ";
    out += "[ " + slots[i].first + " " + ToBracket(slots[i].second) + " ]";
  }
  out += " ]";
  return out;
}

bool IsActionMessage(const Avm &m) {
  if (m.Has("a_type")) return true;
  const Avm *action = AvmAt(m, "action");
  return action != nullptr && (action->Has("den") || IsActionMessage(*action));
}

void ApplyAdjunct(const Ontology &ont, const Avm &pp, SlotFrame &f) {
  const Value *type = pp.Find("type");
  const Value *den = pp.Find("den");
  if (type == nullptr || den == nullptr) Malformed("adjunct without type or den");
  if (auto *t = type->get_if<Term>()) {
    bool hour = t->head == "time" && t->args.size() == 1 && t->args[0].IsAtom("hour");
    bool pod = t->head == "time" && t->args.size() == 1 && t->args[0].IsAtom("part_of_day");
    if (hour) {
      auto *a = den->get_if<Avm>();
      if (a == nullptr) Malformed("time adjunct den is not a matrix");
      SetOnce(f.event_time, *a, "event_time");
      return;
    }
    if (pod) {
      auto *a = den->get_if<Atom>();
      if (a == nullptr || ont.PartOfDay(a->name) == nullptr) Malformed("unknown part of day");
      SetOnce(f.part_of_day, a->name, "part_of_day");
      return;
    }
    Malformed("unknown adjunct type " + ToBracket(*type));
  }
  auto sort = ont.SortOf(*type);
  if (!sort) Malformed("unknown adjunct type " + ToBracket(*type));
  if (ont.Subsumes("date", *sort)) {
    auto *a = den->get_if<Avm>();
    if (a == nullptr) Malformed("date adjunct den is not a matrix");
    SetOnce(f.event_date, *a, "event_date");
  } else if (ont.Subsumes("place", *sort)) {
    SetOnce(f.event_place, Phrase(pp), "event_place");
  } else if (ont.Subsumes("person", *sort)) {
    AddParticipant(f, Phrase(pp));
  } else if (ont.Subsumes("duration", *sort)) {
    auto *a = den->get_if<Avm>();
    const Value *mins = a ? a->Find("minutes") : nullptr;
    if (mins == nullptr || !mins->is<Number>()) Malformed("duration without minutes");
    SetOnce(f.event_duration, mins->as<Number>().value, "event_duration");
  } else {
    Malformed("adjunct of sort " + *sort + " has no slot");
  }
}

std::vector<Avm> FragmentAdjuncts(const Avm &message) {
  std::vector<Avm> out;
  const Value *pps = message.Find("pp_msg");
  if (pps == nullptr) return out;
  if (auto *l = pps->get_if<List>()) {
    for (const auto &item : l->items)
      if (auto *a = item.get_if<Avm>()) out.push_back(*a);
  }
  return out;
}

SlotFrame Interpret(const Ontology &ont, const Avm &message) {
  // Indirect requests wrap the requested action; commands carry it
  // directly.
  const Avm *body = &message;
  std::string type_attr = "a_type", obj_attr = "a_obj";
  while (!body->Has("a_type")) {
    const Avm *inner = AvmAt(*body, "action");
    if (inner == nullptr) Malformed("no action in message");
    body = inner;
    if (body->Has("den") && !body->Has("action")) {
      type_attr = "den";
      obj_attr = "action_object";
      break;
    }
  }
  auto sem_type = AtomAt(*body, type_attr);
  if (!sem_type) Malformed("action type is not an atom");
  const ActionInfo *info = ont.Action(*sem_type);
  if (info == nullptr)
    throw InterpretError(InterpretError::Kind::kUnknownAction, "unknown action " + *sem_type);

  SlotFrame f;
  f.action_name = info->action;
  std::vector<const Avm *> adjuncts;
  if (const Avm *obj = AvmAt(*body, obj_attr)) {
    if (info->object_role == "participant") {
      AddParticipant(f, Phrase(*obj));
      if (!info->event_name.empty()) f.event_name = info->event_name;
    } else {
      f.event_name = Phrase(*obj);
    }
    CollectAdjuncts(*obj, adjuncts);
  } else {
    Malformed("action without object");
  }
  CollectAdjuncts(*body, adjuncts);
  for (const Avm *pp : adjuncts) ApplyAdjunct(ont, *pp, f);
  if (const Avm *target = AvmAt(*body, "target")) {
    SlotFrame t;
    ApplyAdjunct(ont, *target, t);
    if (t.event_time) f.new_time = t.event_time;
    if (t.event_date) f.new_date = t.event_date;
    if (!t.event_time && !t.event_date) Malformed("target is neither a time nor a date");
  }
  return f;
}

CivilDate NormalizeDate(const Ontology &ont, const Avm &date, const CivilDate &today) {
  if (auto rel = AtomAt(date, "rel")) {
    if (*rel == "today") return today;
    if (*rel == "tomorrow") return today.AddDays(1);
    throw InvalidDate("unknown relative date " + *rel);
  }
  if (auto wd = AtomAt(date, "weekday")) {
    auto iso = ont.Weekday(*wd);
    if (!iso) throw InvalidDate("unknown weekday " + *wd);
    int delta = (*iso - today.weekday() + 7) % 7;
    return today.AddDays(delta);
  }
  auto month = AtomAt(date, "month");
  const Value *day = date.Find("day");
  if (!month || day == nullptr || !day->is<Number>())
    throw InvalidDate("date needs a month and a day: " + ToBracket(date));
  const MonthInfo *m = ont.Month(*month);
  if (m == nullptr) throw InvalidDate("unknown month " + *month);
  int d = static_cast<int>(day->as<Number>().value);
  int max_days = std::max(m->days, m->leap_days);
  if (d < 1 || d > max_days)
    throw InvalidDate(*month + " has " + std::to_string(max_days) + " days, not " + std::to_string(d));
  if (const Value *y = date.Find("year"); y != nullptr && y->is<Number>()) {
    CivilDate out{static_cast<int>(y->as<Number>().value), m->index, d};
    if (d > m->days && !out.valid()) throw InvalidDate(out.ToString() + " does not exist");
    return out;
  }
  // No year: the next occurrence on or after today. A leap day waits for
  // the next leap year.
  int year = today.year;
  if (CivilDate{year, m->index, d} < today) ++year;
  for (int guard = 0; guard < 9; ++guard, ++year) {
    CivilDate c{year, m->index, d};
    if (d <= m->days || c.valid()) return c;
  }
  throw InvalidDate("no such date " + *month + " " + std::to_string(d));
}

}  // namespace mincal
