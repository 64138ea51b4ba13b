// Copyright 2026 The ZaCQ Authors. All rights reserved.
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

#include "zacq/clarify.hpp"

#include <algorithm>
#include <map>

#include "zacq/error.hpp"

namespace zacq {
namespace {

constexpr std::array<std::string_view, 9> kTargetNames = {"V", "DOM", "DO", "P", "POM", "PO", "O", "OM", "OR"};

const Lexicon& empty_lexicon() {
  static const Lexicon kEmpty;
  return kEmpty;
}

bool is_complete(const AttributeSet& a) {
  return a.has(Role::kV) && (a.has(Role::kDo) || (a.has(Role::kP) && a.has(Role::kPo)));
}

struct Contribution {
  std::string value;
  AttributeSet assignment;
  int preference = 0;  // lower wins when one value fills several roles
};

void add_role(std::vector<Contribution>& out, const Task& task, const AttributeSet& d, Role r, int pref) {
  if (task.has(r) && !d.has(r)) out.push_back({task[r], AttributeSet{{r, task[r]}}, pref});
}

// Values a task offers for target `s` given the defined attributes `d`.
std::vector<Contribution> contributions(const Task& task, const AttributeSet& d, Target s) {
  std::vector<Contribution> out;
  if (auto role = concrete_role(s)) {
    add_role(out, task, d, *role, 0);
    return out;
  }
  switch (s) {
    case Target::kO:
      add_role(out, task, d, Role::kDo, 0);
      add_role(out, task, d, Role::kPo, 1);
      break;
    case Target::kOm:
      add_role(out, task, d, Role::kDom, 0);
      add_role(out, task, d, Role::kPom, 1);
      break;
    case Target::kOr: {
      // Minimal verb phrase covering whichever object d already names.
      const bool d_direct = d.has(Role::kDo) || d.has(Role::kDom);
      const bool d_prep = d.has(Role::kPo) || d.has(Role::kPom) || d.has(Role::kP);
      const bool with_do = task.has(Role::kDo) && (d_direct || !d_prep);
      const bool with_pp = task.has(Role::kP) && task.has(Role::kPo) && (d_prep || !with_do);
      if (!with_do && !with_pp) break;
      AttributeSet a{{Role::kV, task[Role::kV]}};
      if (with_do) a.set(Role::kDo, task[Role::kDo]);
      if (with_pp) {
        a.set(Role::kP, task[Role::kP]);
        a.set(Role::kPo, task[Role::kPo]);
      }
      out.push_back({render_task(a.as_task()), a, 0});
      break;
    }
    default:
      break;
  }
  return out;
}

std::string phrase(const AttributeSet& attrs, const Lexicon& lex, bool gerund_verb,
                   std::optional<Role> slot = std::nullopt, std::string_view slot_text = {}) {
  std::string out;
  auto append = [&](std::string_view word) {
    if (word.empty()) return;
    if (!out.empty()) out.push_back(' ');
    out.append(word);
  };
  for (Role r : {Role::kV, Role::kDom, Role::kDo, Role::kP, Role::kPom, Role::kPo}) {
    if (slot && *slot == r) {
      append(slot_text);
    } else if (attrs.has(r)) {
      append(r == Role::kV && gerund_verb ? gerund(attrs.get(r), lex) : attrs.get(r));
    }
  }
  return out;
}

std::string any_of(std::span<const std::string> items) { return "any of the following: " + join_options(items); }

}  // namespace

std::string_view target_name(Target t) { return kTargetNames[static_cast<std::size_t>(t)]; }

std::optional<Target> parse_target(std::string_view name) {
  for (std::size_t i = 0; i < kTargetNames.size(); ++i) {
    if (kTargetNames[i] == name) return static_cast<Target>(i);
  }
  return std::nullopt;
}

Target target_of(Role r) { return static_cast<Target>(static_cast<std::uint8_t>(r)); }

std::optional<Role> concrete_role(Target t) {
  if (static_cast<std::uint8_t>(t) < kRoleCount) return static_cast<Role>(static_cast<std::uint8_t>(t));
  return std::nullopt;
}

TargetSet::TargetSet(std::initializer_list<Target> targets) {
  for (Target t : targets) insert(t);
}

std::vector<Target> TargetSet::ordered() const {
  std::vector<Target> out;
  for (Target t : kTargetScanOrder) {
    if (contains(t)) out.push_back(t);
  }
  return out;
}

AttributeSet::AttributeSet(std::initializer_list<std::pair<Role, std::string>> values) {
  for (const auto& [r, v] : values) set(r, v);
}

AttributeSet AttributeSet::from_task(const Task& task) {
  AttributeSet a;
  for (Role r : kAllRoles) a.set(r, task[r]);
  return a;
}

bool AttributeSet::empty() const { return size() == 0; }

std::size_t AttributeSet::size() const {
  return static_cast<std::size_t>(std::count_if(values_.begin(), values_.end(), [](const auto& v) { return !v.empty(); }));
}

std::vector<Role> AttributeSet::roles() const {
  std::vector<Role> out;
  for (Role r : kAllRoles) {
    if (has(r)) out.push_back(r);
  }
  return out;
}

bool AttributeSet::subset_of(const Task& task) const {
  for (Role r : kAllRoles) {
    if (has(r) && task[r] != get(r)) return false;
  }
  return true;
}

bool AttributeSet::subset_of(const AttributeSet& other) const {
  for (Role r : kAllRoles) {
    if (has(r) && other.get(r) != get(r)) return false;
  }
  return true;
}

AttributeSet& AttributeSet::merge(const AttributeSet& other) {
  for (Role r : kAllRoles) {
    if (other.has(r)) set(r, other.get(r));
  }
  return *this;
}

AttributeSet AttributeSet::minus(const AttributeSet& other) const {
  AttributeSet out;
  for (Role r : kAllRoles) {
    if (has(r) && other.get(r) != get(r)) out.set(r, get(r));
  }
  return out;
}

Task AttributeSet::as_task() const {
  Task t;
  for (Role r : kAllRoles) t.set(r, get(r));
  return t;
}

std::string AttributeSet::to_string() const {
  std::string out = "{";
  for (Role r : roles()) {
    if (out.size() > 1) out += ", ";
    out += std::string(role_name(r)) + ":" + get(r);
  }
  return out + "}";
}

TargetSet syntactic_targets(const AttributeSet& d) {
  TargetSet s;
  if (d.empty()) {
    s = {Target::kV, Target::kO};
  } else if (!d.has(Role::kV)) {
    s = {Target::kOm, Target::kOr};
  } else {
    s = {Target::kDo, Target::kP, Target::kPo};
  }
  if (d.has(Role::kDo)) s.insert(Target::kDom);
  if (d.has(Role::kPo)) s.insert(Target::kPom);
  for (Role r : d.roles()) s.erase(target_of(r));
  return s;
}

std::vector<const TaskRow*> tasks_matching(const TaskTable& table, const AttributeSet& d,
                                           std::span<const AttributeSet> rejected) {
  std::vector<const TaskRow*> out;
  for (const TaskRow& row : table.rows()) {
    if (!d.subset_of(row.task)) continue;
    if (std::any_of(rejected.begin(), rejected.end(), [&](const AttributeSet& r) { return r.subset_of(row.task); })) {
      continue;
    }
    out.push_back(&row);
  }
  return out;
}

std::size_t distinct_functions(std::span<const TaskRow* const> rows) {
  std::set<std::string_view> ids;
  for (const TaskRow* row : rows) ids.insert(row->function_id);
  return ids.size();
}

Facet facet_for(const TaskTable& table, const AttributeSet& d, Target s, std::span<const AttributeSet> rejected) {
  if (!syntactic_targets(d).contains(s)) {
    throw Error(ErrorCode::kInvalidArgument,
                "target " + std::string(target_name(s)) + " is not a syntactic target of " + d.to_string());
  }
  struct Aggregate {
    std::set<std::string> functions;
    AttributeSet assignment;
    int preference = 0;
  };
  std::map<std::string, Aggregate> by_value;
  for (const TaskRow* row : tasks_matching(table, d, rejected)) {
    for (auto& c : contributions(row->task, d, s)) {
      auto [it, inserted] = by_value.try_emplace(c.value);
      Aggregate& agg = it->second;
      if (inserted || c.preference < agg.preference) {
        agg.assignment = c.assignment;
        agg.preference = c.preference;
      }
      agg.functions.insert(row->function_id);
    }
  }
  Facet facet;
  facet.target = s;
  for (auto& [value, agg] : by_value) {
    facet.options.push_back({value, agg.functions.size(), std::move(agg.assignment)});
  }
  std::stable_sort(facet.options.begin(), facet.options.end(),
                   [](const FacetOption& a, const FacetOption& b) { return a.support > b.support; });
  return facet;
}

namespace {

bool option_in_query(Target s, const FacetOption& opt, const Task& query) {
  switch (s) {
    case Target::kO:
      return query[Role::kDo] == opt.value || query[Role::kPo] == opt.value;
    case Target::kOm:
      return query[Role::kDom] == opt.value || query[Role::kPom] == opt.value;
    default:
      return opt.assignment.subset_of(query);
  }
}

}  // namespace

Inference infer_attributes(const SessionState& state) {
  Inference inf;
  inf.defined = state.accepted;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Target s : syntactic_targets(inf.defined).ordered()) {
      Facet facet = facet_for(state.task_table, inf.defined, s, state.rejected_sets);
      if (facet.empty()) continue;

      const FacetOption* pick = nullptr;
      bool from_query = false;
      if (state.query_task) {
        for (const auto& opt : facet.options) {
          if (option_in_query(s, opt, *state.query_task)) {
            pick = &opt;
            from_query = true;
            break;
          }
        }
      }
      if (pick == nullptr) {
        const FacetOption& top = facet.options.front();
        const std::size_t total =
            distinct_functions(tasks_matching(state.task_table, inf.defined, state.rejected_sets));
        const double confidence = total == 0 ? 0.0 : static_cast<double>(top.support) / static_cast<double>(total);
        if (top.support >= state.inference.min_support && confidence >= state.inference.min_confidence) {
          pick = &top;
        }
      }
      if (pick == nullptr) continue;

      inf.defined.merge(pick->assignment);
      inf.inferred.merge(pick->assignment);
      if (from_query) inf.from_query.merge(pick->assignment);
      changed = true;
      break;
    }
  }
  return inf;
}

std::optional<Selection> select_aspect(const SessionState& state, const AttributeSet& d) {
  std::optional<Selection> best;
  for (Target s : syntactic_targets(d).ordered()) {
    Facet facet = facet_for(state.task_table, d, s, state.rejected_sets);
    if (facet.empty()) continue;
    if (!best || facet.options.front().support > best->facet.options.front().support) {
      best = Selection{Aspect{s, d}, std::move(facet)};
    }
  }
  return best;
}

std::string_view question_kind_name(QuestionKind k) {
  return k == QuestionKind::kConfirmation ? "confirmation" : "elicitation";
}

std::string_view template_name(Template t) {
  static constexpr std::array<std::string_view, 5> kNames = {"T1", "T2", "T3", "T4", "T5"};
  return kNames[static_cast<std::size_t>(t) - 1];
}

std::vector<std::string> ClarifyingQuestion::option_values() const {
  std::vector<std::string> out;
  out.reserve(options.size());
  for (const auto& o : options) out.push_back(o.value);
  return out;
}

std::string join_options(std::span<const std::string> items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += items.size() == 2 ? " " : ", ";
    if (i > 0 && i + 1 == items.size()) out += "or ";
    out += items[i];
  }
  return out;
}

std::string gerund_phrase(const AttributeSet& attrs, const Lexicon& lex) { return phrase(attrs, lex, true); }

ClarifyingQuestion render_question(const Aspect& aspect, const Facet& facet, const SessionState& state) {
  const Lexicon& lex = state.lexicon != nullptr ? *state.lexicon : empty_lexicon();
  const AttributeSet& d = aspect.defined;

  ClarifyingQuestion cq;
  cq.aspect = aspect;
  const std::size_t shown = std::min(facet.options.size(), state.max_options);
  cq.options.assign(facet.options.begin(), facet.options.begin() + static_cast<std::ptrdiff_t>(shown));
  cq.kind = cq.options.size() <= 1 ? QuestionKind::kConfirmation : QuestionKind::kElicitation;

  if (cq.kind == QuestionKind::kConfirmation) {
    cq.confirmed = d;
    if (!cq.options.empty()) cq.confirmed.merge(cq.options.front().assignment);
    cq.matching_functions =
        partition_functions(state.task_table, cq.confirmed, state.rejected_sets).candidates.size();
    const AttributeSet unconfirmed = cq.confirmed.minus(state.accepted);
    bool from_query = false;
    if (state.query_task) {
      for (Role r : unconfirmed.roles()) from_query |= (*state.query_task)[r] == unconfirmed.get(r);
    }
    if (from_query && cq.confirmed.has(Role::kV)) {
      const bool one = cq.matching_functions == 1;
      cq.tmpl = Template::kT5;
      cq.text = "Found " + std::to_string(cq.matching_functions) + (one ? " function that specifically mentions "
                                                                          : " functions that specifically mention ") +
                gerund_phrase(cq.confirmed, lex) + ". Would you like to see " + (one ? "it" : "them") + " first?";
    } else if (cq.confirmed.has(Role::kV)) {
      cq.tmpl = Template::kT1;
      cq.text = "Are you interested in " + gerund_phrase(cq.confirmed, lex) + "?";
    } else {
      cq.tmpl = Template::kT2;
      cq.text = "Are you looking for " + phrase(cq.confirmed, lex, false) + "?";
    }
    return cq;
  }

  std::vector<std::string> values = cq.option_values();
  switch (aspect.target) {
    case Target::kV:
    case Target::kOr: {
      std::vector<std::string> phrases;
      for (const auto& opt : cq.options) {
        AttributeSet full = d;
        full.merge(opt.assignment);
        phrases.push_back(gerund_phrase(full, lex));
      }
      cq.tmpl = Template::kT1;
      cq.text = "Are you interested in doing " + any_of(phrases) + "?";
      break;
    }
    case Target::kDo:
    case Target::kPo: {
      const Role role = *concrete_role(aspect.target);
      const bool slot_fits = d.has(Role::kV) && (role == Role::kDo || d.has(Role::kP));
      if (slot_fits) {
        cq.tmpl = Template::kT1;
        cq.text = "Are you interested in " + phrase(d, lex, true, role, any_of(values)) + "?";
      } else {
        cq.tmpl = Template::kT2;
        cq.text = "Are you looking for " + any_of(values) + "?";
      }
      break;
    }
    case Target::kO:
      cq.tmpl = Template::kT2;
      cq.text = "Are you looking for " + any_of(values) + "?";
      break;
    case Target::kDom:
    case Target::kPom:
    case Target::kOm: {
      Role object = aspect.target == Target::kPom ? Role::kPo : Role::kDo;
      if (aspect.target == Target::kOm && !d.has(Role::kDo)) object = Role::kPo;
      const Role modifier = object == Role::kDo ? Role::kDom : Role::kPom;
      const std::string noun = d.has(object) ? d.get(object) : "item";
      AttributeSet rest = d;
      rest.erase(object);
      rest.erase(modifier);
      if (!rest.has(Role::kV)) rest = AttributeSet{};
      const std::string vp = gerund_phrase(rest, lex);
      cq.tmpl = Template::kT3;
      cq.text = "What kind of " + noun + " are you interested in" + (vp.empty() ? "" : " " + vp) + "?";
      break;
    }
    case Target::kP: {
      AttributeSet base;
      for (Role r : {Role::kV, Role::kDom, Role::kDo}) base.set(r, d.get(r));
      cq.tmpl = Template::kT4;
      cq.text = "How do you want to " + phrase(base, lex, false) + " (" + any_of(values) + ")?";
      break;
    }
  }
  return cq;
}

std::string_view answer_kind_name(Answer::Kind k) {
  switch (k) {
    case Answer::Kind::kSelected: return "selected";
    case Answer::Kind::kNoneOfThese: return "none";
    case Answer::Kind::kYes: return "yes";
    case Answer::Kind::kNo: return "no";
  }
  return "?";
}

SessionState apply_answer(SessionState state, const ClarifyingQuestion& cq, const Answer& answer) {
  const bool elicitation = cq.kind == QuestionKind::kElicitation;
  const bool elicitation_answer = answer.kind == Answer::Kind::kSelected || answer.kind == Answer::Kind::kNoneOfThese;
  if (elicitation != elicitation_answer) {
    throw Error(ErrorCode::kInvalidArgument, std::string("answer '") + std::string(answer_kind_name(answer.kind)) +
                                                 "' does not fit a " + std::string(question_kind_name(cq.kind)) +
                                                 " question");
  }
  switch (answer.kind) {
    case Answer::Kind::kSelected: {
      auto it = std::find_if(cq.options.begin(), cq.options.end(),
                             [&](const FacetOption& o) { return o.value == answer.option; });
      if (it == cq.options.end()) {
        throw Error(ErrorCode::kInvalidArgument, "option '" + answer.option + "' was not offered");
      }
      state.accepted.merge(cq.aspect.defined).merge(it->assignment);
      break;
    }
    case Answer::Kind::kNoneOfThese:
      for (const auto& opt : cq.options) {
        AttributeSet rejected = cq.aspect.defined;
        rejected.merge(opt.assignment);
        state.rejected_sets.push_back(std::move(rejected));
      }
      break;
    case Answer::Kind::kYes:
      state.accepted.merge(cq.confirmed);
      break;
    case Answer::Kind::kNo:
      state.rejected_sets.push_back(cq.confirmed);
      break;
  }
  ++state.round;
  return state;
}

Partition partition_functions(const TaskTable& table, const AttributeSet& accepted,
                              std::span<const AttributeSet> rejected) {
  Partition p;
  for (const auto& fid : table.function_ids()) {
    bool suitable = false;
    bool hit_rejected = false;
    for (const TaskRow* row : table.rows_for(fid)) {
      const bool rejected_here = std::any_of(rejected.begin(), rejected.end(),
                                             [&](const AttributeSet& r) { return r.subset_of(row->task); });
      hit_rejected |= rejected_here;
      suitable |= !rejected_here && accepted.subset_of(row->task);
    }
    if (suitable) {
      p.candidates.insert(fid);
    } else if (hit_rejected) {
      p.rejects.insert(fid);
    }
  }
  return p;
}

Partition partition_functions(const SessionState& state) {
  return partition_functions(state.task_table, state.accepted, state.rejected_sets);
}

std::optional<ClarifyingQuestion> next_round(const SessionState& state) {
  const Inference inf = infer_attributes(state);
  std::optional<Selection> sel = select_aspect(state, inf.defined);

  if (is_complete(state.accepted) && (!sel || sel->facet.options.size() < 2)) return std::nullopt;

  // A lone preposition makes no sense on its own; ask about its object.
  while (sel && sel->aspect.target == Target::kP && sel->facet.options.size() == 1) {
    AttributeSet with_p = sel->aspect.defined;
    with_p.merge(sel->facet.options.front().assignment);
    Facet objects = facet_for(state.task_table, with_p, Target::kPo, state.rejected_sets);
    if (objects.empty()) break;
    sel = Selection{Aspect{Target::kPo, with_p}, std::move(objects)};
  }
  if (sel) return render_question(sel->aspect, sel->facet, state);
  if (inf.inferred.empty()) return std::nullopt;

  // Nothing left to ask about: confirm what was inferred as one verb phrase.
  Facet facet;
  facet.target = Target::kOr;
  AttributeSet full = state.accepted;
  full.merge(inf.inferred);
  const std::size_t support = partition_functions(state.task_table, full, state.rejected_sets).candidates.size();
  facet.options.push_back({render_task(full.as_task()), support, inf.inferred});
  return render_question(Aspect{Target::kOr, state.accepted}, facet, state);
}

}  // namespace zacq
