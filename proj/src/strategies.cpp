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


#include "zacq/strategies.hpp"

#include <algorithm>

#include "zacq/error.hpp"
#include "zacq/lsi.hpp"

namespace zacq {
namespace {

std::optional<Question> neutral(const std::optional<ClarifyingQuestion>& cq) {
  if (!cq) return std::nullopt;
  Question q;
  q.kind = cq->kind;
  q.text = cq->text;
  if (cq->kind == QuestionKind::kElicitation) q.options = cq->option_values();
  q.template_id = std::string(template_name(cq->tmpl));
  q.target = std::string(target_name(cq->aspect.target));
  return q;
}

SessionState initial_state(const StrategyContext& ctx, bool use_query_task) {
  const Engine& engine = *ctx.engine;
  SessionState s;
  s.query_text = ctx.query;
  if (use_query_task) s.query_task = extract_query_task(ctx.query, engine.lexicon());
  s.query_vector = ctx.results.query_vector;
  const auto ids = ctx.results.ids();
  s.task_table = engine.task_table(ids);
  s.ranking = ctx.results;
  s.inference = ctx.config.inference;
  s.rocchio = ctx.config.rocchio;
  s.max_options = ctx.config.max_options;
  s.top_k = ctx.config.top_k;
  s.lexicon = &engine.lexicon();
  return s;
}

nlohmann::json attributes_json(const AttributeSet& a) {
  nlohmann::json j = nlohmann::json::object();
  for (Role r : a.roles()) j[std::string(role_name(r))] = a.get(r);
  return j;
}

nlohmann::json clarify_state_json(const SessionState& s) {
  nlohmann::json rejected = nlohmann::json::array();
  for (const auto& r : s.rejected_sets) rejected.push_back(attributes_json(r));
  return {{"accepted", attributes_json(s.accepted)}, {"rejected", rejected}, {"round", s.round}};
}

}  // namespace

ZacqStrategy::ZacqStrategy(const StrategyContext& ctx) : state_(initial_state(ctx, true)) { advance(); }

void ZacqStrategy::advance() {
  pending_ = next_round(state_);
  question_ = neutral(pending_);
}

Partition ZacqStrategy::preview(const Answer& answer) const {
  check_answer_fits(question_, answer);
  return partition_functions(apply_answer(state_, *pending_, answer));
}

Partition ZacqStrategy::apply(const Answer& answer) {
  check_answer_fits(question_, answer);
  state_ = apply_answer(std::move(state_), *pending_, answer);
  advance();
  return partition_functions(state_);
}

nlohmann::json ZacqStrategy::state_json() const {
  nlohmann::json j = clarify_state_json(state_);
  j["query_task"] = state_.query_task ? nlohmann::json(render_task(*state_.query_task)) : nlohmann::json();
  j["inferred"] = attributes_json(infer_attributes(state_).inferred);
  return j;
}

std::string_view vdo_phase_name(VdoStrategy::Phase p) {
  switch (p) {
    case VdoStrategy::Phase::kNeedVerb: return "need_verb";
    case VdoStrategy::Phase::kNeedObject: return "need_object";
    case VdoStrategy::Phase::kDone: return "done";
  }
  return "?";
}

VdoStrategy::VdoStrategy(const StrategyContext& ctx) : state_(initial_state(ctx, false)) { advance(); }

void VdoStrategy::advance() {
  pending_.reset();
  Aspect aspect;
  if (!state_.accepted.has(Role::kV)) {
    phase_ = Phase::kNeedVerb;
    aspect = Aspect{Target::kV, {}};
  } else if (!state_.accepted.has(Role::kDo)) {
    phase_ = Phase::kNeedObject;
    aspect = Aspect{Target::kDo, AttributeSet{{Role::kV, state_.accepted.get(Role::kV)}}};
  } else {
    phase_ = Phase::kDone;
  }
  if (phase_ != Phase::kDone) {
    Facet facet = facet_for(state_.task_table, aspect.defined, aspect.target, state_.rejected_sets);
    if (facet.empty()) {
      phase_ = Phase::kDone;
    } else {
      pending_ = render_question(aspect, facet, state_);
    }
  }
  question_ = neutral(pending_);
}

Partition VdoStrategy::preview(const Answer& answer) const {
  check_answer_fits(question_, answer);
  return partition_functions(apply_answer(state_, *pending_, answer));
}

Partition VdoStrategy::apply(const Answer& answer) {
  check_answer_fits(question_, answer);
  state_ = apply_answer(std::move(state_), *pending_, answer);
  advance();
  return partition_functions(state_);
}

nlohmann::json VdoStrategy::state_json() const {
  nlohmann::json j = clarify_state_json(state_);
  j["phase"] = vdo_phase_name(phase_);
  return j;
}

KwState kw_init(const Engine& engine, std::span<const std::string> results, const RefineConfig& config) {
  KwState state;
  state.results.assign(results.begin(), results.end());
  if (results.empty()) return state;

  const Index& index = engine.index();
  std::set<TermId> vocabulary;
  for (const auto& id : results) {
    for (TermId t : index.doc_terms(id)) vocabulary.insert(t);
  }
  const std::size_t dims = std::min({config.lsi_dims, results.size(), vocabulary.size()});
  const LsiModel model = lsi_fit(index, dims, results);
  state.pool = lsi_keywords(model, results, index, config.keyword_pool, &engine.lexicon().stopwords);

  const std::set<std::string> pool(state.pool.begin(), state.pool.end());
  for (const auto& id : results) {
    auto& kws = state.incidence[id];
    for (TermId t : index.doc_terms(id)) {
      if (pool.contains(index.term(t))) kws.insert(index.term(t));
    }
  }
  return state;
}

std::set<std::string> kw_working_set(const KwState& state) {
  std::set<std::string> out;
  for (const auto& id : state.results) {
    auto it = state.incidence.find(id);
    static const std::set<std::string> kEmpty;
    const auto& kws = it == state.incidence.end() ? kEmpty : it->second;
    const bool all_selected = std::includes(kws.begin(), kws.end(), state.selected.begin(), state.selected.end());
    const bool any_rejected =
        std::any_of(state.rejected.begin(), state.rejected.end(), [&](const auto& k) { return kws.contains(k); });
    if (all_selected && !any_rejected) out.insert(id);
  }
  return out;
}

std::vector<std::string> kw_suggest(const KwState& state, std::size_t n) {
  const std::set<std::string> working = kw_working_set(state);
  if (working.size() <= 1) return {};
  std::vector<std::pair<std::size_t, std::string>> scored;
  for (const auto& kw : state.pool) {
    if (state.selected.contains(kw) || state.rejected.contains(kw)) continue;
    std::size_t extent = 0;
    for (const auto& id : working) extent += state.incidence.at(id).contains(kw) ? 1 : 0;
    const std::size_t score = std::min(extent, working.size() - extent);
    if (score > 0) scored.emplace_back(score, kw);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  if (scored.size() > n) scored.resize(n);
  std::vector<std::string> out;
  for (auto& [score, kw] : scored) out.push_back(std::move(kw));
  return out;
}

Partition kw_partition(const KwState& state) {
  Partition p;
  if (!state.selected.empty()) p.candidates = kw_working_set(state);
  for (const auto& id : state.results) {
    const auto& kws = state.incidence.at(id);
    if (std::any_of(state.rejected.begin(), state.rejected.end(), [&](const auto& k) { return kws.contains(k); })) {
      p.rejects.insert(id);
    }
  }
  return p;
}

KwState kw_apply(KwState state, std::span<const std::string> shown, const Answer& answer) {
  auto offered = [&](const std::string& kw) { return std::find(shown.begin(), shown.end(), kw) != shown.end(); };
  switch (answer.kind) {
    case Answer::Kind::kSelected:
      if (!offered(answer.option)) {
        throw Error(ErrorCode::kInvalidArgument, "keyword '" + answer.option + "' was not offered");
      }
      state.selected.insert(answer.option);
      break;
    case Answer::Kind::kNoneOfThese:
      state.rejected.insert(shown.begin(), shown.end());
      break;
    case Answer::Kind::kYes:
    case Answer::Kind::kNo:
      if (shown.size() != 1) throw Error(ErrorCode::kInvalidArgument, "yes/no needs exactly one keyword shown");
      (answer.kind == Answer::Kind::kYes ? state.selected : state.rejected).insert(shown.front());
      break;
  }
  return state;
}

KwStrategy::KwStrategy(const StrategyContext& ctx)
    : state_(kw_init(*ctx.engine, ctx.results.ids(), ctx.config)), max_options_(ctx.config.max_options) {
  advance();
}

void KwStrategy::advance() {
  shown_ = kw_suggest(state_, max_options_);
  question_.reset();
  if (shown_.empty()) return;
  Question q;
  q.target = "keyword";
  if (shown_.size() == 1) {
    q.kind = QuestionKind::kConfirmation;
    q.text = "Are you looking for " + shown_.front() + "?";
  } else {
    q.kind = QuestionKind::kElicitation;
    q.text = "Are you looking for any of the following: " + join_options(shown_) + "?";
    q.options = shown_;
  }
  question_ = std::move(q);
}

Partition KwStrategy::preview(const Answer& answer) const {
  check_answer_fits(question_, answer);
  return kw_partition(kw_apply(state_, shown_, answer));
}

Partition KwStrategy::apply(const Answer& answer) {
  check_answer_fits(question_, answer);
  state_ = kw_apply(std::move(state_), shown_, answer);
  advance();
  return kw_partition(state_);
}

nlohmann::json KwStrategy::state_json() const {
  return {{"pool", state_.pool}, {"selected", state_.selected}, {"rejected", state_.rejected}};
}

}  // namespace zacq
