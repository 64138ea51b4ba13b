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


#include "zacq/session.hpp"

#include "zacq/error.hpp"

namespace zacq {
namespace {

constexpr int kSessionFormatVersion = 1;

nlohmann::json question_or_null(const std::optional<Question>& q) { return q ? to_json(*q) : nlohmann::json(); }

}  // namespace

Session Session::start(const Engine& engine, std::string query, Method method, const RefineConfig& config) {
  config.validate();
  Session s;
  s.engine_ = &engine;
  s.query_ = std::move(query);
  s.method_ = method;
  s.config_ = config;
  s.initial_ = engine.search(s.query_, config.top_k);
  s.current_ = s.initial_;
  s.strategy_ = make_strategy(method, StrategyContext{&engine, s.query_, s.initial_, config});
  s.rounds_.push_back({{"round", 0}, {"question", question_or_null(s.question())}, {"ranking", s.current_.ids()}});
  return s;
}

Session Session::restore(const Engine& engine, const nlohmann::json& saved) {
  try {
    if (saved.at("version").get<int>() != kSessionFormatVersion) {
      throw Error(ErrorCode::kParse, "unsupported session format version");
    }
    Session s = start(engine, saved.at("query").get<std::string>(), parse_method(saved.at("method").get<std::string>()),
                      refine_config_from_json(saved.at("config")));
    for (const auto& a : saved.at("answers")) s.answer(answer_from_json(a));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed saved session: ") + e.what());
  }
}

RankedResults Session::preview(const Answer& answer) const {
  return refine_ranking(engine_->space(), initial_.query_vector, strategy_->preview(answer), config_.rocchio,
                        initial_.ids());
}

const RankedResults& Session::answer(const Answer& answer) {
  const Partition partition = strategy_->apply(answer);
  current_ = refine_ranking(engine_->space(), initial_.query_vector, partition, config_.rocchio, initial_.ids());
  answers_.push_back(answer);
  rounds_.push_back({{"round", answers_.size()},
                     {"answer", zacq::to_json(answer)},
                     {"candidates", partition.candidates},
                     {"rejects", partition.rejects},
                     {"question", question_or_null(question())},
                     {"ranking", current_.ids()}});
  return current_;
}

nlohmann::json Session::to_json() const {
  nlohmann::json answers = nlohmann::json::array();
  for (const auto& a : answers_) answers.push_back(zacq::to_json(a));
  return {{"version", kSessionFormatVersion},
          {"query", query_},
          {"method", method_name(method_)},
          {"config", zacq::to_json(config_)},
          {"answers", answers}};
}

nlohmann::json Session::transcript() const {
  return {{"query", query_},
          {"method", method_name(method_)},
          {"rounds", rounds_},
          {"done", done()},
          {"state", strategy_->state_json()}};
}

}  // namespace zacq
