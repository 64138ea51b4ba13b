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


#ifndef ZACQ_SESSION_HPP_
#define ZACQ_SESSION_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "zacq/engine.hpp"
#include "zacq/strategy.hpp"

namespace zacq {

// One refinement dialogue: a query, its initial top-k results, a strategy,
// and the ranking after every answer.
class Session {
 public:
  static Session start(const Engine& engine, std::string query, Method method, const RefineConfig& config = {});
  // Rebuilds a session saved with to_json() by replaying its answers.
  static Session restore(const Engine& engine, const nlohmann::json& saved);

  Session(Session&&) noexcept = default;
  Session& operator=(Session&&) noexcept = default;

  const std::string& query() const noexcept { return query_; }
  Method method() const noexcept { return method_; }
  const RefineConfig& config() const noexcept { return config_; }
  const Strategy& strategy() const noexcept { return *strategy_; }

  const std::optional<Question>& question() const { return strategy_->question(); }
  bool done() const { return !strategy_->question().has_value(); }
  std::size_t round() const noexcept { return answers_.size(); }
  const std::vector<Answer>& answers() const noexcept { return answers_; }

  const RankedResults& initial_ranking() const noexcept { return initial_; }
  const RankedResults& ranking() const noexcept { return current_; }

  // Ranking the answer would produce.
  RankedResults preview(const Answer& answer) const;
  Partition preview_partition(const Answer& answer) const { return strategy_->preview(answer); }
  const RankedResults& answer(const Answer& answer);

  nlohmann::json to_json() const;
  nlohmann::json transcript() const;

 private:
  Session() = default;

  const Engine* engine_ = nullptr;
  std::string query_;
  Method method_ = Method::kZacq;
  RefineConfig config_;
  RankedResults initial_;
  RankedResults current_;
  std::unique_ptr<Strategy> strategy_;
  std::vector<Answer> answers_;
  nlohmann::json rounds_ = nlohmann::json::array();
};

}  // namespace zacq

#endif  // ZACQ_SESSION_HPP_
