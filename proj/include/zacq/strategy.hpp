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


#ifndef ZACQ_STRATEGY_HPP_
#define ZACQ_STRATEGY_HPP_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "zacq/clarify.hpp"
#include "zacq/engine.hpp"

namespace zacq {

enum class Method { kZacq, kVdo, kKw };

std::string_view method_name(Method m);
// Throws Error(kUnknownMethod).
Method parse_method(std::string_view name);
// Comma-separated list, e.g. "zacq,vdo,kw".
std::vector<Method> parse_methods(std::string_view list);

struct RefineConfig {
  RocchioParams rocchio;
  InferenceParams inference;
  std::size_t max_options = 5;
  std::size_t top_k = Index::kDefaultTopK;
  std::size_t keyword_pool = 25;
  std::size_t lsi_dims = 10;

  void validate() const;
  friend bool operator==(const RefineConfig&, const RefineConfig&) = default;
};

nlohmann::json to_json(const RefineConfig& config);
RefineConfig refine_config_from_json(const nlohmann::json& j);

// What a user sees, whatever strategy produced it.
struct Question {
  QuestionKind kind = QuestionKind::kElicitation;
  std::string text;
  std::vector<std::string> options;  // empty for confirmations
  std::string template_id;           // "T1".."T5"; empty for keyword questions
  std::string target;                // syntactic target, or "keyword"

  friend bool operator==(const Question&, const Question&) = default;
};

nlohmann::json to_json(const Question& q);
nlohmann::json to_json(const Answer& a);
// Accepts {"kind":"selected","option":...}, {"kind":"none"|"yes"|"no"}.
Answer answer_from_json(const nlohmann::json& j);

// One refinement method. A strategy owns its dialogue state and turns
// answers into a candidate/reject partition of the result list; the session
// turns partitions into rankings.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual Method method() const = 0;
  virtual const std::optional<Question>& question() const = 0;
  // Partition the answer would produce, without applying it.
  virtual Partition preview(const Answer& answer) const = 0;
  // Throws Error(kState) when done, Error(kInvalidArgument) for answers that
  // do not fit the pending question.
  virtual Partition apply(const Answer& answer) = 0;
  virtual nlohmann::json state_json() const = 0;
};

struct StrategyContext {
  const Engine* engine = nullptr;
  std::string query;
  RankedResults results;  // initial ranking
  RefineConfig config;
};

std::unique_ptr<Strategy> make_strategy(Method method, const StrategyContext& ctx);

// Rocchio from the original query, then a cosine re-sort of the fixed
// result list. Every method reranks through here.
RankedResults refine_ranking(const VectorSpace& space, const SparseVector& query, const Partition& partition,
                             const RocchioParams& params, std::span<const std::string> results);

// Shared check for answers against a neutral question.
void check_answer_fits(const std::optional<Question>& question, const Answer& answer);

}  // namespace zacq

#endif  // ZACQ_STRATEGY_HPP_
