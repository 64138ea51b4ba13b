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


#ifndef ZACQ_STRATEGIES_HPP_
#define ZACQ_STRATEGIES_HPP_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "zacq/clarify.hpp"
#include "zacq/strategy.hpp"

namespace zacq {

class ZacqStrategy final : public Strategy {
 public:
  explicit ZacqStrategy(const StrategyContext& ctx);

  Method method() const override { return Method::kZacq; }
  const std::optional<Question>& question() const override { return question_; }
  Partition preview(const Answer& answer) const override;
  Partition apply(const Answer& answer) override;
  nlohmann::json state_json() const override;

  const SessionState& state() const noexcept { return state_; }
  const std::optional<ClarifyingQuestion>& pending() const noexcept { return pending_; }

 private:
  void advance();

  SessionState state_;
  std::optional<ClarifyingQuestion> pending_;
  std::optional<Question> question_;
};

// Verb, then direct object; never infers anything.
class VdoStrategy final : public Strategy {
 public:
  enum class Phase { kNeedVerb, kNeedObject, kDone };

  explicit VdoStrategy(const StrategyContext& ctx);

  Method method() const override { return Method::kVdo; }
  const std::optional<Question>& question() const override { return question_; }
  Partition preview(const Answer& answer) const override;
  Partition apply(const Answer& answer) override;
  nlohmann::json state_json() const override;

  Phase phase() const noexcept { return phase_; }

 private:
  void advance();

  SessionState state_;
  Phase phase_ = Phase::kNeedVerb;
  std::optional<ClarifyingQuestion> pending_;
  std::optional<Question> question_;
};

std::string_view vdo_phase_name(VdoStrategy::Phase p);

// Keyword recommender state: an LSI keyword pool over the results and the
// keywords each result contains.
struct KwState {
  std::vector<std::string> results;  // initial ranking order
  std::vector<std::string> pool;
  std::map<std::string, std::set<std::string>> incidence;  // function -> pool keywords
  std::set<std::string> selected;
  std::set<std::string> rejected;
};

KwState kw_init(const Engine& engine, std::span<const std::string> results, const RefineConfig& config);
// Results holding every selected keyword and no rejected one.
std::set<std::string> kw_working_set(const KwState& state);
// Up to n keywords whose extents split the working set most evenly; empty
// once no keyword tells the remaining functions apart.
std::vector<std::string> kw_suggest(const KwState& state, std::size_t n);
// Rejects: results holding any rejected keyword. Candidates: once something
// is selected, the working set (which never holds a reject).
Partition kw_partition(const KwState& state);
// Throws Error(kInvalidArgument) for keywords that were not shown.
KwState kw_apply(KwState state, std::span<const std::string> shown, const Answer& answer);

class KwStrategy final : public Strategy {
 public:
  explicit KwStrategy(const StrategyContext& ctx);

  Method method() const override { return Method::kKw; }
  const std::optional<Question>& question() const override { return question_; }
  Partition preview(const Answer& answer) const override;
  Partition apply(const Answer& answer) override;
  nlohmann::json state_json() const override;

  const KwState& state() const noexcept { return state_; }

 private:
  void advance();

  KwState state_;
  std::size_t max_options_;
  std::vector<std::string> shown_;
  std::optional<Question> question_;
};

}  // namespace zacq

#endif  // ZACQ_STRATEGIES_HPP_
