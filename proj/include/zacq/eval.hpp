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


#ifndef ZACQ_EVAL_HPP_
#define ZACQ_EVAL_HPP_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "zacq/engine.hpp"
#include "zacq/session.hpp"
#include "zacq/strategy.hpp"

namespace zacq {

// function id -> rating in 1..4
using Ratings = std::map<std::string, int, std::less<>>;

inline constexpr int kRelevantRating = 3;
inline bool is_relevant(int rating) { return rating >= kRelevantRating; }

// Per-query ratings, queries kept in first-appearance order. The query text
// doubles as the query id.
class Judgments {
 public:
  void add(const std::string& query, const std::string& function_id, int rating);
  const std::vector<std::string>& queries() const noexcept { return order_; }
  const Ratings& ratings(std::string_view query) const;
  std::size_t size() const noexcept { return order_.size(); }

 private:
  std::vector<std::string> order_;
  std::map<std::string, Ratings, std::less<>> by_query_;
};

// CSV with header query_id (or query), function_id, rating. Quoted fields
// may contain commas and doubled quotes.
Judgments parse_judgments_csv(std::istream& in, std::string_view source = "<stream>");
Judgments load_judgments(const std::filesystem::path& path);

double reciprocal_rank(std::span<const std::string> ranking, const Ratings& ratings);
// Unrated results count as non-relevant. Throws Error(kInvalidArgument)
// when no relevant result is ranked.
double average_precision(std::span<const std::string> ranking, const Ratings& ratings);
// Linear gain, log2(i + 1) discount over the rated results only, compacted.
// Throws Error(kInvalidArgument) when nothing ranked is rated.
double ndcg_rated(std::span<const std::string> ranking, const Ratings& ratings);

struct Metrics {
  double rr = 0.0;
  double ap = 0.0;
  double ndcg = 0.0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

Metrics compute_metrics(std::span<const std::string> ranking, const Ratings& ratings);

struct FilterDecision {
  bool kept = false;
  std::string reason;  // empty when kept
};

FilterDecision filter_query(const Engine& engine, const std::string& query, const Ratings& ratings,
                            const RefineConfig& config);

// The relevant option leaving the fewest candidates (ties alphabetical);
// None/No when no option keeps a relevant function among the candidates.
Answer simulate_answer(const Session& session, const Ratings& ratings);

struct SessionRun {
  std::string query;
  Method method = Method::kZacq;
  std::vector<Metrics> rounds;  // index = round; [0] is the initial ranking
  bool done = false;
  nlohmann::json transcript;
};

inline constexpr std::size_t kDefaultMaxRounds = 10;

SessionRun run_session(const Engine& engine, Method method, const std::string& query, const Ratings& ratings,
                       const RefineConfig& config, std::size_t max_rounds = kDefaultMaxRounds);

struct RoundAggregate {
  std::size_t round = 0;
  std::size_t active = 0;  // sessions still refining at this round
  Metrics mean;            // finished sessions carry their last metrics forward
};

struct MethodReport {
  Method method = Method::kZacq;
  std::vector<RoundAggregate> rounds;
  std::vector<SessionRun> runs;
};

struct EvalReport {
  RefineConfig config;
  std::vector<std::string> queries;  // kept by the filter
  std::map<std::string, std::string> dropped;
  std::vector<MethodReport> methods;
  std::size_t max_rounds = kDefaultMaxRounds;
};

EvalReport evaluate(const Engine& engine, const Judgments& judgments, std::span<const Method> methods,
                    const RefineConfig& config, std::size_t max_rounds = kDefaultMaxRounds);

// method,round,queries,active,mrr,map,ndcg
void write_rounds_csv(const EvalReport& report, std::ostream& out);
// method,query,round,rr,ap,ndcg
void write_queries_csv(const EvalReport& report, std::ostream& out);
nlohmann::json report_json(const EvalReport& report);

enum class Metric { kMrr, kMap, kNdcg };
std::string_view metric_name(Metric m);
double metric_value(const Metrics& m, Metric which);

// Lists of values per parameter; omitted parameters keep their defaults.
// {"alpha":[...],"beta":[...],"gamma":[...],"min_support":[...],"min_confidence":[...]}
std::vector<RefineConfig> expand_grid(const nlohmann::json& grid, const RefineConfig& base = {});

struct GridCell {
  Method method = Method::kZacq;
  std::size_t round = 0;
  Metric metric = Metric::kMrr;
  std::size_t best_config = 0;  // index into GridResult::configs
  double value = 0.0;
};

struct GridResult {
  std::vector<RefineConfig> configs;
  std::vector<EvalReport> reports;  // one per config
  std::vector<GridCell> best;       // method x round x metric
};

// Throws Error(kInvalidArgument) on an empty grid.
GridResult grid_search(const Engine& engine, const Judgments& judgments, std::span<const Method> methods,
                       std::span<const RefineConfig> configs, std::size_t max_rounds = kDefaultMaxRounds);

// method,round,metric,value,config index and parameters
void write_grid_csv(const GridResult& result, std::ostream& out);
nlohmann::json grid_json(const GridResult& result);

}  // namespace zacq

#endif  // ZACQ_EVAL_HPP_
