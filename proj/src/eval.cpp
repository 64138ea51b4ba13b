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


#include "zacq/eval.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>

#include "zacq/error.hpp"
#include "zacq/strategies.hpp"

namespace zacq {
namespace {

std::vector<std::string> split_csv_line(const std::string& line, std::string_view source, std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back().push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back().push_back(c);
    }
  }
  if (quoted) {
    throw Error(ErrorCode::kParse, std::string(source) + ":" + std::to_string(line_no) + ": unterminated quote");
  }
  for (auto& f : fields) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return fields;
}

std::size_t column_of(const std::vector<std::string>& header, std::initializer_list<std::string_view> names,
                      std::string_view source) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    for (auto n : names) {
      if (header[i] == n) return i;
    }
  }
  throw Error(ErrorCode::kParse, std::string(source) + ": header lacks column '" + std::string(*names.begin()) + "'");
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json metrics_json(const Metrics& m) { return {{"rr", m.rr}, {"ap", m.ap}, {"ndcg", m.ndcg}}; }

// Runs fn(i) for i in [0, n) on a small worker pool; results are written by
// index so the outcome never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn fn) {
  const std::size_t workers = std::min<std::size_t>(n, std::max(1U, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void Judgments::add(const std::string& query, const std::string& function_id, int rating) {
  if (query.empty() || function_id.empty()) throw Error(ErrorCode::kInvalidArgument, "empty query or function id");
  if (rating < 1 || rating > 4) {
    throw Error(ErrorCode::kInvalidArgument, "rating " + std::to_string(rating) + " outside 1..4");
  }
  auto [it, inserted] = by_query_.try_emplace(query);
  if (inserted) order_.push_back(query);
  it->second[function_id] = rating;
}

const Ratings& Judgments::ratings(std::string_view query) const {
  static const Ratings kNone;
  auto it = by_query_.find(query);
  return it == by_query_.end() ? kNone : it->second;
}

Judgments parse_judgments_csv(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) header = split_csv_line(line, source, line_no);
  }
  if (header.empty()) throw Error(ErrorCode::kParse, std::string(source) + ": missing header");
  const std::size_t qc = column_of(header, {"query_id", "query"}, source);
  const std::size_t fc = column_of(header, {"function_id", "function", "id"}, source);
  const std::size_t rc = column_of(header, {"rating", "relevance"}, source);

  Judgments j;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_csv_line(line, source, line_no);
    const auto where = std::string(source) + ":" + std::to_string(line_no);
    if (fields.size() <= std::max({qc, fc, rc})) throw Error(ErrorCode::kParse, where + ": too few columns");
    int rating = 0;
    try {
      std::size_t used = 0;
      rating = std::stoi(fields[rc], &used);
      if (used != fields[rc].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, where + ": rating '" + fields[rc] + "' is not an integer");
    }
    try {
      j.add(fields[qc], fields[fc], rating);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, where + ": " + e.what());
    }
  }
  return j;
}

Judgments load_judgments(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open judgments file " + path.string());
  return parse_judgments_csv(in, path.string());
}

double reciprocal_rank(std::span<const std::string> ranking, const Ratings& ratings) {
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    auto it = ratings.find(ranking[i]);
    if (it != ratings.end() && is_relevant(it->second)) return 1.0 / static_cast<double>(i + 1);
  }
  return 0.0;
}

double average_precision(std::span<const std::string> ranking, const Ratings& ratings) {
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    auto it = ratings.find(ranking[i]);
    if (it == ratings.end() || !is_relevant(it->second)) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  if (hits == 0) throw Error(ErrorCode::kInvalidArgument, "average precision needs a ranked relevant result");
  return sum / static_cast<double>(hits);
}

double ndcg_rated(std::span<const std::string> ranking, const Ratings& ratings) {
  std::vector<int> gains;
  for (const auto& id : ranking) {
    auto it = ratings.find(id);
    if (it != ratings.end()) gains.push_back(it->second);
  }
  if (gains.empty()) throw Error(ErrorCode::kInvalidArgument, "ndcg needs a ranked rated result");
  auto dcg = [](const std::vector<int>& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g[i] / std::log2(static_cast<double>(i) + 2.0);
    return s;
  };
  std::vector<int> ideal = gains;
  std::sort(ideal.rbegin(), ideal.rend());
  return dcg(gains) / dcg(ideal);
}

Metrics compute_metrics(std::span<const std::string> ranking, const Ratings& ratings) {
  return {reciprocal_rank(ranking, ratings), average_precision(ranking, ratings), ndcg_rated(ranking, ratings)};
}

FilterDecision filter_query(const Engine& engine, const std::string& query, const Ratings& ratings,
                            const RefineConfig& config) {
  const RankedResults results = engine.search(query, config.top_k);
  const auto ids = results.ids();

  std::vector<int> rated;
  for (const auto& id : ids) {
    if (auto it = ratings.find(id); it != ratings.end()) rated.push_back(it->second);
  }
  if (rated.size() < 3) return {false, "fewer than 3 rated results"};

  const KwState kw = kw_init(engine, ids, config);
  const bool has_anchor = std::any_of(ids.begin(), ids.end(), [&](const std::string& id) {
    auto it = ratings.find(id);
    return it != ratings.end() && is_relevant(it->second) && !engine.tasks_of(id).empty() &&
           !kw.incidence.at(id).empty();
  });
  if (!has_anchor) return {false, "no relevant result with both a task and a keyword"};

  if (std::is_sorted(rated.begin(), rated.end(), std::greater<>())) return {false, "ratings already in order"};
  return {true, {}};
}

Answer simulate_answer(const Session& session, const Ratings& ratings) {
  const auto& q = session.question();
  if (!q) throw Error(ErrorCode::kState, "no question to answer");
  auto relevant_among = [&](const Partition& p) {
    return std::any_of(p.candidates.begin(), p.candidates.end(), [&](const std::string& id) {
      auto it = ratings.find(id);
      return it != ratings.end() && is_relevant(it->second);
    });
  };
  if (q->kind == QuestionKind::kConfirmation) {
    return relevant_among(session.preview_partition(Answer::yes())) ? Answer::yes() : Answer::no();
  }
  const std::string* best = nullptr;
  std::size_t best_size = 0;
  for (const auto& opt : q->options) {
    const Partition p = session.preview_partition(Answer::selected(opt));
    if (!relevant_among(p)) continue;
    if (best == nullptr || p.candidates.size() < best_size ||
        (p.candidates.size() == best_size && opt < *best)) {
      best = &opt;
      best_size = p.candidates.size();
    }
  }
  return best == nullptr ? Answer::none() : Answer::selected(*best);
}

SessionRun run_session(const Engine& engine, Method method, const std::string& query, const Ratings& ratings,
                       const RefineConfig& config, std::size_t max_rounds) {
  SessionRun run;
  run.query = query;
  run.method = method;
  Session session = Session::start(engine, query, method, config);
  run.rounds.push_back(compute_metrics(session.ranking().ids(), ratings));
  while (!session.done() && session.round() < max_rounds) {
    session.answer(simulate_answer(session, ratings));
    run.rounds.push_back(compute_metrics(session.ranking().ids(), ratings));
  }
  run.done = session.done();
  run.transcript = session.transcript();
  return run;
}

EvalReport evaluate(const Engine& engine, const Judgments& judgments, std::span<const Method> methods,
                    const RefineConfig& config, std::size_t max_rounds) {
  config.validate();
  EvalReport report;
  report.config = config;
  report.max_rounds = max_rounds;
  for (const auto& q : judgments.queries()) {
    FilterDecision d = filter_query(engine, q, judgments.ratings(q), config);
    if (d.kept) {
      report.queries.push_back(q);
    } else {
      report.dropped.emplace(q, std::move(d.reason));
    }
  }

  const std::size_t nq = report.queries.size();
  std::vector<SessionRun> runs(methods.size() * nq);
  parallel_for(runs.size(), [&](std::size_t i) {
    const std::string& q = report.queries[i % nq];
    runs[i] = run_session(engine, methods[i / nq], q, judgments.ratings(q), config, max_rounds);
  });

  for (std::size_t m = 0; m < methods.size(); ++m) {
    MethodReport mr;
    mr.method = methods[m];
    mr.runs.assign(std::make_move_iterator(runs.begin() + static_cast<std::ptrdiff_t>(m * nq)),
                   std::make_move_iterator(runs.begin() + static_cast<std::ptrdiff_t>((m + 1) * nq)));
    std::size_t last = 0;
    for (const auto& r : mr.runs) last = std::max(last, r.rounds.size() - 1);
    for (std::size_t round = 0; round <= last && nq > 0; ++round) {
      RoundAggregate agg;
      agg.round = round;
      for (const auto& r : mr.runs) {
        const Metrics& m_r = r.rounds[std::min(round, r.rounds.size() - 1)];
        if (round < r.rounds.size()) ++agg.active;
        agg.mean.rr += m_r.rr;
        agg.mean.ap += m_r.ap;
        agg.mean.ndcg += m_r.ndcg;
      }
      const auto n = static_cast<double>(nq);
      agg.mean = {agg.mean.rr / n, agg.mean.ap / n, agg.mean.ndcg / n};
      mr.rounds.push_back(agg);
    }
    report.methods.push_back(std::move(mr));
  }
  return report;
}

void write_rounds_csv(const EvalReport& report, std::ostream& out) {
  out << "method,round,queries,active,mrr,map,ndcg\n";
  for (const auto& mr : report.methods) {
    for (const auto& r : mr.rounds) {
      out << method_name(mr.method) << ',' << r.round << ',' << report.queries.size() << ',' << r.active << ','
          << fixed6(r.mean.rr) << ',' << fixed6(r.mean.ap) << ',' << fixed6(r.mean.ndcg) << '\n';
    }
  }
}

void write_queries_csv(const EvalReport& report, std::ostream& out) {
  out << "method,query,round,rr,ap,ndcg\n";
  for (const auto& mr : report.methods) {
    for (const auto& run : mr.runs) {
      for (std::size_t i = 0; i < run.rounds.size(); ++i) {
        const Metrics& m = run.rounds[i];
        out << method_name(mr.method) << ',' << csv_field(run.query) << ',' << i << ',' << fixed6(m.rr) << ','
            << fixed6(m.ap) << ',' << fixed6(m.ndcg) << '\n';
      }
    }
  }
}

nlohmann::json report_json(const EvalReport& report) {
  nlohmann::json methods = nlohmann::json::array();
  for (const auto& mr : report.methods) {
    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& r : mr.rounds) {
      rounds.push_back({{"round", r.round},
                        {"active", r.active},
                        {"mrr", r.mean.rr},
                        {"map", r.mean.ap},
                        {"ndcg", r.mean.ndcg}});
    }
    nlohmann::json sessions = nlohmann::json::array();
    for (const auto& run : mr.runs) {
      nlohmann::json per_round = nlohmann::json::array();
      for (const auto& m : run.rounds) per_round.push_back(metrics_json(m));
      sessions.push_back({{"query", run.query}, {"done", run.done}, {"rounds", per_round}});
    }
    methods.push_back({{"method", method_name(mr.method)}, {"rounds", rounds}, {"sessions", sessions}});
  }
  return {{"config", to_json(report.config)},
          {"max_rounds", report.max_rounds},
          {"queries", report.queries},
          {"dropped", report.dropped},
          {"methods", methods}};
}

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::kMrr: return "mrr";
    case Metric::kMap: return "map";
    case Metric::kNdcg: return "ndcg";
  }
  return "?";
}

double metric_value(const Metrics& m, Metric which) {
  switch (which) {
    case Metric::kMrr: return m.rr;
    case Metric::kMap: return m.ap;
    case Metric::kNdcg: return m.ndcg;
  }
  return 0.0;
}

std::vector<RefineConfig> expand_grid(const nlohmann::json& grid, const RefineConfig& base) {
  if (!grid.is_object()) throw Error(ErrorCode::kParse, "grid must be a JSON object of value lists");
  static constexpr std::array<std::string_view, 5> kKeys = {"alpha", "beta", "gamma", "min_support",
                                                            "min_confidence"};
  for (const auto& [key, value] : grid.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw Error(ErrorCode::kParse, "unknown grid parameter '" + key + "'");
    }
    if (!value.is_array() || value.empty()) {
      throw Error(ErrorCode::kParse, "grid parameter '" + key + "' needs a non-empty list");
    }
  }
  std::vector<RefineConfig> configs{base};
  for (auto key : kKeys) {
    auto it = grid.find(std::string(key));
    if (it == grid.end()) continue;
    std::vector<RefineConfig> next;
    for (const auto& c : configs) {
      for (const auto& v : *it) {
        if (!v.is_number()) throw Error(ErrorCode::kParse, "grid parameter '" + std::string(key) + "' must be numeric");
        RefineConfig x = c;
        if (key == "alpha") x.rocchio.alpha = v.get<double>();
        if (key == "beta") x.rocchio.beta = v.get<double>();
        if (key == "gamma") x.rocchio.gamma = v.get<double>();
        if (key == "min_support") {
          if (!v.is_number_integer() || v.get<long long>() < 0) throw Error(ErrorCode::kParse, "min_support values must be non-negative integers");
          x.inference.min_support = v.get<std::size_t>();
        }
        if (key == "min_confidence") x.inference.min_confidence = v.get<double>();
        x.validate();
        next.push_back(x);
      }
    }
    configs = std::move(next);
  }
  return configs;
}

GridResult grid_search(const Engine& engine, const Judgments& judgments, std::span<const Method> methods,
                       std::span<const RefineConfig> configs, std::size_t max_rounds) {
  if (configs.empty()) throw Error(ErrorCode::kInvalidArgument, "grid search needs at least one configuration");
  GridResult result;
  result.configs.assign(configs.begin(), configs.end());
  for (const auto& c : configs) result.reports.push_back(evaluate(engine, judgments, methods, c, max_rounds));

  for (std::size_t m = 0; m < methods.size(); ++m) {
    std::size_t last = 0;
    for (const auto& rep : result.reports) {
      if (!rep.methods[m].rounds.empty()) last = std::max(last, rep.methods[m].rounds.size() - 1);
    }
    for (std::size_t round = 0; round <= last; ++round) {
      for (Metric metric : {Metric::kMrr, Metric::kMap, Metric::kNdcg}) {
        GridCell cell{methods[m], round, metric, 0, -1.0};
        for (std::size_t c = 0; c < result.reports.size(); ++c) {
          const auto& rounds = result.reports[c].methods[m].rounds;
          if (rounds.empty()) continue;
          const double v = metric_value(rounds[std::min(round, rounds.size() - 1)].mean, metric);
          if (v > cell.value) {
            cell.value = v;
            cell.best_config = c;
          }
        }
        result.best.push_back(cell);
      }
    }
  }
  return result;
}

void write_grid_csv(const GridResult& result, std::ostream& out) {
  out << "method,round,metric,value,config,alpha,beta,gamma,min_support,min_confidence\n";
  for (const auto& cell : result.best) {
    const RefineConfig& c = result.configs[cell.best_config];
    out << method_name(cell.method) << ',' << cell.round << ',' << metric_name(cell.metric) << ','
        << fixed6(cell.value) << ',' << cell.best_config << ',' << fixed6(c.rocchio.alpha) << ','
        << fixed6(c.rocchio.beta) << ',' << fixed6(c.rocchio.gamma) << ',' << c.inference.min_support << ','
        << fixed6(c.inference.min_confidence) << '\n';
  }
}

nlohmann::json grid_json(const GridResult& result) {
  nlohmann::json configs = nlohmann::json::array();
  for (const auto& c : result.configs) configs.push_back(to_json(c));
  nlohmann::json best = nlohmann::json::array();
  for (const auto& cell : result.best) {
    best.push_back({{"method", method_name(cell.method)},
                    {"round", cell.round},
                    {"metric", metric_name(cell.metric)},
                    {"value", cell.value},
                    {"config", cell.best_config}});
  }
  nlohmann::json matrix = nlohmann::json::array();
  for (const auto& rep : result.reports) matrix.push_back(report_json(rep));
  return {{"configs", configs}, {"best", best}, {"reports", matrix}};
}

}  // namespace zacq
