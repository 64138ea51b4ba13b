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


#include "zacq/strategy.hpp"

#include <algorithm>

#include "zacq/error.hpp"
#include "zacq/strategies.hpp"

namespace zacq {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kZacq: return "zacq";
    case Method::kVdo: return "vdo";
    case Method::kKw: return "kw";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::kZacq, Method::kVdo, Method::kKw}) {
    if (method_name(m) == name) return m;
  }
  throw Error(ErrorCode::kUnknownMethod, "unknown method '" + std::string(name) + "' (expected zacq, vdo or kw)");
}

std::vector<Method> parse_methods(std::string_view list) {
  std::vector<Method> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    std::string_view item = list.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      Method m = parse_method(item);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    start = comma + 1;
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "no methods given");
  return out;
}

void RefineConfig::validate() const {
  rocchio.validate();
  if (inference.min_confidence < 0.0 || inference.min_confidence > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "min_confidence must lie in [0, 1]");
  }
  if (max_options < 1) throw Error(ErrorCode::kInvalidArgument, "max_options must be at least 1");
  if (top_k < 1) throw Error(ErrorCode::kInvalidArgument, "top_k must be at least 1");
  if (keyword_pool < 1 || lsi_dims < 1) {
    throw Error(ErrorCode::kInvalidArgument, "keyword_pool and lsi_dims must be at least 1");
  }
}

nlohmann::json to_json(const RefineConfig& c) {
  return {{"alpha", c.rocchio.alpha},
          {"beta", c.rocchio.beta},
          {"gamma", c.rocchio.gamma},
          {"clamp_negative", c.rocchio.clamp_negative},
          {"min_support", c.inference.min_support},
          {"min_confidence", c.inference.min_confidence},
          {"max_options", c.max_options},
          {"top_k", c.top_k},
          {"keyword_pool", c.keyword_pool},
          {"lsi_dims", c.lsi_dims}};
}

RefineConfig refine_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, "config must be a JSON object");
  RefineConfig c;
  try {
    c.rocchio.alpha = j.value("alpha", c.rocchio.alpha);
    c.rocchio.beta = j.value("beta", c.rocchio.beta);
    c.rocchio.gamma = j.value("gamma", c.rocchio.gamma);
    c.rocchio.clamp_negative = j.value("clamp_negative", c.rocchio.clamp_negative);
    c.inference.min_support = j.value("min_support", c.inference.min_support);
    c.inference.min_confidence = j.value("min_confidence", c.inference.min_confidence);
    c.max_options = j.value("max_options", c.max_options);
    c.top_k = j.value("top_k", c.top_k);
    c.keyword_pool = j.value("keyword_pool", c.keyword_pool);
    c.lsi_dims = j.value("lsi_dims", c.lsi_dims);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad config field: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json to_json(const Question& q) {
  nlohmann::json j = {{"kind", question_kind_name(q.kind)}, {"text", q.text}, {"options", q.options}};
  if (!q.template_id.empty()) j["template"] = q.template_id;
  j["target"] = q.target;
  return j;
}

nlohmann::json to_json(const Answer& a) {
  nlohmann::json j = {{"kind", answer_kind_name(a.kind)}};
  if (a.kind == Answer::Kind::kSelected) j["option"] = a.option;
  return j;
}

Answer answer_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "answer must be a JSON object");
  auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) {
    throw Error(ErrorCode::kInvalidArgument, "answer needs a string field 'kind'");
  }
  const std::string k = kind->get<std::string>();
  if (k == "selected") {
    auto opt = j.find("option");
    if (opt == j.end() || !opt->is_string() || opt->get<std::string>().empty()) {
      throw Error(ErrorCode::kInvalidArgument, "selected answer needs a non-empty 'option'");
    }
    return Answer::selected(opt->get<std::string>());
  }
  if (k == "none") return Answer::none();
  if (k == "yes") return Answer::yes();
  if (k == "no") return Answer::no();
  throw Error(ErrorCode::kInvalidArgument, "unknown answer kind '" + k + "'");
}

std::unique_ptr<Strategy> make_strategy(Method method, const StrategyContext& ctx) {
  if (ctx.engine == nullptr) throw Error(ErrorCode::kInvalidArgument, "strategy needs an engine");
  ctx.config.validate();
  switch (method) {
    case Method::kZacq: return std::make_unique<ZacqStrategy>(ctx);
    case Method::kVdo: return std::make_unique<VdoStrategy>(ctx);
    case Method::kKw: return std::make_unique<KwStrategy>(ctx);
  }
  throw Error(ErrorCode::kUnknownMethod, "unknown method");
}

RankedResults refine_ranking(const VectorSpace& space, const SparseVector& query, const Partition& partition,
                             const RocchioParams& params, std::span<const std::string> results) {
  return rerank(space, rocchio(query, partition.candidates, partition.rejects, params, space), results);
}

void check_answer_fits(const std::optional<Question>& question, const Answer& answer) {
  if (!question) throw Error(ErrorCode::kState, "refinement is already done");
  const bool elicitation = question->kind == QuestionKind::kElicitation;
  const bool elicitation_answer = answer.kind == Answer::Kind::kSelected || answer.kind == Answer::Kind::kNoneOfThese;
  if (elicitation != elicitation_answer) {
    throw Error(ErrorCode::kInvalidArgument, "answer '" + std::string(answer_kind_name(answer.kind)) +
                                                 "' does not fit a " + std::string(question_kind_name(question->kind)) +
                                                 " question");
  }
  if (answer.kind == Answer::Kind::kSelected &&
      std::find(question->options.begin(), question->options.end(), answer.option) == question->options.end()) {
    throw Error(ErrorCode::kInvalidArgument, "option '" + answer.option + "' was not offered");
  }
}

}  // namespace zacq
