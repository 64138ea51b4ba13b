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

#include "zacq/vecsearch.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "zacq/error.hpp"

namespace zacq {

using nlohmann::json;

SparseVector::SparseVector(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (const auto& e : entries) {
    if (!entries_.empty() && entries_.back().first == e.first) {
      entries_.back().second += e.second;
    } else {
      entries_.push_back(e);
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return e.second == 0.0; });
}

double SparseVector::get(TermId id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const Entry& e, TermId t) { return e.first < t; });
  return it != entries_.end() && it->first == id ? it->second : 0.0;
}

double SparseVector::dot(const SparseVector& other) const {
  double sum = 0.0;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      sum += a->second * b->second;
      ++a;
      ++b;
    }
  }
  return sum;
}

double SparseVector::norm() const { return std::sqrt(dot(*this)); }

SparseVector& SparseVector::scale(double factor) {
  if (factor == 0.0) {
    entries_.clear();
    return *this;
  }
  for (auto& e : entries_) e.second *= factor;
  return *this;
}

SparseVector& SparseVector::add_scaled(const SparseVector& other, double factor) {
  if (factor == 0.0 || other.empty()) return *this;
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      merged.emplace_back(b->first, factor * b->second);
      ++b;
    } else {
      merged.emplace_back(a->first, a->second + factor * b->second);
      ++a;
      ++b;
    }
  }
  std::erase_if(merged, [](const Entry& e) { return e.second == 0.0; });
  entries_ = std::move(merged);
  return *this;
}

SparseVector& SparseVector::clamp_negative() {
  std::erase_if(entries_, [](const Entry& e) { return e.second <= 0.0; });
  return *this;
}

double cosine(const SparseVector& a, const SparseVector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

namespace {

SparseVector weigh(const std::map<TermId, int>& counts, const std::vector<double>& idf) {
  std::vector<SparseVector::Entry> entries;
  entries.reserve(counts.size());
  for (const auto& [id, count] : counts) entries.emplace_back(id, std::log1p(count) * idf[id]);
  SparseVector v(std::move(entries));
  const double n = v.norm();
  if (n > 0.0) v.scale(1.0 / n);
  return v;
}

}  // namespace

std::vector<std::string> Index::document_terms(const FunctionDoc& doc) {
  std::vector<std::string> terms = split_identifier(doc.name);
  for (auto& t : word_tokens(normalize_comment(doc.comment, false))) terms.push_back(std::move(t));
  for (auto& t : word_tokens(doc.code)) terms.push_back(std::move(t));
  return terms;
}

Index Index::build(const Corpus& corpus) {
  if (corpus.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot index an empty corpus");
  Index index;
  std::vector<std::map<TermId, int>> counts(corpus.size());
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    const FunctionDoc& doc = corpus.docs()[d];
    index.doc_ids_.push_back(doc.id);
    for (const auto& term : document_terms(doc)) {
      auto [it, inserted] = index.term_ids_.try_emplace(term, static_cast<TermId>(index.terms_.size()));
      if (inserted) index.terms_.push_back(term);
      ++counts[d][it->second];
    }
  }
  std::vector<int> df(index.terms_.size(), 0);
  for (const auto& c : counts) {
    for (const auto& [id, n] : c) ++df[id];
  }
  const double n_docs = static_cast<double>(corpus.size());
  index.idf_.resize(df.size());
  for (std::size_t t = 0; t < df.size(); ++t) {
    index.idf_[t] = std::max(kIdfFloor, std::log(n_docs / df[t]));
  }
  for (const auto& c : counts) index.doc_vectors_.push_back(weigh(c, index.idf_));
  index.rebuild_lookups();
  return index;
}

void Index::rebuild_lookups() {
  term_ids_.clear();
  for (std::size_t t = 0; t < terms_.size(); ++t) term_ids_.emplace(terms_[t], static_cast<TermId>(t));
  doc_pos_.clear();
  for (std::size_t d = 0; d < doc_ids_.size(); ++d) doc_pos_.emplace(doc_ids_[d], d);
}

const SparseVector* Index::doc_vector(std::string_view function_id) const {
  auto pos = doc_position(function_id);
  return pos ? &doc_vectors_[*pos] : nullptr;
}

SparseVector Index::embed_query(std::string_view text) const {
  std::map<TermId, int> counts;
  for (const auto& tok : word_tokens(text)) {
    if (auto id = term_id(tok)) ++counts[*id];
  }
  return weigh(counts, idf_);
}

std::optional<TermId> Index::term_id(std::string_view term) const {
  auto it = term_ids_.find(std::string(term));
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Index::doc_position(std::string_view function_id) const {
  auto it = doc_pos_.find(std::string(function_id));
  if (it == doc_pos_.end()) return std::nullopt;
  return it->second;
}

std::vector<TermId> Index::doc_terms(std::string_view function_id) const {
  std::vector<TermId> out;
  if (const SparseVector* v = doc_vector(function_id)) {
    for (const auto& [id, w] : v->entries()) out.push_back(id);
  }
  return out;
}

void Index::save(std::ostream& out) const {
  json docs = json::array();
  for (std::size_t d = 0; d < doc_ids_.size(); ++d) {
    json entries = json::array();
    for (const auto& [id, w] : doc_vectors_[d].entries()) entries.push_back({id, w});
    docs.push_back({{"id", doc_ids_[d]}, {"vector", std::move(entries)}});
  }
  json root = {{"format", "zacq-index"}, {"version", 1}, {"top_k", top_k_},
               {"terms", terms_},        {"idf", idf_},  {"docs", std::move(docs)}};
  out << root.dump() << '\n';
}

Index Index::load(std::istream& in) {
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed index: ") + e.what());
  }
  if (root.value("format", "") != "zacq-index") throw Error(ErrorCode::kParse, "not a zacq index file");
  Index index;
  try {
    index.top_k_ = root.at("top_k").get<std::size_t>();
    index.terms_ = root.at("terms").get<std::vector<std::string>>();
    index.idf_ = root.at("idf").get<std::vector<double>>();
    for (const auto& d : root.at("docs")) {
      index.doc_ids_.push_back(d.at("id").get<std::string>());
      std::vector<SparseVector::Entry> entries;
      for (const auto& e : d.at("vector")) entries.emplace_back(e.at(0).get<TermId>(), e.at(1).get<double>());
      index.doc_vectors_.emplace_back(std::move(entries));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed index: ") + e.what());
  }
  if (index.idf_.size() != index.terms_.size()) throw Error(ErrorCode::kParse, "index idf/terms size mismatch");
  index.rebuild_lookups();
  return index;
}

DenseEmbeddings DenseEmbeddings::load(std::istream& in) {
  DenseEmbeddings emb;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kParse, "embeddings line " + std::to_string(line_no) + ": missing tab");
    }
    std::string key = line.substr(0, tab);
    std::istringstream values(line.substr(tab + 1));
    std::vector<SparseVector::Entry> entries;
    double x = 0.0;
    for (TermId dim = 0; values >> x; ++dim) entries.emplace_back(dim, x);
    SparseVector v(std::move(entries));
    if (key.rfind("query:", 0) == 0) {
      emb.queries_[key.substr(6)] = std::move(v);
    } else {
      if (emb.docs_.contains(key)) {
        throw Error(ErrorCode::kParse, "embeddings line " + std::to_string(line_no) + ": duplicate id " + key);
      }
      emb.doc_ids_.push_back(key);
      emb.docs_.emplace(std::move(key), std::move(v));
    }
  }
  return emb;
}

const SparseVector* DenseEmbeddings::doc_vector(std::string_view function_id) const {
  auto it = docs_.find(std::string(function_id));
  return it == docs_.end() ? nullptr : &it->second;
}

SparseVector DenseEmbeddings::embed_query(std::string_view text) const {
  auto it = queries_.find(std::string(text));
  if (it == queries_.end()) throw Error(ErrorCode::kNotFound, "no embedding for query '" + std::string(text) + "'");
  return it->second;
}

std::vector<std::string> RankedResults::ids() const {
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item.function_id);
  return out;
}

std::optional<std::size_t> RankedResults::rank_of(std::string_view function_id) const {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].function_id == function_id) return i + 1;
  }
  return std::nullopt;
}

namespace {

void sort_ranking(std::vector<ScoredDoc>& items) {
  std::sort(items.begin(), items.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.function_id < b.function_id;
  });
}

ScoredDoc score(const VectorSpace& space, const SparseVector& query, const std::string& id) {
  const SparseVector* v = space.doc_vector(id);
  if (v == nullptr) throw Error(ErrorCode::kNotFound, "unknown function id '" + id + "'");
  return {id, cosine(query, *v)};
}

}  // namespace

RankedResults search(const VectorSpace& space, const SparseVector& query, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  RankedResults out;
  out.query_vector = query;
  for (const auto& id : space.doc_ids()) out.items.push_back(score(space, query, id));
  sort_ranking(out.items);
  if (out.items.size() > k) out.items.resize(k);
  return out;
}

RankedResults rerank(const VectorSpace& space, const SparseVector& query, std::span<const std::string> ids) {
  RankedResults out;
  out.query_vector = query;
  out.items.reserve(ids.size());
  for (const auto& id : ids) out.items.push_back(score(space, query, id));
  sort_ranking(out.items);
  return out;
}

void RocchioParams::validate() const {
  if (!(alpha > 0.0) || beta < 0.0 || gamma < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "rocchio parameters need alpha > 0 and beta, gamma >= 0");
  }
}

SparseVector rocchio(const SparseVector& query, const std::set<std::string>& candidates,
                     const std::set<std::string>& rejects, const RocchioParams& params,
                     const VectorSpace& space) {
  params.validate();
  for (const auto& id : rejects) {
    if (candidates.contains(id)) {
      throw Error(ErrorCode::kInvalidArgument, "function '" + id + "' is both candidate and reject");
    }
  }
  auto centroid_into = [&](SparseVector& acc, const std::set<std::string>& ids, double weight) {
    if (ids.empty() || weight == 0.0) return;
    const double w = weight / static_cast<double>(ids.size());
    for (const auto& id : ids) {
      const SparseVector* v = space.doc_vector(id);
      if (v == nullptr) throw Error(ErrorCode::kNotFound, "unknown function id '" + id + "'");
      acc.add_scaled(*v, w);
    }
  };
  SparseVector out = query;
  out.scale(params.alpha);
  centroid_into(out, candidates, params.beta);
  centroid_into(out, rejects, -params.gamma);
  if (params.clamp_negative) out.clamp_negative();
  return out;
}

}  // namespace zacq
