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

#ifndef ZACQ_VECSEARCH_HPP_
#define ZACQ_VECSEARCH_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "zacq/corpus.hpp"

namespace zacq {

using TermId = std::uint32_t;

// Sparse real vector sorted by term id. Zero entries are never stored.
class SparseVector {
 public:
  using Entry = std::pair<TermId, double>;

  SparseVector() = default;
  // Sums duplicate ids and drops zeros.
  explicit SparseVector(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  double get(TermId id) const;
  double dot(const SparseVector& other) const;
  double norm() const;

  SparseVector& scale(double factor);
  // this += factor * other
  SparseVector& add_scaled(const SparseVector& other, double factor);
  SparseVector& clamp_negative();

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;
};

double cosine(const SparseVector& a, const SparseVector& b);

// Shared query/document vector space. The TF-IDF Index is the default; an
// external embedding file can stand in through DenseEmbeddings.
class VectorSpace {
 public:
  virtual ~VectorSpace() = default;
  virtual const SparseVector* doc_vector(std::string_view function_id) const = 0;
  virtual SparseVector embed_query(std::string_view text) const = 0;
  virtual const std::vector<std::string>& doc_ids() const = 0;
};

class Index final : public VectorSpace {
 public:
  static constexpr std::size_t kDefaultTopK = 50;
  static constexpr double kIdfFloor = 0.01;

  Index() = default;
  // Throws Error(kInvalidArgument) on an empty corpus.
  static Index build(const Corpus& corpus);

  const SparseVector* doc_vector(std::string_view function_id) const override;
  SparseVector embed_query(std::string_view text) const override;
  const std::vector<std::string>& doc_ids() const override { return doc_ids_; }

  std::size_t doc_count() const noexcept { return doc_ids_.size(); }
  std::size_t vocabulary_size() const noexcept { return terms_.size(); }
  const std::vector<std::string>& terms() const noexcept { return terms_; }
  const std::string& term(TermId id) const { return terms_.at(id); }
  std::optional<TermId> term_id(std::string_view term) const;
  double idf(TermId id) const { return idf_.at(id); }
  std::optional<std::size_t> doc_position(std::string_view function_id) const;
  const SparseVector& doc_vector_at(std::size_t pos) const { return doc_vectors_.at(pos); }
  // Distinct terms of a document, ascending by id.
  std::vector<TermId> doc_terms(std::string_view function_id) const;

  std::size_t top_k() const noexcept { return top_k_; }

  void save(std::ostream& out) const;
  static Index load(std::istream& in);

  // Index terms of a function: split name, full normalized comment, and the
  // identifiers of its code.
  static std::vector<std::string> document_terms(const FunctionDoc& doc);

 private:
  void rebuild_lookups();

  std::vector<std::string> terms_;
  std::unordered_map<std::string, TermId> term_ids_;
  std::vector<double> idf_;
  std::vector<std::string> doc_ids_;
  std::unordered_map<std::string, std::size_t> doc_pos_;
  std::vector<SparseVector> doc_vectors_;
  std::size_t top_k_ = kDefaultTopK;
};

// Dense id -> vector file ("id<TAB>v1 v2 ..."), queries keyed "query:<text>".
class DenseEmbeddings final : public VectorSpace {
 public:
  static DenseEmbeddings load(std::istream& in);

  const SparseVector* doc_vector(std::string_view function_id) const override;
  SparseVector embed_query(std::string_view text) const override;
  const std::vector<std::string>& doc_ids() const override { return doc_ids_; }

 private:
  std::vector<std::string> doc_ids_;
  std::unordered_map<std::string, SparseVector> docs_;
  std::unordered_map<std::string, SparseVector> queries_;
};

struct ScoredDoc {
  std::string function_id;
  double score = 0.0;

  friend bool operator==(const ScoredDoc&, const ScoredDoc&) = default;
};

// Scores non-increasing; equal scores ordered by function id.
struct RankedResults {
  std::vector<ScoredDoc> items;
  SparseVector query_vector;

  std::vector<std::string> ids() const;
  // 1-based rank, if present.
  std::optional<std::size_t> rank_of(std::string_view function_id) const;
};

// Top-k documents of the whole space by cosine similarity.
RankedResults search(const VectorSpace& space, const SparseVector& query, std::size_t k);
// Re-sorts a fixed result list by cosine similarity; nothing is dropped.
RankedResults rerank(const VectorSpace& space, const SparseVector& query, std::span<const std::string> ids);

struct RocchioParams {
  double alpha = 1.0;
  double beta = 0.75;
  double gamma = 0.15;
  // Keeps TF-IDF queries in the non-negative cone; turn off for dense spaces.
  bool clamp_negative = true;

  // alpha > 0, beta and gamma non-negative.
  void validate() const;
  friend bool operator==(const RocchioParams&, const RocchioParams&) = default;
};

// alpha*q + beta*mean(candidates) - gamma*mean(rejects), negatives clamped.
SparseVector rocchio(const SparseVector& query, const std::set<std::string>& candidates,
                     const std::set<std::string>& rejects, const RocchioParams& params,
                     const VectorSpace& space);

}  // namespace zacq

#endif  // ZACQ_VECSEARCH_HPP_
