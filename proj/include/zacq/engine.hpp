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


#ifndef ZACQ_ENGINE_HPP_
#define ZACQ_ENGINE_HPP_

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zacq/corpus.hpp"
#include "zacq/taskextract.hpp"
#include "zacq/vecsearch.hpp"

namespace zacq {

// Immutable search backend shared by all sessions: corpus, lexicon, TF-IDF
// index, per-function tasks, and the vector space used for ranking.
class Engine {
 public:
  // `space` replaces the TF-IDF index for ranking and feedback when given.
  Engine(Corpus corpus, Lexicon lexicon, Index index, std::unique_ptr<VectorSpace> space = nullptr);
  Engine(Engine&&) noexcept = default;
  Engine& operator=(Engine&&) noexcept = default;

  static Engine from_corpus(Corpus corpus, Lexicon lexicon);
  // Reads DIR/corpus.jsonl and DIR/index.json as written by save().
  static Engine open_index_dir(const std::filesystem::path& dir, Lexicon lexicon);
  void save(const std::filesystem::path& dir) const;

  const Corpus& corpus() const noexcept { return corpus_; }
  const Lexicon& lexicon() const noexcept { return lexicon_; }
  const Index& index() const noexcept { return index_; }
  const VectorSpace& space() const noexcept { return space_ ? *space_ : static_cast<const VectorSpace&>(index_); }

  // Extracted tasks of one function; empty for unknown ids.
  const std::vector<Task>& tasks_of(std::string_view function_id) const;
  TaskTable task_table(std::span<const std::string> function_ids) const;

  RankedResults search(std::string_view query, std::size_t k) const;

 private:
  Corpus corpus_;
  Lexicon lexicon_;
  Index index_;
  std::unique_ptr<VectorSpace> space_;
  std::unordered_map<std::string, std::vector<Task>> tasks_;
};

inline constexpr std::string_view kIndexFileName = "index.json";
inline constexpr std::string_view kCorpusFileName = "corpus.jsonl";

}  // namespace zacq

#endif  // ZACQ_ENGINE_HPP_
