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


#include "zacq/engine.hpp"

#include <fstream>

#include "zacq/error.hpp"

namespace zacq {

Engine::Engine(Corpus corpus, Lexicon lexicon, Index index, std::unique_ptr<VectorSpace> space)
    : corpus_(std::move(corpus)), lexicon_(std::move(lexicon)), index_(std::move(index)), space_(std::move(space)) {
  for (const auto& doc : corpus_.docs()) tasks_.emplace(doc.id, extract_function_tasks(doc, lexicon_));
}

Engine Engine::from_corpus(Corpus corpus, Lexicon lexicon) {
  Index index = Index::build(corpus);
  return Engine(std::move(corpus), std::move(lexicon), std::move(index));
}

Engine Engine::open_index_dir(const std::filesystem::path& dir, Lexicon lexicon) {
  const auto index_path = dir / kIndexFileName;
  std::ifstream in(index_path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open index file " + index_path.string());
  Index index = Index::load(in);
  Corpus corpus = load_corpus(dir / kCorpusFileName);
  for (const auto& doc : corpus.docs()) {
    if (!index.doc_position(doc.id)) {
      throw Error(ErrorCode::kParse, "index in " + dir.string() + " does not cover function " + doc.id);
    }
  }
  return Engine(std::move(corpus), std::move(lexicon), std::move(index));
}

void Engine::save(const std::filesystem::path& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  std::ofstream index_out(dir / kIndexFileName);
  std::ofstream corpus_out(dir / kCorpusFileName);
  if (!index_out || !corpus_out) throw Error(ErrorCode::kIo, "cannot write index files under " + dir.string());
  index_.save(index_out);
  write_corpus_jsonl(corpus_, corpus_out);
  if (!index_out || !corpus_out) throw Error(ErrorCode::kIo, "write failed under " + dir.string());
}

const std::vector<Task>& Engine::tasks_of(std::string_view function_id) const {
  static const std::vector<Task> kNone;
  auto it = tasks_.find(std::string(function_id));
  return it == tasks_.end() ? kNone : it->second;
}

TaskTable Engine::task_table(std::span<const std::string> function_ids) const {
  std::vector<TaskRow> rows;
  for (const auto& id : function_ids) {
    for (const auto& task : tasks_of(id)) rows.push_back({id, task});
  }
  return TaskTable(std::move(rows));
}

RankedResults Engine::search(std::string_view query, std::size_t k) const {
  return zacq::search(space(), space().embed_query(query), k);
}

}  // namespace zacq
