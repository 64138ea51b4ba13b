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

#ifndef ZACQ_CORPUS_HPP_
#define ZACQ_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace zacq {

enum class Language { kUnknown, kPython, kJava, kGo, kPhp, kRuby, kJavascript };

std::string_view language_name(Language lang);
Language parse_language(std::string_view name);

struct FunctionDoc {
  std::string id;
  Language language = Language::kUnknown;
  std::string name;
  std::string comment;
  std::string code;
  std::string url;

  friend bool operator==(const FunctionDoc&, const FunctionDoc&) = default;
};

// Ordered, immutable collection of functions with unique ids.
class Corpus {
 public:
  Corpus() = default;
  // Throws Error(kInvalidArgument) on duplicate ids or empty names.
  explicit Corpus(std::vector<FunctionDoc> docs);

  const std::vector<FunctionDoc>& docs() const noexcept { return docs_; }
  std::size_t size() const noexcept { return docs_.size(); }
  bool empty() const noexcept { return docs_.empty(); }

  const FunctionDoc* find(std::string_view id) const;

 private:
  std::vector<FunctionDoc> docs_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

// Reads one JSON object per line. Accepts both the CodeSearchNet field names
// (func_name, docstring, code, url, language) and the generic ones
// (id, name, comment, code). Errors carry the 1-based line number.
Corpus load_corpus(const std::filesystem::path& path);
Corpus parse_corpus_jsonl(std::istream& in, std::string_view source = "<stream>");
void write_corpus_jsonl(const Corpus& corpus, std::ostream& out);

// Splits camelCase, PascalCase, snake_case and digit runs into lowercase
// tokens: "toUTF8String" -> {"to", "utf", "8", "string"}.
std::vector<std::string> split_identifier(std::string_view name);

// Lowercase word tokens of free text; embedded identifiers are split.
std::vector<std::string> word_tokens(std::string_view text);

// Strips doc markup (tag lines, HTML, code fences, inline {@code x}) and
// collapses whitespace. With first_sentence set, truncates after the first
// '.', '!' or '?' that is followed by whitespace or the end of the text.
std::string normalize_comment(std::string_view comment, bool first_sentence = true);

// "name tokens. first comment sentence" -- the single sentence handed to the
// task extractor.
std::string preprocess_doc(const FunctionDoc& doc);

}  // namespace zacq

#endif  // ZACQ_CORPUS_HPP_
