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

#include "zacq/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>

#include "json.hpp"
#include "zacq/error.hpp"

namespace zacq {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<Language, std::string_view>, 7> kLanguages = {{
    {Language::kUnknown, "unknown"},
    {Language::kPython, "python"},
    {Language::kJava, "java"},
    {Language::kGo, "go"},
    {Language::kPhp, "php"},
    {Language::kRuby, "ruby"},
    {Language::kJavascript, "javascript"},
}};

enum class CharClass { kLower, kUpper, kDigit, kSeparator };

CharClass classify(unsigned char c) {
  if (c >= 'a' && c <= 'z') return CharClass::kLower;
  if (c >= 'A' && c <= 'Z') return CharClass::kUpper;
  if (c >= '0' && c <= '9') return CharClass::kDigit;
  // Non-ASCII bytes stay inside words.
  if (c >= 0x80) return CharClass::kLower;
  return CharClass::kSeparator;
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string optional_string(const json& obj, std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    auto it = obj.find(key);
    if (it != obj.end() && it->is_string()) return it->get<std::string>();
  }
  return {};
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

bool is_tag_line(std::string_view line) {
  if (line.size() >= 2 && line[0] == '@' && std::isalpha(static_cast<unsigned char>(line[1]))) {
    return true;
  }
  if (line.size() >= 3 && line[0] == ':') {
    std::size_t i = 1;
    while (i < line.size() && std::isalpha(static_cast<unsigned char>(line[i]))) ++i;
    // ":param x:" style field lists also count.
    return i > 1 && line.find(':', i) != std::string_view::npos;
  }
  return false;
}

std::string strip_code_fences(std::string_view text) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t open = text.find("```", pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, open - pos));
    std::size_t close = text.find("```", open + 3);
    if (close == std::string_view::npos) break;
    out.push_back(' ');
    pos = close + 3;
  }
  return out;
}

}  // namespace

std::string_view language_name(Language lang) {
  for (const auto& [l, name] : kLanguages) {
    if (l == lang) return name;
  }
  return "unknown";
}

Language parse_language(std::string_view name) {
  std::string lower = to_lower_ascii(name);
  for (const auto& [l, n] : kLanguages) {
    if (n == lower) return l;
  }
  if (lower == "js") return Language::kJavascript;
  if (lower == "py") return Language::kPython;
  return Language::kUnknown;
}

Corpus::Corpus(std::vector<FunctionDoc> docs) : docs_(std::move(docs)) {
  by_id_.reserve(docs_.size());
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    const FunctionDoc& d = docs_[i];
    if (d.id.empty()) throw Error(ErrorCode::kInvalidArgument, "function with empty id");
    if (d.name.empty()) throw Error(ErrorCode::kInvalidArgument, "function '" + d.id + "' has an empty name");
    if (!by_id_.emplace(d.id, i).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate function id '" + d.id + "'");
    }
  }
}

const FunctionDoc* Corpus::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &docs_[it->second];
}

Corpus parse_corpus_jsonl(std::istream& in, std::string_view source) {
  std::vector<FunctionDoc> docs;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    return Error(ErrorCode::kParse, std::string(source) + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw fail(std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw fail("expected a JSON object");

    FunctionDoc doc;
    std::string raw_name = optional_string(obj, {"name", "func_name", "identifier"});
    // CodeSearchNet qualifies names ("Class.method"); keep the last segment.
    if (auto dot = raw_name.rfind('.'); dot != std::string::npos && dot + 1 < raw_name.size()) {
      raw_name = raw_name.substr(dot + 1);
    }
    doc.name = raw_name;
    if (doc.name.empty()) throw fail("missing function name (\"name\" or \"func_name\")");
    doc.comment = optional_string(obj, {"comment", "docstring"});
    doc.code = optional_string(obj, {"code", "original_string"});
    doc.url = optional_string(obj, {"url", "path"});
    doc.language = parse_language(optional_string(obj, {"language"}));
    doc.id = optional_string(obj, {"id"});
    if (doc.id.empty()) doc.id = doc.url;
    if (doc.id.empty()) doc.id = std::string(source) + ":" + std::to_string(line_no);

    if (auto [it, inserted] = seen.emplace(doc.id, line_no); !inserted) {
      throw fail("duplicate id '" + doc.id + "' (first seen on line " + std::to_string(it->second) + ")");
    }
    docs.push_back(std::move(doc));
  }
  return Corpus(std::move(docs));
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus file " + path.string());
  return parse_corpus_jsonl(in, path.string());
}

void write_corpus_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const FunctionDoc& d : corpus.docs()) {
    json obj = {{"id", d.id}, {"name", d.name}, {"comment", d.comment}, {"code", d.code}};
    if (d.language != Language::kUnknown) obj["language"] = language_name(d.language);
    if (!d.url.empty()) obj["url"] = d.url;
    out << obj.dump() << '\n';
  }
}

std::vector<std::string> split_identifier(std::string_view name) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(to_lower_ascii(current));
    current.clear();
  };
  for (std::size_t i = 0; i < name.size(); ++i) {
    const auto c = static_cast<unsigned char>(name[i]);
    const CharClass cls = classify(c);
    if (cls == CharClass::kSeparator) {
      flush();
      continue;
    }
    if (!current.empty()) {
      const CharClass prev = classify(static_cast<unsigned char>(current.back()));
      bool boundary = false;
      if ((prev == CharClass::kDigit) != (cls == CharClass::kDigit)) {
        boundary = true;
      } else if (prev == CharClass::kLower && cls == CharClass::kUpper) {
        boundary = true;
      } else if (prev == CharClass::kUpper && cls == CharClass::kUpper && i + 1 < name.size() &&
                 classify(static_cast<unsigned char>(name[i + 1])) == CharClass::kLower) {
        // "HTMLParser": the last capital of a run starts the next word.
        boundary = true;
      }
      if (boundary) flush();
    }
    current.push_back(static_cast<char>(c));
  }
  flush();
  if (tokens.empty() && !name.empty()) tokens.push_back(to_lower_ascii(name));
  return tokens;
}

std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && classify(static_cast<unsigned char>(text[i])) == CharClass::kSeparator &&
           text[i] != '_') {
      ++i;
    }
    std::size_t start = i;
    while (i < text.size() && (classify(static_cast<unsigned char>(text[i])) != CharClass::kSeparator ||
                               text[i] == '_')) {
      ++i;
    }
    if (i > start) {
      for (auto& t : split_identifier(text.substr(start, i - start))) {
        if (t.find_first_not_of('_') != std::string::npos) out.push_back(std::move(t));
      }
    }
  }
  return out;
}

std::string normalize_comment(std::string_view comment, bool first_sentence) {
  std::string text = strip_code_fences(comment);

  std::string kept;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + start, end - start);
    std::size_t b = line.find_first_not_of(" \t\r*/#");
    line = b == std::string_view::npos ? std::string_view{} : line.substr(b);
    if (!line.empty() && !is_tag_line(line)) {
      kept.append(line);
      kept.push_back(' ');
    }
    start = end + 1;
  }

  static const std::regex inline_tag(R"(\{@\w+\s+([^}]*)\})");
  static const std::regex html_tag(R"(<[^<>]*>)");
  kept = std::regex_replace(kept, inline_tag, "$1");
  kept = std::regex_replace(kept, html_tag, "");
  std::string out = collapse_whitespace(kept);

  if (first_sentence) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      char c = out[i];
      if ((c == '.' || c == '!' || c == '?') &&
          (i + 1 == out.size() || std::isspace(static_cast<unsigned char>(out[i + 1])))) {
        out.resize(i + 1);
        break;
      }
    }
  }
  return out;
}

std::string preprocess_doc(const FunctionDoc& doc) {
  std::string sentence;
  for (const auto& tok : split_identifier(doc.name)) {
    if (!sentence.empty()) sentence.push_back(' ');
    sentence += tok;
  }
  sentence += ". ";
  sentence += normalize_comment(doc.comment);
  return sentence;
}

}  // namespace zacq
