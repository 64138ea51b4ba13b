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

#include "zacq/taskextract.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "zacq/error.hpp"

namespace zacq {
namespace {

constexpr std::array<std::string_view, kRoleCount> kRoleNames = {"V", "DOM", "DO", "P", "POM", "PO"};

std::unordered_set<std::string> read_word_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open lexicon file " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    words.insert(line.substr(b, e - b + 1));
  }
  return words;
}

std::unordered_map<std::string, std::string> read_word_pairs(const std::filesystem::path& path) {
  std::unordered_map<std::string, std::string> pairs;
  for (const std::string& line : read_word_set(path)) {
    auto sp = line.find_first_of(" \t");
    if (sp == std::string::npos) {
      throw Error(ErrorCode::kParse, path.string() + ": expected two columns in '" + line + "'");
    }
    auto second = line.find_first_not_of(" \t", sp);
    pairs.emplace(line.substr(0, sp), line.substr(second));
  }
  return pairs;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

int vowel_groups(std::string_view w) {
  int groups = 0;
  bool in_group = false;
  for (char c : w) {
    bool v = is_vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  return groups;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_clause_punct(char c) {
  return c == '.' || c == '!' || c == '?' || c == ';' || c == ':' || c == '(' || c == ')';
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Raw lowercase tokens; clause punctuation and commas become their own tokens.
// Possessive and contraction suffixes ("file's", "don't") are dropped.
std::vector<std::string> raw_tokens(std::string_view sentence) {
  std::vector<std::string> out;
  std::string cur;
  bool skipping_suffix = false;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(lower(cur));
    cur.clear();
  };
  for (char c : sentence) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || c == '_' || u >= 0x80) {
      if (!skipping_suffix) cur.push_back(c);
      continue;
    }
    flush();
    skipping_suffix = c == '\'';
    if (is_clause_punct(c) || c == ',') out.emplace_back(1, c);
  }
  flush();
  return out;
}

struct NounPhrase {
  std::size_t end = 0;   // one past the last consumed token
  std::string head;      // head noun, or collection phrase ("list of ints")
  std::string modifier;  // adjacent modifier of the head
  std::string last_word;
};

std::size_t skip_determiners(std::span<const TaggedToken> toks, std::size_t i) {
  while (i < toks.size() && toks[i].tag == Tag::kDet) ++i;
  return i;
}

std::optional<NounPhrase> parse_noun_phrase(std::span<const TaggedToken> toks, std::size_t i,
                                            const Lexicon& lex, bool allow_collection = true) {
  i = skip_determiners(toks, i);
  std::size_t start = i;
  while (i < toks.size() && (toks[i].tag == Tag::kAdj || toks[i].tag == Tag::kNoun)) ++i;
  if (i == start || toks[i - 1].tag != Tag::kNoun) return std::nullopt;
  NounPhrase np;
  np.end = i;
  np.head = toks[i - 1].text;
  np.last_word = np.head;
  if (i - start >= 2) np.modifier = toks[i - 2].text;

  if (allow_collection && lex.collection_nouns.contains(np.head) && i < toks.size() &&
      toks[i].text == "of") {
    std::size_t inner_start = skip_determiners(toks, i + 1);
    if (auto inner = parse_noun_phrase(toks, inner_start, lex, false)) {
      std::string phrase = np.head + " of";
      for (std::size_t k = inner_start; k < inner->end; ++k) phrase += " " + toks[k].text;
      np.head = std::move(phrase);
      np.last_word = inner->head;
      np.end = inner->end;
    }
  }
  return np;
}

}  // namespace

std::string_view role_name(Role r) { return kRoleNames[static_cast<std::size_t>(r)]; }

std::optional<Role> parse_role(std::string_view name) {
  for (Role r : kAllRoles) {
    if (role_name(r) == name) return r;
  }
  return std::nullopt;
}

Task::Task(std::string v, std::string dom, std::string dobj, std::string p, std::string pom,
           std::string po)
    : attrs_{std::move(v), std::move(dom), std::move(dobj), std::move(p), std::move(pom), std::move(po)} {}

bool Task::valid() const {
  return has(Role::kV) && (has(Role::kDo) || (has(Role::kP) && has(Role::kPo)));
}

std::string render_task(const Task& task) {
  std::string out;
  auto append = [&](Role r) {
    if (!task.has(r)) return;
    if (!out.empty()) out.push_back(' ');
    out += task[r];
  };
  append(Role::kV);
  append(Role::kDom);
  append(Role::kDo);
  if (task.has(Role::kPo)) {
    append(Role::kP);
    append(Role::kPom);
    append(Role::kPo);
  }
  return out;
}

Lexicon Lexicon::load(const std::filesystem::path& dir) {
  Lexicon lex;
  lex.verbs = read_word_set(dir / "verbs.txt");
  lex.prepositions = read_word_set(dir / "prepositions.txt");
  lex.determiners = read_word_set(dir / "determiners.txt");
  lex.function_words = read_word_set(dir / "function_words.txt");
  lex.generic_verbs = read_word_set(dir / "generic_verbs.txt");
  lex.generic_nouns = read_word_set(dir / "generic_nouns.txt");
  lex.collection_nouns = read_word_set(dir / "collection_nouns.txt");
  lex.verb_forms = read_word_pairs(dir / "verb_forms.txt");
  lex.gerunds = read_word_pairs(dir / "gerunds.txt");
  lex.stopwords = read_word_set(dir / "stopwords.txt");
  for (const auto& g : lex.generic_verbs) lex.verbs.insert(g);
  for (const auto& [form, lemma] : lex.verb_forms) lex.verbs.insert(lemma);
  return lex;
}

std::optional<std::string> verb_lemma(std::string_view token, const Lexicon& lex) {
  std::string t(token);
  if (auto it = lex.verb_forms.find(t); it != lex.verb_forms.end()) return it->second;
  if (lex.verbs.contains(t)) return t;

  std::vector<std::string> candidates;
  auto undouble = [&](const std::string& stem) {
    if (stem.size() >= 3 && stem[stem.size() - 1] == stem[stem.size() - 2] && !is_vowel(stem.back())) {
      candidates.push_back(stem.substr(0, stem.size() - 1));
    }
  };
  if (ends_with(t, "ies") && t.size() > 4) {
    candidates.push_back(t.substr(0, t.size() - 3) + "y");
  }
  if (ends_with(t, "es") && t.size() > 3) candidates.push_back(t.substr(0, t.size() - 2));
  if (ends_with(t, "s") && !ends_with(t, "ss") && t.size() > 2) candidates.push_back(t.substr(0, t.size() - 1));
  if (ends_with(t, "ing") && t.size() > 4) {
    std::string stem = t.substr(0, t.size() - 3);
    candidates.push_back(stem);
    candidates.push_back(stem + "e");
    undouble(stem);
    if (ends_with(stem, "y")) candidates.push_back(stem.substr(0, stem.size() - 1) + "ie");
  }
  if (ends_with(t, "ied") && t.size() > 4) candidates.push_back(t.substr(0, t.size() - 3) + "y");
  if (ends_with(t, "ed") && t.size() > 3) {
    std::string stem = t.substr(0, t.size() - 2);
    candidates.push_back(stem);
    candidates.push_back(stem + "e");
    undouble(stem);
  }
  for (const auto& c : candidates) {
    if (lex.verbs.contains(c)) return c;
  }
  return std::nullopt;
}

std::string gerund(std::string_view lemma, const Lexicon& lex) {
  std::string w(lemma);
  if (auto it = lex.gerunds.find(w); it != lex.gerunds.end()) return it->second;
  if (w.empty()) return w;
  if (ends_with(w, "ie")) return w.substr(0, w.size() - 2) + "ying";
  if (w.size() > 2 && w.back() == 'e' && !ends_with(w, "ee") && !ends_with(w, "ye") &&
      !ends_with(w, "oe")) {
    return w.substr(0, w.size() - 1) + "ing";
  }
  const std::size_t n = w.size();
  if (n >= 3 && vowel_groups(w) == 1 && !is_vowel(w[n - 1]) && is_vowel(w[n - 2]) && !is_vowel(w[n - 3]) &&
      w[n - 1] != 'w' && w[n - 1] != 'x' && w[n - 1] != 'y') {
    return w + w.back() + "ing";
  }
  return w + "ing";
}

std::string_view tag_name(Tag t) {
  switch (t) {
    case Tag::kVerb: return "VERB";
    case Tag::kNoun: return "NOUN";
    case Tag::kAdj: return "ADJ";
    case Tag::kPrep: return "PREP";
    case Tag::kDet: return "DET";
    case Tag::kOther: return "OTHER";
    case Tag::kBoundary: return "BOUNDARY";
  }
  return "?";
}

std::vector<TaggedToken> tokenize_and_tag(std::string_view sentence, const Lexicon& lex) {
  std::vector<TaggedToken> toks;
  bool clause_start = true;
  bool verb_in_clause = false;
  for (std::string& text : raw_tokens(sentence)) {
    TaggedToken tok;
    tok.text = std::move(text);
    const char c0 = tok.text[0];
    const TaggedToken* prev = toks.empty() ? nullptr : &toks.back();
    if (tok.text.size() == 1 && is_clause_punct(c0)) {
      tok.tag = Tag::kBoundary;
      clause_start = true;
      verb_in_clause = false;
      toks.push_back(std::move(tok));
      continue;
    }
    if (tok.text == ",") {
      tok.tag = Tag::kOther;
    } else if (lex.prepositions.contains(tok.text)) {
      tok.tag = Tag::kPrep;
    } else if (lex.determiners.contains(tok.text)) {
      tok.tag = Tag::kDet;
    } else if (lex.function_words.contains(tok.text)) {
      tok.tag = Tag::kOther;
    } else if (auto lemma = verb_lemma(tok.text, lex)) {
      // Verb positions: clause-initial, coordinated with an earlier verb, or
      // directly after a subject noun before any verb in the clause.
      const bool coordinated =
          prev && verb_in_clause && (prev->text == "and" || prev->text == "or" || prev->text == ",");
      const bool after_subject = prev && prev->tag == Tag::kNoun && !verb_in_clause;
      if (clause_start || coordinated || after_subject) {
        tok.tag = Tag::kVerb;
        tok.lemma = std::move(*lemma);
        verb_in_clause = true;
      } else {
        tok.tag = Tag::kNoun;
      }
    } else {
      tok.tag = Tag::kNoun;
    }
    clause_start = false;
    toks.push_back(std::move(tok));
  }
  // A noun directly before another noun acts as its modifier.
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (toks[i].tag == Tag::kNoun && toks[i + 1].tag == Tag::kNoun) toks[i].tag = Tag::kAdj;
  }
  return toks;
}

std::vector<Task> extract_tasks(std::span<const TaggedToken> toks, const Lexicon& lex) {
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].tag != Tag::kVerb) continue;
    // "copy and move files": every verb in the chain shares the object.
    std::size_t j = i + 1;
    while (j + 1 < toks.size() && (toks[j].text == "and" || toks[j].text == "or" || toks[j].text == ",") &&
           toks[j + 1].tag == Tag::kVerb) {
      j += 2;
    }

    Task task;
    task.set(Role::kV, toks[i].lemma.empty() ? toks[i].text : toks[i].lemma);
    std::size_t cursor = j;
    if (auto obj = parse_noun_phrase(toks, cursor, lex)) {
      task.set(Role::kDo, obj->head);
      task.set(Role::kDom, obj->modifier);
      cursor = obj->end;
    }
    if (cursor < toks.size() && toks[cursor].tag == Tag::kPrep) {
      if (auto pobj = parse_noun_phrase(toks, cursor + 1, lex)) {
        task.set(Role::kP, toks[cursor].text);
        task.set(Role::kPo, pobj->head);
        task.set(Role::kPom, pobj->modifier);
      }
    }
    if (task.valid()) tasks.push_back(std::move(task));
  }
  return tasks;
}

std::vector<Task> extract_tasks(std::string_view sentence, const Lexicon& lex) {
  auto toks = tokenize_and_tag(sentence, lex);
  return extract_tasks(toks, lex);
}

namespace {

// Last word of an object phrase, e.g. "ints" for "list of ints".
std::string_view object_head(const std::string& phrase) {
  auto sp = phrase.rfind(' ');
  return sp == std::string::npos ? std::string_view(phrase) : std::string_view(phrase).substr(sp + 1);
}

bool generic_object(const Lexicon& lex, const std::string& phrase) {
  if (phrase.empty()) return false;
  if (lex.generic_nouns.contains(phrase)) return true;
  if (lex.generic_nouns.contains(std::string(object_head(phrase)))) return true;
  auto sp = phrase.find(' ');
  return sp != std::string::npos && lex.generic_nouns.contains(phrase.substr(0, sp)) &&
         !lex.collection_nouns.contains(phrase.substr(0, sp));
}

}  // namespace

std::vector<Task> filter_generic(std::vector<Task> tasks, const Lexicon& lex) {
  std::erase_if(tasks, [&](const Task& t) {
    return lex.generic_verbs.contains(t[Role::kV]) || generic_object(lex, t[Role::kDo]) ||
           generic_object(lex, t[Role::kPo]);
  });
  return tasks;
}

std::optional<Task> extract_query_task(std::string_view query, const Lexicon& lex) {
  auto tasks = filter_generic(extract_tasks(query, lex), lex);
  if (tasks.empty()) return std::nullopt;
  return tasks.front();
}

std::vector<Task> extract_function_tasks(const FunctionDoc& doc, const Lexicon& lex) {
  auto tasks = filter_generic(extract_tasks(preprocess_doc(doc), lex), lex);
  std::vector<Task> distinct;
  for (auto& t : tasks) {
    if (std::find(distinct.begin(), distinct.end(), t) == distinct.end()) distinct.push_back(std::move(t));
  }
  return distinct;
}

TaskTable::TaskTable(std::vector<TaskRow> rows) : rows_(std::move(rows)) { rebuild_index(); }

void TaskTable::rebuild_index() {
  function_ids_.clear();
  by_function_.clear();
  for (auto& m : index_) m.clear();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const TaskRow& row = rows_[i];
    auto [it, inserted] = by_function_.try_emplace(row.function_id);
    if (inserted) function_ids_.push_back(row.function_id);
    it->second.push_back(i);
    for (Role r : kAllRoles) {
      if (row.task.has(r)) index_[static_cast<std::size_t>(r)][row.task[r]].insert(row.function_id);
    }
  }
}

bool TaskTable::has_tasks(std::string_view function_id) const {
  return by_function_.find(function_id) != by_function_.end();
}

std::vector<const TaskRow*> TaskTable::rows_for(std::string_view function_id) const {
  std::vector<const TaskRow*> out;
  if (auto it = by_function_.find(function_id); it != by_function_.end()) {
    for (std::size_t i : it->second) out.push_back(&rows_[i]);
  }
  return out;
}

const std::set<std::string>& TaskTable::functions_with(Role role, const std::string& value) const {
  static const std::set<std::string> kEmpty;
  const auto& m = index_[static_cast<std::size_t>(role)];
  auto it = m.find(value);
  return it == m.end() ? kEmpty : it->second;
}

TaskTable build_task_table(std::span<const FunctionDoc* const> results, const Lexicon& lex) {
  std::vector<TaskRow> rows;
  for (const FunctionDoc* doc : results) {
    for (auto& t : extract_function_tasks(*doc, lex)) rows.push_back({doc->id, std::move(t)});
  }
  return TaskTable(std::move(rows));
}

TaskTable build_task_table(std::span<const FunctionDoc> results, const Lexicon& lex) {
  std::vector<const FunctionDoc*> ptrs;
  ptrs.reserve(results.size());
  for (const auto& d : results) ptrs.push_back(&d);
  return build_task_table(ptrs, lex);
}

}  // namespace zacq
