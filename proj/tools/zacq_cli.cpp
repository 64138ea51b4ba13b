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


// Command-line front end. Talks to the engine exclusively through zacq.h.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "zacq/zacq.h"

namespace {

using nlohmann::json;

// Process exit codes, one per failure class the user can act on.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitMissingFile = 2,
  kExitUnknownMethod = 3,
  kExitPortInUse = 4,
  kExitParse = 5,
  kExitUsage = 64,
};

int exit_code_for(zacq_status status) {
  switch (status) {
    case ZACQ_OK: return kExitOk;
    case ZACQ_ERR_IO:
    case ZACQ_ERR_NOT_FOUND: return kExitMissingFile;
    case ZACQ_ERR_UNKNOWN_METHOD: return kExitUnknownMethod;
    case ZACQ_ERR_PORT_IN_USE: return kExitPortInUse;
    case ZACQ_ERR_PARSE: return kExitParse;
    case ZACQ_ERR_INVALID_ARGUMENT: return kExitUsage;
    default: return kExitFailure;
  }
}

struct Failure {
  int code;
};

void check(zacq_status status) {
  if (status == ZACQ_OK) return;
  std::cerr << "zacq: " << zacq_status_name(status) << ": " << zacq_last_error() << "\n";
  throw Failure{exit_code_for(status)};
}

struct EngineDeleter {
  void operator()(zacq_engine* e) const { zacq_engine_free(e); }
};
struct SessionDeleter {
  void operator()(zacq_session* s) const { zacq_session_free(s); }
};
using EnginePtr = std::unique_ptr<zacq_engine, EngineDeleter>;
using SessionPtr = std::unique_ptr<zacq_session, SessionDeleter>;

std::string take(char* s) {
  std::string out = s == nullptr ? "" : s;
  zacq_string_free(s);
  return out;
}

const char* or_null(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

struct Source {
  std::string corpus;
  std::string index;
  std::string lexicon;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--corpus", corpus, "Corpus JSONL to index on the fly");
    cmd->add_option("--index", index, "Index directory written by `index` (default: $ZACQ_INDEX_DIR)");
    cmd->add_option("--lexicon", lexicon, "Lexicon directory (default: $ZACQ_LEXICON_DIR or the bundled one)");
  }

  EnginePtr open() const {
    zacq_engine* raw = nullptr;
    if (!corpus.empty()) {
      check(zacq_engine_open_corpus(corpus.c_str(), or_null(lexicon), &raw));
      return EnginePtr(raw);
    }
    std::string dir = index;
    if (dir.empty()) {
      const char* env = std::getenv("ZACQ_INDEX_DIR");
      if (env != nullptr) dir = env;
    }
    if (dir.empty()) {
      std::cerr << "zacq: pass --corpus or --index, or set ZACQ_INDEX_DIR\n";
      throw Failure{kExitUsage};
    }
    check(zacq_engine_open_index(dir.c_str(), or_null(lexicon), &raw));
    return EnginePtr(raw);
  }
};

void print_results(const json& rows, std::size_t limit) {
  std::size_t shown = 0;
  for (const auto& row : rows) {
    if (shown++ == limit) break;
    std::printf("%4d  %-12s %.6f  %s\n", row["rank"].get<int>(), row["id"].get<std::string>().c_str(),
                row["score"].get<double>(), row.value("name", std::string()).c_str());
  }
}

int run_index(const Source& src, const std::string& out) {
  EnginePtr engine = src.open();
  check(zacq_engine_save_index(engine.get(), out.c_str()));
  std::cout << "indexed " << zacq_engine_size(engine.get()) << " functions into " << out << "\n";
  return kExitOk;
}

int run_search(const Source& src, const std::string& query, std::size_t k) {
  EnginePtr engine = src.open();
  char* out = nullptr;
  check(zacq_search_json(engine.get(), query.c_str(), k, &out));
  print_results(json::parse(take(out)), k);
  return kExitOk;
}

// Reads one answer from the terminal. Returns nullopt at end of input.
std::optional<json> prompt_answer(const json& question) {
  const bool confirmation = question["kind"] == "confirmation";
  const auto& options = question["options"];
  if (confirmation) {
    std::cout << "  1) yes\n  0) no\n";
  } else {
    for (std::size_t i = 0; i < options.size(); ++i) {
      std::cout << "  " << i + 1 << ") " << options[i].get<std::string>() << "\n";
    }
    std::cout << "  0) none of these\n";
  }
  const std::size_t highest = confirmation ? 1 : options.size();
  for (;;) {
    std::cout << "> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) return std::nullopt;
    std::size_t pick = 0;
    try {
      std::size_t used = 0;
      pick = std::stoul(line, &used);
      if (line.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(line);
    } catch (const std::exception&) {
      std::cout << "enter a number between 0 and " << highest << "\n";
      continue;
    }
    if (pick > highest) {
      std::cout << "enter a number between 0 and " << highest << "\n";
      continue;
    }
    if (confirmation) return json{{"kind", pick == 1 ? "yes" : "no"}};
    if (pick == 0) return json{{"kind", "none"}};
    return json{{"kind", "selected"}, {"option", options[pick - 1]}};
  }
}

int run_refine(const Source& src, const std::string& method, const std::string& query, std::size_t top,
               const std::string& transcript_path) {
  EnginePtr engine = src.open();
  zacq_session* raw = nullptr;
  check(zacq_session_create(engine.get(), query.c_str(), method.c_str(), nullptr, &raw));
  SessionPtr session(raw);

  char* out = nullptr;
  check(zacq_session_results_json(session.get(), &out));
  print_results(json::parse(take(out)), top);

  for (;;) {
    int done = 0;
    check(zacq_session_done(session.get(), &done));
    if (done) {
      std::cout << "\nRefinement complete.\n";
      break;
    }
    check(zacq_session_question_json(session.get(), &out));
    const json question = json::parse(take(out));
    std::cout << "\n" << question["text"].get<std::string>() << "\n";
    const auto answer = prompt_answer(question);
    if (!answer) {
      std::cout << "\n";
      break;
    }
    check(zacq_session_answer_json(session.get(), answer->dump().c_str()));
    check(zacq_session_results_json(session.get(), &out));
    std::cout << "\n";
    print_results(json::parse(take(out)), top);
  }

  if (!transcript_path.empty()) {
    check(zacq_session_transcript_json(session.get(), &out));
    const std::string text = json::parse(take(out)).dump(2) + "\n";
    std::FILE* f = std::fopen(transcript_path.c_str(), "w");
    if (f == nullptr || std::fputs(text.c_str(), f) < 0) {
      if (f != nullptr) std::fclose(f);
      std::cerr << "zacq: cannot write " << transcript_path << "\n";
      return kExitMissingFile;
    }
    std::fclose(f);
  }
  return kExitOk;
}

int run_eval(const Source& src, const std::string& judgments, const std::string& methods, const std::string& grid,
             std::size_t max_rounds, const std::string& out_dir) {
  EnginePtr engine = src.open();
  char* out = nullptr;
  check(zacq_eval_run(engine.get(), judgments.c_str(), methods.c_str(), or_null(grid), max_rounds, or_null(out_dir),
                      &out));
  std::cout << json::parse(take(out))["csv"].get<std::string>();
  return kExitOk;
}

int run_serve(const Source& src, const std::string& host, int port, const std::string& store) {
  EnginePtr engine = src.open();
  std::cerr << "zacq: serving " << zacq_engine_size(engine.get()) << " functions on http://" << host << ":" << port
            << "\n";
  check(zacq_serve(engine.get(), host.c_str(), port, or_null(store)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ZaCQ: interactive code search with clarifying questions"};
  app.set_version_flag("--version", std::string(zacq_version()));
  app.require_subcommand(1);

  Source source;
  std::string out_dir, query, method = "zacq", judgments, methods = "zacq,vdo,kw", grid, transcript, store;
  std::string host = "127.0.0.1";
  std::size_t k = 50, top = 10, max_rounds = 10;
  int port = 8080;

  auto* index_cmd = app.add_subcommand("index", "Build and save an index from a corpus");
  index_cmd->add_option("--corpus", source.corpus, "Corpus JSONL")->required();
  index_cmd->add_option("--out", out_dir, "Output directory")->required();
  index_cmd->add_option("--lexicon", source.lexicon, "Lexicon directory");

  auto* search_cmd = app.add_subcommand("search", "Print the top-k functions for a query");
  source.add_to(search_cmd);
  search_cmd->add_option("--query,-q", query, "Query text")->required();
  search_cmd->add_option("-k", k, "Number of results")->capture_default_str();

  auto* refine_cmd = app.add_subcommand("refine", "Refine a query interactively");
  source.add_to(refine_cmd);
  refine_cmd->add_option("--query,-q", query, "Query text")->required();
  refine_cmd->add_option("--method,-m", method, "zacq, vdo or kw")->capture_default_str();
  refine_cmd->add_option("--top", top, "Results shown per round")->capture_default_str();
  refine_cmd->add_option("--transcript", transcript, "Write the session transcript as JSON");

  auto* eval_cmd = app.add_subcommand("eval", "Run the simulated-user evaluation");
  source.add_to(eval_cmd);
  eval_cmd->add_option("--judgments,-j", judgments, "Relevance judgments CSV")->required();
  eval_cmd->add_option("--methods", methods, "Comma-separated methods")->capture_default_str();
  eval_cmd->add_option("--grid,-g", grid, "Hyperparameter grid JSON");
  eval_cmd->add_option("--max-rounds", max_rounds, "Round cap per session")->capture_default_str();
  eval_cmd->add_option("--out,-o", out_dir, "Directory for CSV and JSON reports");

  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP session API");
  source.add_to(serve_cmd);
  serve_cmd->add_option("--port,-p", port, "TCP port")->capture_default_str();
  serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--store", store, "JSONL session store");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*index_cmd) return run_index(source, out_dir);
    if (*search_cmd) return run_search(source, query, k);
    if (*refine_cmd) return run_refine(source, method, query, top, transcript);
    if (*eval_cmd) return run_eval(source, judgments, methods, grid, max_rounds, out_dir);
    if (*serve_cmd) return run_serve(source, host, port, store);
  } catch (const Failure& f) {
    return f.code;
  }
  return kExitUsage;
}
