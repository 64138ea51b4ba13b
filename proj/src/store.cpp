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


#include "zacq/store.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>

#include "zacq/error.hpp"

namespace zacq {

bool is_event_kind(std::string_view kind) {
  return std::find(kEventKinds.begin(), kEventKinds.end(), kind) != kEventKinds.end();
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

nlohmann::json to_json(const SessionRecord& r) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : r.events) events.push_back({{"timestamp", e.timestamp}, {"kind", e.kind}, {"payload", e.payload}});
  return {{"id", r.id}, {"created", r.created}, {"updated", r.updated}, {"session", r.session}, {"events", events}};
}

SessionRecord session_record_from_json(const nlohmann::json& j) {
  try {
    SessionRecord r;
    r.id = j.at("id").get<std::string>();
    r.created = j.at("created").get<std::string>();
    r.updated = j.at("updated").get<std::string>();
    r.session = j.at("session");
    if (r.id.empty() || !r.session.is_object()) throw Error(ErrorCode::kParse, "session record lacks id or state");
    for (const auto& e : j.at("events")) {
      SessionEvent ev{e.at("timestamp").get<std::string>(), e.at("kind").get<std::string>(), e.value("payload", nlohmann::json())};
      if (!is_event_kind(ev.kind)) throw Error(ErrorCode::kParse, "unknown event kind '" + ev.kind + "'");
      r.events.push_back(std::move(ev));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed session record: ") + e.what());
  }
}

SessionStore::SessionStore(std::filesystem::path path) : path_(std::move(path)) {}

std::vector<SessionRecord> SessionStore::load(std::vector<std::string>* warnings) const {
  std::vector<SessionRecord> out;
  if (path_.empty() || !std::filesystem::exists(path_)) return out;
  std::ifstream in(path_);
  if (!in) throw Error(ErrorCode::kIo, "cannot read session store " + path_.string());

  std::map<std::string, std::size_t> slot;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      SessionRecord r = session_record_from_json(nlohmann::json::parse(line));
      auto [it, inserted] = slot.try_emplace(r.id, out.size());
      if (inserted) {
        out.push_back(std::move(r));
      } else {
        out[it->second] = std::move(r);
      }
    } catch (const std::exception& e) {
      if (warnings != nullptr) {
        warnings->push_back(path_.string() + ":" + std::to_string(line_no) + ": skipped: " + e.what());
      }
    }
  }
  return out;
}

void SessionStore::append(const SessionRecord& record) {
  if (path_.empty()) return;
  const std::string line = to_json(record).dump() + "\n";
  std::lock_guard lock(mu_);
  std::ofstream out(path_, std::ios::app);
  out << line;
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "cannot append to session store " + path_.string());
}

}  // namespace zacq
