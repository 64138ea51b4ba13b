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


#ifndef ZACQ_STORE_HPP_
#define ZACQ_STORE_HPP_

#include <array>
#include <filesystem>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace zacq {

inline constexpr std::array<std::string_view, 4> kEventKinds = {"query", "page_change", "option_selected",
                                                                "none_selected"};
bool is_event_kind(std::string_view kind);

struct SessionEvent {
  std::string timestamp;  // ISO 8601, UTC
  std::string kind;
  nlohmann::json payload;
};

struct SessionRecord {
  std::string id;
  std::string created;
  std::string updated;
  nlohmann::json session;  // Session::to_json()
  std::vector<SessionEvent> events;
};

nlohmann::json to_json(const SessionRecord& record);
SessionRecord session_record_from_json(const nlohmann::json& j);

std::string utc_timestamp();

// Append-only JSON lines file; each line is a full snapshot of one session
// and the newest line for an id wins on load.
class SessionStore {
 public:
  // An empty path keeps nothing on disk.
  explicit SessionStore(std::filesystem::path path = {});

  // Unreadable lines are skipped and described in `warnings`.
  std::vector<SessionRecord> load(std::vector<std::string>* warnings = nullptr) const;
  void append(const SessionRecord& record);
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::mutex mu_;
};

}  // namespace zacq

#endif  // ZACQ_STORE_HPP_
