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


#ifndef ZACQ_SERVICE_HPP_
#define ZACQ_SERVICE_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "zacq/engine.hpp"
#include "zacq/session.hpp"
#include "zacq/store.hpp"

namespace httplib {
class Server;
}

namespace zacq {

struct ServiceOptions {
  std::filesystem::path store_path;  // empty: sessions live in memory only
  std::size_t page_size = 10;
  RefineConfig config;
};

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;  // null for 204
};

// Transport-independent session API. Thread-safe; each session admits one
// mutation at a time and a second concurrent one gets 409.
class SessionService {
 public:
  SessionService(const Engine& engine, ServiceOptions options);
  ~SessionService();

  ServiceResponse create(const nlohmann::json& body);
  ServiceResponse answer(const std::string& id, const nlohmann::json& body);
  ServiceResponse results(const std::string& id, std::string_view page);
  ServiceResponse event(const std::string& id, const nlohmann::json& body);
  ServiceResponse transcript(const std::string& id);

  std::size_t session_count() const;
  std::size_t page_count() const noexcept { return (options_.config.top_k + options_.page_size - 1) / options_.page_size; }
  const std::vector<std::string>& load_warnings() const noexcept { return warnings_; }

 private:
  struct Entry;

  std::shared_ptr<Entry> find(const std::string& id) const;
  nlohmann::json page_json(const Session& s, std::size_t page) const;
  nlohmann::json round_json(const Entry& e) const;
  void persist(Entry& e);

  const Engine& engine_;
  ServiceOptions options_;
  SessionStore store_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::vector<std::string> warnings_;
};

void register_routes(httplib::Server& server, SessionService& service);

// Binds host:port (throws Error(kPortInUse) when taken) and serves until
// the process ends.
void serve(const Engine& engine, const ServiceOptions& options, const std::string& host, int port);

// SO_REUSEADDR only, so a port held by another process is reported as taken.
void use_exclusive_port(httplib::Server& server);

}  // namespace zacq

#endif  // ZACQ_SERVICE_HPP_
