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


#include "zacq/service.hpp"

#include <sys/socket.h>

#include <iostream>
#include <random>

#include "httplib.h"
#include "zacq/error.hpp"

namespace zacq {

struct SessionService::Entry {
  std::mutex mu;
  std::optional<Session> session;
  SessionRecord record;
};

namespace {

ServiceResponse error_response(int status, std::string_view message) {
  return {status, {{"error", message}}};
}

int status_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kState: return 409;
    case ErrorCode::kInternal:
    case ErrorCode::kIo: return 500;
    default: return 400;
  }
}

std::string new_session_id() {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mu);
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng()),
                static_cast<unsigned long long>(rng()));
  return buf;
}

// {"selected": v} | {"none": true} | {"yes": true} | {"no": true}, or the
// {"kind": ..., "option": ...} form used in transcripts.
Answer parse_answer_body(const nlohmann::json& body) {
  if (!body.is_object()) throw Error(ErrorCode::kInvalidArgument, "answer body must be a JSON object");
  if (body.contains("kind")) return answer_from_json(body);
  if (body.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "answer needs exactly one of selected, none, yes, no");
  }
  const auto& [key, value] = *body.items().begin();
  if (key == "selected") {
    if (!value.is_string() || value.get<std::string>().empty()) {
      throw Error(ErrorCode::kInvalidArgument, "'selected' must be a non-empty string");
    }
    return Answer::selected(value.get<std::string>());
  }
  if (value != true) throw Error(ErrorCode::kInvalidArgument, "'" + key + "' must be true");
  if (key == "none") return Answer::none();
  if (key == "yes") return Answer::yes();
  if (key == "no") return Answer::no();
  throw Error(ErrorCode::kInvalidArgument, "unknown answer field '" + key + "'");
}

}  // namespace

SessionService::SessionService(const Engine& engine, ServiceOptions options)
    : engine_(engine), options_(std::move(options)), store_(options_.store_path) {
  options_.config.validate();
  if (options_.page_size == 0) throw Error(ErrorCode::kInvalidArgument, "page size must be positive");
  for (auto& record : store_.load(&warnings_)) {
    try {
      auto e = std::make_shared<Entry>();
      e->session.emplace(Session::restore(engine_, record.session));
      e->record = std::move(record);
      sessions_[e->record.id] = std::move(e);
    } catch (const std::exception& ex) {
      warnings_.push_back("session " + record.id + " not restored: " + ex.what());
    }
  }
}

SessionService::~SessionService() = default;

std::size_t SessionService::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

std::shared_ptr<SessionService::Entry> SessionService::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

nlohmann::json SessionService::page_json(const Session& s, std::size_t page) const {
  const auto& items = s.ranking().items;
  const std::size_t begin = (page - 1) * options_.page_size;
  const std::size_t end = std::min(items.size(), begin + options_.page_size);
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = begin; i < end; ++i) {
    const FunctionDoc* doc = engine_.corpus().find(items[i].function_id);
    nlohmann::json row = {{"rank", i + 1}, {"id", items[i].function_id}, {"score", items[i].score}};
    if (doc != nullptr) {
      row["name"] = doc->name;
      row["language"] = language_name(doc->language);
      row["comment"] = doc->comment;
      row["url"] = doc->url;
    }
    rows.push_back(std::move(row));
  }
  return {{"page", page}, {"pages", page_count()}, {"page_size", options_.page_size},
          {"total", items.size()}, {"items", rows}};
}

nlohmann::json SessionService::round_json(const Entry& e) const {
  const Session& s = *e.session;
  nlohmann::json j = {{"session_id", e.record.id},
                      {"method", method_name(s.method())},
                      {"round", s.round()},
                      {"results", page_json(s, 1)},
                      {"done", s.done()}};
  j["question"] = s.question() ? to_json(*s.question()) : nlohmann::json();
  return j;
}

void SessionService::persist(Entry& e) {
  e.record.updated = utc_timestamp();
  e.record.session = e.session->to_json();
  store_.append(e.record);
}

ServiceResponse SessionService::create(const nlohmann::json& body) {
  try {
    if (!body.is_object() || !body.contains("query") || !body["query"].is_string()) {
      return error_response(400, "body needs a string field 'query'");
    }
    const std::string query = body["query"].get<std::string>();
    if (query.find_first_not_of(" \t\r\n") == std::string::npos) return error_response(400, "query is empty");
    Method method = Method::kZacq;
    if (body.contains("method")) {
      if (!body["method"].is_string()) return error_response(400, "'method' must be a string");
      method = parse_method(body["method"].get<std::string>());
    }

    auto e = std::make_shared<Entry>();
    e->session.emplace(Session::start(engine_, query, method, options_.config));
    e->record.id = new_session_id();
    e->record.created = utc_timestamp();
    e->record.events.push_back({e->record.created, "query", {{"query", query}, {"method", method_name(method)}}});
    persist(*e);
    nlohmann::json out = round_json(*e);
    std::lock_guard lock(mu_);
    sessions_[e->record.id] = std::move(e);
    return {201, std::move(out)};
  } catch (const Error& ex) {
    return error_response(status_for(ex), ex.what());
  }
}

ServiceResponse SessionService::answer(const std::string& id, const nlohmann::json& body) {
  auto e = find(id);
  if (!e) return error_response(404, "unknown session");
  std::unique_lock lock(e->mu, std::try_to_lock);
  if (!lock.owns_lock()) return error_response(409, "another update to this session is in progress");
  try {
    if (e->session->done()) return error_response(409, "session is done");
    const Answer a = parse_answer_body(body);
    e->session->answer(a);
    const bool positive = a.kind == Answer::Kind::kSelected || a.kind == Answer::Kind::kYes;
    e->record.events.push_back(
        {utc_timestamp(), positive ? "option_selected" : "none_selected", to_json(a)});
    persist(*e);
    return {200, round_json(*e)};
  } catch (const Error& ex) {
    return error_response(status_for(ex), ex.what());
  }
}

ServiceResponse SessionService::results(const std::string& id, std::string_view page_text) {
  auto e = find(id);
  if (!e) return error_response(404, "unknown session");
  std::size_t page = 1;
  if (!page_text.empty()) {
    std::size_t value = 0;
    for (char c : page_text) {
      if (c < '0' || c > '9' || value > 1000000) return error_response(400, "page must be a positive integer");
      value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    page = value;
  }
  if (page < 1 || page > page_count()) {
    return error_response(400, "page must lie in 1.." + std::to_string(page_count()));
  }
  std::lock_guard lock(e->mu);
  try {
    e->record.events.push_back({utc_timestamp(), "page_change", {{"page", page}}});
    persist(*e);
    nlohmann::json out = page_json(*e->session, page);
    out["session_id"] = id;
    return {200, std::move(out)};
  } catch (const Error& ex) {
    return error_response(status_for(ex), ex.what());
  }
}

ServiceResponse SessionService::event(const std::string& id, const nlohmann::json& body) {
  auto e = find(id);
  if (!e) return error_response(404, "unknown session");
  if (!body.is_object() || !body.contains("kind") || !body["kind"].is_string()) {
    return error_response(400, "body needs a string field 'kind'");
  }
  const std::string kind = body["kind"].get<std::string>();
  if (!is_event_kind(kind)) return error_response(400, "unknown event kind '" + kind + "'");
  std::lock_guard lock(e->mu);
  try {
    e->record.events.push_back({utc_timestamp(), kind, body.value("payload", nlohmann::json())});
    persist(*e);
    return {204, nullptr};
  } catch (const Error& ex) {
    return error_response(status_for(ex), ex.what());
  }
}

ServiceResponse SessionService::transcript(const std::string& id) {
  auto e = find(id);
  if (!e) return error_response(404, "unknown session");
  std::lock_guard lock(e->mu);
  nlohmann::json out = e->session->transcript();
  out["session_id"] = id;
  nlohmann::json events = nlohmann::json::array();
  for (const auto& ev : e->record.events) events.push_back({{"timestamp", ev.timestamp}, {"kind", ev.kind}, {"payload", ev.payload}});
  out["events"] = std::move(events);
  return {200, std::move(out)};
}

void register_routes(httplib::Server& server, SessionService& service) {
  auto reply = [](httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    if (r.status != 204) res.set_content(r.body.dump(), "application/json");
  };
  auto parse_body = [](const httplib::Request& req, nlohmann::json& out) {
    out = nlohmann::json::parse(req.body, nullptr, false);
    return !out.is_discarded();
  };

  server.Get("/healthz", [&service](const httplib::Request&, httplib::Response& res) {
    res.set_content(nlohmann::json{{"status", "ok"}, {"sessions", service.session_count()}}.dump(),
                    "application/json");
  });
  server.Post("/sessions", [&, reply, parse_body](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    if (!parse_body(req, body)) return reply(res, error_response(400, "body is not valid JSON"));
    reply(res, service.create(body));
  });
  server.Post(R"(/sessions/([0-9a-f]+)/answer)", [&, reply, parse_body](const httplib::Request& req,
                                                                          httplib::Response& res) {
    nlohmann::json body;
    if (!parse_body(req, body)) return reply(res, error_response(400, "body is not valid JSON"));
    reply(res, service.answer(req.matches[1], body));
  });
  server.Get(R"(/sessions/([0-9a-f]+)/results)", [&, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.results(req.matches[1], req.has_param("page") ? req.get_param_value("page") : ""));
  });
  server.Post(R"(/sessions/([0-9a-f]+)/events)", [&, reply, parse_body](const httplib::Request& req,
                                                                          httplib::Response& res) {
    nlohmann::json body;
    if (!parse_body(req, body)) return reply(res, error_response(400, "body is not valid JSON"));
    reply(res, service.event(req.matches[1], body));
  });
  server.Get(R"(/sessions/([0-9a-f]+)/transcript)", [&, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.transcript(req.matches[1]));
  });
  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(nlohmann::json{{"error", what}}.dump(), "application/json");
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    res.set_content(nlohmann::json{{"error", httplib::status_message(res.status)}}.dump(), "application/json");
  });
}

void use_exclusive_port(httplib::Server& server) {
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
}

void serve(const Engine& engine, const ServiceOptions& options, const std::string& host, int port) {
  SessionService service(engine, options);
  for (const auto& w : service.load_warnings()) std::cerr << "warning: " << w << '\n';
  httplib::Server server;
  use_exclusive_port(server);
  register_routes(server, service);
  if (!server.bind_to_port(host, port)) {
    throw Error(ErrorCode::kPortInUse, "cannot bind " + host + ":" + std::to_string(port) + " (port in use?)");
  }
  std::cerr << "serving on http://" << host << ':' << port << '\n';
  if (!server.listen_after_bind()) throw Error(ErrorCode::kInternal, "server stopped unexpectedly");
}

}  // namespace zacq
