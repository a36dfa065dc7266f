// Copyright 2026 The tcdiscover Authors
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

#include "tcdiscover/service.hpp"

#include <charconv>
#include <mutex>
#include <shared_mutex>

#include "httplib.h"

#include "tcdiscover/error.hpp"
#include "tcdiscover/json_io.hpp"

namespace tcd {
namespace {

using json::Json;

int status_for(const std::string& code) {
  if (code == "UnknownId" || code == "UnknownProfile") return 404;
  if (code == "UnknownKeyword" || code == "InvalidArgument" || code == "InvalidConfig" ||
      code == "UnknownScope" || code == "BadName" || code == "DuplicateProfile" ||
      code == "InvalidRefinement" || code == "SyntaxError") {
    return 400;
  }
  return 500;
}

void send_error(httplib::Response& res, int status, const std::string& code,
                const std::string& message, const std::vector<std::string>& suggestions = {}) {
  Json j;
  j["status"] = status;
  j["code"] = code;
  j["message"] = message;
  if (!suggestions.empty()) j["suggestions"] = suggestions;
  res.status = status;
  res.set_content(json::dump(j), "application/json");
}

void send_json(httplib::Response& res, std::string body, int status = 200) {
  res.status = status;
  res.set_content(std::move(body), "application/json");
}

void send_text(httplib::Response& res, std::string body, Format format) {
  switch (format) {
    case Format::Json: send_json(res, std::move(body)); return;
    case Format::Csv: res.set_content(std::move(body), "text/csv; charset=utf-8"); return;
    case Format::Markdown: res.set_content(std::move(body), "text/markdown; charset=utf-8"); return;
  }
}

nlohmann::json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return nlohmann::json::object();
  try {
    return nlohmann::json::parse(req.body);
  } catch (const nlohmann::json::exception& e) {
    throw Error("InvalidArgument", std::string("request body is not valid JSON: ") + e.what());
  }
}

long long int_param(const httplib::Request& req, const std::string& name, long long fallback) {
  if (!req.has_param(name)) return fallback;
  const auto v = req.get_param_value(name);
  long long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw Error("InvalidArgument", "query parameter '" + name + "' must be an integer");
  }
  return out;
}

double double_param(const httplib::Request& req, const std::string& name, double fallback) {
  if (!req.has_param(name)) return fallback;
  const auto v = req.get_param_value(name);
  double out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw Error("InvalidArgument", "query parameter '" + name + "' must be a number");
  }
  return out;
}

bool bool_param(const httplib::Request& req, const std::string& name) {
  if (!req.has_param(name)) return false;
  const auto v = req.get_param_value(name);
  return v.empty() || v == "1" || v == "true" || v == "yes";
}

}  // namespace

std::pair<std::string, int> parse_address(const std::string& address) {
  auto colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw Error("InvalidArgument", "address '" + address + "' must be HOST:PORT");
  }
  int port = -1;
  const auto p = std::string_view(address).substr(colon + 1);
  auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), port);
  if (ec != std::errc{} || ptr != p.data() + p.size() || port < 0 || port > 65535) {
    throw Error("InvalidArgument", "invalid port in '" + address + "'");
  }
  return {address.substr(0, colon), port};
}

struct Service::Impl {
  ServiceOptions options;
  httplib::Server server;
  mutable std::shared_mutex snapshot_mutex;
  std::shared_ptr<const Snapshot> current;
  std::mutex writer;

  std::shared_ptr<const Snapshot> get() const {
    std::shared_lock lock(snapshot_mutex);
    return current;
  }

  void publish(std::shared_ptr<const Snapshot> next) {
    std::unique_lock lock(snapshot_mutex);
    current = std::move(next);
  }

  template <class Fn>
  httplib::Server::Handler guarded(Fn fn) {
    return [this, fn](const httplib::Request& req, httplib::Response& res) {
      try {
        fn(*get(), req, res);
      } catch (const Error& e) {
        send_error(res, status_for(e.code()), e.code(), e.what(), e.suggestions());
      } catch (const std::exception& e) {
        send_error(res, 500, "Internal", e.what());
      }
    };
  }

  void routes();
};

void Service::Impl::routes() {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  server.Get("/api/vocabulary", guarded([](const Snapshot& s, const auto&, auto& res) {
    send_json(res, views::vocabulary(s.corpus.vocabulary));
  }));
  server.Get("/api/testcases", guarded([](const Snapshot& s, const auto&, auto& res) {
    send_json(res, views::test_cases(s));
  }));
  server.Get("/api/testcases/:id", guarded([](const Snapshot& s, const auto& req, auto& res) {
    send_json(res, views::test_case(s, req.path_params.at("id")));
  }));
  server.Post("/api/query", guarded([](const Snapshot& s, const auto& req, auto& res) {
    auto body = parse_body(req);
    auto filter = json::filter_from_json(body.value("filter", nlohmann::json::object()));
    const bool counts = body.value("with_facet_counts", false);
    send_json(res, views::query(s, filter, counts));
  }));
  server.Get("/api/similar/:id", guarded([](const Snapshot& s, const auto& req, auto& res) {
    const auto k = int_param(req, "k", 5);
    if (k < 0) throw Error("InvalidArgument", "k must be non-negative");
    SimilarityConfig cfg;
    for (auto d : kAllDimensions) {
      cfg.weights[index_of(d)] = double_param(req, std::string(dimension_key(d)), 1.0);
    }
    send_json(res, views::similar(s, req.path_params.at("id"), static_cast<std::size_t>(k), cfg));
  }));
  server.Get("/api/matrix", guarded([](const Snapshot& s, const auto& req, auto& res) {
    MatrixOptions options;
    options.scope = Scope::parse(req.has_param("scope") ? req.get_param_value("scope") : "all");
    for (std::size_t i = 0; i < req.get_param_value_count("dimension"); ++i) {
      auto v = req.get_param_value("dimension", i);
      auto d = parse_dimension(v);
      if (!d) throw Error("InvalidArgument", "unknown dimension '" + v + "'");
      options.dimensions.push_back(*d);
    }
    options.full_columns = bool_param(req, "full_columns");
    const auto format = parse_format(req.has_param("format") ? req.get_param_value("format") : "json");
    send_text(res, views::matrix(s, options, format), format);
  }));
  server.Get("/api/gaps", guarded([](const Snapshot& s, const auto& req, auto& res) {
    GapConfig cfg;
    cfg.singleton_threshold = static_cast<int>(int_param(req, "singleton_threshold", 1));
    cfg.similarity_floor = double_param(req, "similarity_floor", 0.0);
    const auto format = parse_format(req.has_param("format") ? req.get_param_value("format") : "json");
    send_text(res, views::gaps(s, cfg, format), format);
  }));
  server.Get("/api/profiles", guarded([](const Snapshot& s, const auto&, auto& res) {
    send_json(res, views::profiles(s));
  }));
  server.Post("/api/profiles", guarded([this](const Snapshot&, const auto& req, auto& res) {
    auto profile = json::profile_from_json(parse_body(req));
    std::lock_guard lock(writer);
    auto base = get();
    auto list = base->profiles;
    list.push_back(std::move(profile));
    list = validate_profiles(base->corpus.vocabulary, std::move(list));
    save_profiles(list, base->profiles_path);
    auto next = base->with_profiles(std::move(list));
    send_json(res, json::dump(json::profile_to_json(next->profiles.back())), 201);
    publish(std::move(next));
  }));
  server.Get("/api/profiles/:name/members", guarded([](const Snapshot& s, const auto& req, auto& res) {
    send_json(res, views::profile_members(s, req.path_params.at("name")));
  }));
  server.Get("/api/profiles/:name/benchmark-requirements",
             guarded([](const Snapshot& s, const auto& req, auto& res) {
               send_json(res, views::benchmark_requirements(s, req.path_params.at("name")));
             }));
  server.Post("/api/capabilities/match", guarded([](const Snapshot& s, const auto& req, auto& res) {
    auto body = parse_body(req);
    CapabilitySet cap;
    try {
      cap.components = body.value("components", std::vector<std::string>{});
      if (body.contains("domains")) cap.domains = body.at("domains").template get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception&) {
      throw Error("InvalidArgument", "components and domains must be arrays of strings");
    }
    send_json(res, views::capabilities(s, cap));
  }));
  server.Post("/api/reload", guarded([this](const Snapshot&, const auto&, auto& res) {
    std::lock_guard lock(writer);
    auto next = Snapshot::load(options.snapshot);
    auto body = views::corpus_summary(*next);
    publish(std::move(next));
    send_json(res, std::move(body));
  }));

  if (options.static_dir) {
    std::error_code ec;
    if (std::filesystem::is_directory(*options.static_dir, ec)) {
      server.set_mount_point("/", options.static_dir->string());
    }
  }
}

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  impl_->current = Snapshot::load(impl_->options.snapshot);
  impl_->routes();
}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                        : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error("IoError", "cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void Service::run() { impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_) impl_->server.stop();
}

std::shared_ptr<const Snapshot> Service::snapshot() const { return impl_->get(); }

std::shared_ptr<const Snapshot> Service::reload() {
  std::lock_guard lock(impl_->writer);
  auto next = Snapshot::load(impl_->options.snapshot);
  impl_->publish(next);
  return next;
}

}  // namespace tcd
