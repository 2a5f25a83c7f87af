// Copyright 2026 The survx Authors. All Rights Reserved.
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

#include "survx/serve/mos_server.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

namespace survx::serve {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kScaleLabels[] = {"Bad", "Poor", "Fair", "Good", "Excellent"};

constexpr const char* kFallbackPage = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>survx rating</title></head>
<body><p>Rating UI assets are not installed. The JSON API is served under /api/.</p></body></html>
)";

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ServeError(ServeErrc::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string content_type_for(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".png") return "image/png";
  if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") return "image/x-portable-anymap";
  return "application/octet-stream";
}

// Parses one rating object; returns an error message or empty on success.
std::string parse_rating(const Json& j, eval::MosRecord& out) {
  if (!j.is_object()) return "rating must be a JSON object";
  for (const char* key : {"rater_id", "image_id", "method_id"}) {
    if (!j.contains(key) || !j[key].is_string() || j[key].get<std::string>().empty()) {
      return std::string("field '") + key + "' must be a non-empty string";
    }
  }
  if (!j.contains("score") || !j["score"].is_number_integer()) return "field 'score' must be an integer";
  const auto score = j["score"].get<long long>();
  if (score < eval::kMinScore || score > eval::kMaxScore) return "score must be between 1 and 5";
  out.rater_id = j["rater_id"].get<std::string>();
  out.image_id = j["image_id"].get<std::string>();
  out.method_id = j["method_id"].get<std::string>();
  out.score = static_cast<int>(score);
  return {};
}

void append_durable(const std::filesystem::path& path, const std::string& line) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) throw ServeError(ServeErrc::kIo, "cannot open " + path.string() + ": " + std::strerror(errno));
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      const int err = errno;
      ::close(fd);
      throw ServeError(ServeErrc::kIo, "write failed on " + path.string() + ": " + std::strerror(err));
    }
    written += static_cast<std::size_t>(n);
  }
  const bool synced = ::fsync(fd) == 0;
  ::close(fd);
  if (!synced) throw ServeError(ServeErrc::kIo, "fsync failed on " + path.string());
}

}  // namespace

SessionManifest parse_manifest(std::string_view text, const std::filesystem::path& data_dir) {
  SessionManifest m;
  try {
    const Json j = Json::parse(text);
    m.session_id = j.value("session_id", std::string("session"));
    m.seed = j.value("seed", std::uint64_t{0});
    std::set<std::string> ids;
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& e : j.at("images")) {
      SessionEntry entry;
      entry.image_id = e.at("image_id").get<std::string>();
      entry.method_id = e.at("method_id").get<std::string>();
      entry.file = e.at("file").get<std::string>();
      entry.id = e.value("id", entry.image_id + "__" + entry.method_id);
      if (entry.image_id.empty() || entry.method_id.empty() || entry.id.empty()) {
        throw ServeError(ServeErrc::kBadManifest, "manifest entries need non-empty ids");
      }
      if (entry.id.find('/') != std::string::npos) {
        throw ServeError(ServeErrc::kBadManifest, "manifest id '" + entry.id + "' contains '/'");
      }
      if (entry.file.is_absolute() || entry.file.lexically_normal().string().starts_with("..")) {
        throw ServeError(ServeErrc::kBadManifest, "manifest file '" + entry.file.string() + "' escapes the data directory");
      }
      if (!ids.insert(entry.id).second || !pairs.emplace(entry.image_id, entry.method_id).second) {
        throw ServeError(ServeErrc::kBadManifest, "duplicate manifest entry '" + entry.id + "'");
      }
      if (!data_dir.empty() && !std::filesystem::is_regular_file(data_dir / entry.file)) {
        throw ServeError(ServeErrc::kBadManifest, "manifest image '" + entry.file.string() + "' not found");
      }
      m.entries.push_back(std::move(entry));
    }
    if (m.entries.empty()) throw ServeError(ServeErrc::kBadManifest, "manifest lists no images");
  } catch (const nlohmann::json::exception& e) {
    throw ServeError(ServeErrc::kBadManifest, std::string("malformed session manifest: ") + e.what());
  }
  return m;
}

SessionManifest load_manifest(const std::filesystem::path& data_dir) {
  const auto path = data_dir / kManifestFile;
  if (!std::filesystem::is_regular_file(path)) {
    throw ServeError(ServeErrc::kBadManifest, "no " + std::string(kManifestFile) + " in " + data_dir.string());
  }
  return parse_manifest(read_text(path), data_dir);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::size_t> rater_order(const SessionManifest& manifest, std::string_view rater_id) {
  std::vector<std::size_t> order(manifest.entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Shuffle draws come from splitmix64.
  std::uint64_t state = manifest.seed ^ fnv1a64(rater_id);
  auto next = [&state] {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(next() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

std::string session_json(const SessionManifest& manifest, std::string_view rater_id) {
  Json j;
  j["session_id"] = manifest.session_id;
  j["rater_id"] = std::string(rater_id);
  Json images = Json::array();
  for (std::size_t idx : rater_order(manifest, rater_id)) {
    const auto& e = manifest.entries[idx];
    images.push_back({{"id", e.id}, {"image_id", e.image_id}, {"method_id", e.method_id}, {"url", "/api/image/" + e.id}});
  }
  j["images"] = std::move(images);
  Json scale = Json::array();
  for (int s = eval::kMinScore; s <= eval::kMaxScore; ++s) scale.push_back({{"score", s}, {"label", kScaleLabels[s - 1]}});
  j["scale"] = std::move(scale);
  return j.dump();
}

RatingStore::RatingStore(std::filesystem::path log_path, const SessionManifest& manifest)
    : log_path_(std::move(log_path)) {
  for (const auto& e : manifest.entries) known_.emplace(e.image_id, e.method_id);
  if (!std::filesystem::exists(log_path_)) return;
  std::ifstream in(log_path_);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    eval::MosRecord r;
    std::string err;
    try {
      err = parse_rating(Json::parse(line), r);
    } catch (const nlohmann::json::exception& e) {
      err = e.what();
    }
    if (!err.empty()) {
      throw ServeError(ServeErrc::kBadRatingsLog,
                       log_path_.string() + " line " + std::to_string(line_no) + ": " + err);
    }
    if (!seen_.emplace(r.rater_id, r.image_id, r.method_id).second) {
      throw ServeError(ServeErrc::kBadRatingsLog,
                       log_path_.string() + " line " + std::to_string(line_no) + ": duplicate rating");
    }
    records_.push_back(std::move(r));
  }
}

RatingResult RatingStore::submit(std::string_view body_json) {
  eval::MosRecord r;
  std::string err;
  try {
    err = parse_rating(Json::parse(body_json), r);
  } catch (const nlohmann::json::exception&) {
    err = "body is not valid JSON";
  }
  if (!err.empty()) return {RatingOutcome::kInvalid, err};
  return submit(r);
}

RatingResult RatingStore::submit(const eval::MosRecord& r) {
  if (r.rater_id.empty() || r.score < eval::kMinScore || r.score > eval::kMaxScore) {
    return {RatingOutcome::kInvalid, "invalid rating"};
  }
  if (!known_.contains({r.image_id, r.method_id})) {
    return {RatingOutcome::kInvalid, "unknown image '" + r.image_id + "' for method '" + r.method_id + "'"};
  }
  const std::lock_guard lock(mutex_);
  if (seen_.contains({r.rater_id, r.image_id, r.method_id})) {
    return {RatingOutcome::kDuplicate, "rating already recorded"};
  }
  Json line;
  line["rater_id"] = r.rater_id;
  line["image_id"] = r.image_id;
  line["method_id"] = r.method_id;
  line["score"] = r.score;
  append_durable(log_path_, line.dump() + "\n");
  seen_.emplace(r.rater_id, r.image_id, r.method_id);
  records_.push_back(r);
  return {RatingOutcome::kCreated, "recorded"};
}

std::vector<eval::MosRecord> RatingStore::records() const {
  const std::lock_guard lock(mutex_);
  return records_;
}

std::string RatingStore::export_csv() const { return eval::export_mos_csv(records()); }

std::filesystem::path resolve_data_dir(const std::filesystem::path& fallback) {
  if (const char* env = std::getenv("SURVX_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return fallback;
}

struct MosServer::Impl {
  ServeConfig config;
  SessionManifest manifest;
  std::map<std::string, std::size_t> by_id;
  std::unique_ptr<RatingStore> store;
  httplib::Server server;
  bool bound = false;
};

MosServer::MosServer(ServeConfig config) : impl_(std::make_unique<Impl>()) {
  auto& d = *impl_;
  d.config = std::move(config);
  d.manifest = load_manifest(d.config.data_dir);
  for (std::size_t i = 0; i < d.manifest.entries.size(); ++i) d.by_id[d.manifest.entries[i].id] = i;
  d.store = std::make_unique<RatingStore>(d.config.data_dir / kRatingsFile, d.manifest);

  auto json_error = [](httplib::Response& res, int status, const std::string& message) {
    res.status = status;
    res.set_content(Json{{"error", message}}.dump(), "application/json");
  };

  d.server.Get("/api/session", [this, json_error](const httplib::Request& req, httplib::Response& res) {
    const auto rater = req.get_param_value("rater_id");
    if (rater.empty()) return json_error(res, 400, "rater_id query parameter required");
    res.set_content(session_json(impl_->manifest, rater), "application/json");
  });

  d.server.Get(R"(/api/image/([^/]+))", [this, json_error](const httplib::Request& req, httplib::Response& res) {
    const auto it = impl_->by_id.find(req.matches[1].str());
    if (it == impl_->by_id.end()) return json_error(res, 404, "unknown image id");
    const auto& entry = impl_->manifest.entries[it->second];
    const auto path = impl_->config.data_dir / entry.file;
    try {
      res.set_content(read_text(path), content_type_for(path));
    } catch (const ServeError& e) {
      json_error(res, 500, e.what());
    }
  });

  d.server.Post("/api/rating", [this, json_error](const httplib::Request& req, httplib::Response& res) {
    try {
      const auto result = impl_->store->submit(req.body);
      switch (result.outcome) {
        case RatingOutcome::kCreated:
          res.status = 201;
          res.set_content(Json{{"status", "created"}}.dump(), "application/json");
          return;
        case RatingOutcome::kDuplicate:
          return json_error(res, 409, result.message);
        case RatingOutcome::kInvalid:
          return json_error(res, 400, result.message);
      }
    } catch (const ServeError& e) {
      json_error(res, 500, e.what());
    }
  });

  d.server.Get("/api/export", [this](const httplib::Request&, httplib::Response& res) {
    res.set_header("Content-Disposition", "attachment; filename=\"mos.csv\"");
    res.set_content(impl_->store->export_csv(), "text/csv");
  });

  // Exclusive binds: a busy port is an error.
  d.server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });

  const auto ui = d.config.ui_dir.empty() ? d.config.data_dir / "ui" : d.config.ui_dir;
  if (!std::filesystem::is_directory(ui) || !d.server.set_mount_point("/", ui.string())) {
    d.server.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kFallbackPage, "text/html");
    });
  }
}

MosServer::~MosServer() { stop(); }

int MosServer::bind() {
  auto& d = *impl_;
  int port = d.config.port;
  if (port == 0) {
    port = d.server.bind_to_any_port(d.config.host);
    if (port < 0) throw ServeError(ServeErrc::kPortInUse, "cannot bind any port on " + d.config.host);
  } else if (!d.server.bind_to_port(d.config.host, port)) {
    throw ServeError(ServeErrc::kPortInUse, "port " + std::to_string(port) + " is in use on " + d.config.host);
  }
  d.bound = true;
  return port;
}

void MosServer::serve() {
  if (!impl_->bound) bind();
  impl_->server.listen_after_bind();
}

void MosServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void MosServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace survx::serve
