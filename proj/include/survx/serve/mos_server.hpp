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

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "survx/eval/mos.hpp"

namespace survx::serve {

enum class ServeErrc {
  kBadManifest,
  kBadRatingsLog,
  kPortInUse,
  kIo,
};

class ServeError : public std::runtime_error {
 public:
  ServeError(ServeErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ServeErrc code() const noexcept { return code_; }

 private:
  ServeErrc code_;
};

inline constexpr const char* kManifestFile = "session.json";
inline constexpr const char* kRatingsFile = "ratings.jsonl";
inline constexpr int kDefaultPort = 8080;

struct SessionEntry {
  std::string id;  // URL key for /api/image/{id}
  std::string image_id;
  std::string method_id;
  std::filesystem::path file;  // relative to the data directory
};

// session.json:
//   {"session_id": "...", "seed": 7,
//    "images": [{"id"?: "...", "image_id": "...", "method_id": "...", "file": "..."}]}
// id defaults to "<image_id>__<method_id>".
struct SessionManifest {
  std::string session_id;
  std::uint64_t seed = 0;
  std::vector<SessionEntry> entries;
};

SessionManifest parse_manifest(std::string_view json, const std::filesystem::path& data_dir);
SessionManifest load_manifest(const std::filesystem::path& data_dir);

std::uint64_t fnv1a64(std::string_view text);
// Per-rater Fisher-Yates order of manifest indices, seeded by the manifest
// seed and the rater id.
std::vector<std::size_t> rater_order(const SessionManifest& manifest, std::string_view rater_id);
std::string session_json(const SessionManifest& manifest, std::string_view rater_id);

enum class RatingOutcome { kCreated, kInvalid, kDuplicate };

struct RatingResult {
  RatingOutcome outcome = RatingOutcome::kInvalid;
  std::string message;
};

// Append-only rating log. A rating is acknowledged only after its JSONL line
// has been written and fsynced.
class RatingStore {
 public:
  RatingStore(std::filesystem::path log_path, const SessionManifest& manifest);

  RatingResult submit(std::string_view body_json);
  RatingResult submit(const eval::MosRecord& record);
  std::vector<eval::MosRecord> records() const;
  std::string export_csv() const;

 private:
  std::filesystem::path log_path_;
  std::set<std::pair<std::string, std::string>> known_;  // (image_id, method_id)
  std::set<std::tuple<std::string, std::string, std::string>> seen_;
  std::vector<eval::MosRecord> records_;
  mutable std::mutex mutex_;
};

struct ServeConfig {
  std::filesystem::path data_dir;
  std::filesystem::path ui_dir;  // static assets; empty means <data_dir>/ui
  std::string host = "127.0.0.1";
  int port = kDefaultPort;  // 0 picks a free port
};

// Data directory from SURVX_DATA_DIR when set, else fallback.
std::filesystem::path resolve_data_dir(const std::filesystem::path& fallback);

class MosServer {
 public:
  explicit MosServer(ServeConfig config);
  ~MosServer();
  MosServer(const MosServer&) = delete;
  MosServer& operator=(const MosServer&) = delete;

  // Binds the port; raises kPortInUse on failure. Returns the bound port.
  int bind();
  // Blocks serving requests until stop().
  void serve();
  // Blocks until serve() is accepting connections.
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace survx::serve
