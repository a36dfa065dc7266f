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

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "tcdiscover/snapshot.hpp"

namespace tcd {

struct ServiceOptions {
  SnapshotOptions snapshot;
  /// Static web UI assets served at "/" when the directory exists.
  std::optional<std::filesystem::path> static_dir;
};

/// Local HTTP JSON API over an immutable corpus snapshot.
///
/// Requests run concurrently against whichever snapshot was current when
/// they started. Reloads and profile writes are serialized through one
/// writer lock and publish a new snapshot by pointer swap.
class Service {
 public:
  /// Loads the initial snapshot; throws tcd::Error on load failure.
  explicit Service(ServiceOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds host:port (port 0 picks a free one) and returns the bound port.
  /// Throws Error("IoError") if the address cannot be bound.
  int bind(const std::string& host, int port);

  /// Serves until stop() is called. bind() must have succeeded.
  void run();
  void stop();

  std::shared_ptr<const Snapshot> snapshot() const;

  /// Rebuilds the snapshot from disk and swaps it in.
  std::shared_ptr<const Snapshot> reload();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Parses "HOST:PORT"; throws Error("InvalidArgument").
std::pair<std::string, int> parse_address(const std::string& address);

}  // namespace tcd
