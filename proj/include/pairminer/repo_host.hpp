// Copyright 2026 The pairminer Authors.
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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pairminer/timestamp.hpp"

namespace pairminer {

/// Repository metadata as reported by the host.
struct RepoInfo {
  std::string full_name;  // owner/name
  std::string language;
  std::int64_t stars = 0;
  Timestamp pushed_at{};
  std::string default_branch;
};

/// Read-only view of a repository host. Implementations never mutate
/// remote state.
class RepoHost {
 public:
  virtual ~RepoHost() = default;

  /// Raw search results for a qualifier query; may include repos that do
  /// not satisfy every qualifier.
  virtual std::vector<RepoInfo> search_repositories(const std::string& query) = 0;
  virtual std::int64_t closed_pull_requests(const std::string& repo) = 0;
  virtual std::vector<std::string> list_files(const std::string& repo) = 0;
  virtual std::string file_contents(const std::string& repo, const std::string& path) = 0;
};

/// Recorded host responses. A search entry whose query is "*" answers any
/// query.
struct HostRecording {
  std::vector<std::pair<std::string, std::vector<RepoInfo>>> searches;
  std::map<std::string, std::int64_t> closed_pull_requests;
  std::map<std::string, std::map<std::string, std::string>> files;

  nlohmann::ordered_json to_json() const;
  static HostRecording from_json(const nlohmann::json& j);
  static HostRecording load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

/// Answers from a recording; unrecorded requests throw NetworkError.
class ReplayHost : public RepoHost {
 public:
  explicit ReplayHost(HostRecording recording) : rec_(std::move(recording)) {}

  std::vector<RepoInfo> search_repositories(const std::string& query) override;
  std::int64_t closed_pull_requests(const std::string& repo) override;
  std::vector<std::string> list_files(const std::string& repo) override;
  std::string file_contents(const std::string& repo, const std::string& path) override;

 private:
  HostRecording rec_;
};

/// Forwards to another host and records every response.
class RecordingHost : public RepoHost {
 public:
  explicit RecordingHost(RepoHost& inner) : inner_(inner) {}

  std::vector<RepoInfo> search_repositories(const std::string& query) override;
  std::int64_t closed_pull_requests(const std::string& repo) override;
  std::vector<std::string> list_files(const std::string& repo) override;
  std::string file_contents(const std::string& repo, const std::string& path) override;

  const HostRecording& recording() const { return rec_; }

 private:
  RepoHost& inner_;
  HostRecording rec_;
};

/// Serves file listings and contents from shallow `git clone`s; search and
/// pull-request counts go to the wrapped host. `url_template` contains
/// "{repo}", e.g. "https://github.com/{repo}.git".
class CloningHost : public RepoHost {
 public:
  CloningHost(RepoHost& inner, std::filesystem::path work_dir,
              std::string url_template = "https://github.com/{repo}.git");

  std::vector<RepoInfo> search_repositories(const std::string& query) override {
    return inner_.search_repositories(query);
  }
  std::int64_t closed_pull_requests(const std::string& repo) override {
    return inner_.closed_pull_requests(repo);
  }
  std::vector<std::string> list_files(const std::string& repo) override;
  std::string file_contents(const std::string& repo, const std::string& path) override;

 private:
  const std::filesystem::path& checkout(const std::string& repo);

  RepoHost& inner_;
  std::filesystem::path work_dir_;
  std::string url_template_;
  std::map<std::string, std::filesystem::path> checkouts_;
};

}  // namespace pairminer
