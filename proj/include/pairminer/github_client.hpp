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

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "pairminer/repo_host.hpp"

namespace pairminer {

inline constexpr const char* kGitHubTokenEnv = "PAIRMINER_GH_TOKEN";

struct HttpResponse {
  int status = 0;
  /// Header names lower-cased.
  std::map<std::string, std::string> headers;
  std::string body;
};

/// Minimal GET transport so the client can be exercised offline.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  /// Throws NetworkError when no response could be obtained.
  virtual HttpResponse get(const std::string& path_and_query,
                           const std::map<std::string, std::string>& headers) = 0;
};

/// HTTPS transport for https://api.github.com.
std::unique_ptr<HttpTransport> make_github_transport(std::string host = "api.github.com");

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds base_delay{1000};
  std::chrono::milliseconds max_delay{60000};
  std::function<void(std::chrono::milliseconds)> sleep;
  std::function<std::chrono::sys_seconds()> clock;
};

/// GitHub REST API v3 implementation of RepoHost. Rate-limited responses
/// are retried with bounded exponential backoff; requests are serialized.
class GitHubHost : public RepoHost {
 public:
  GitHubHost(std::unique_ptr<HttpTransport> transport, std::optional<std::string> token,
             RetryPolicy retry = {});

  /// Token from PAIRMINER_GH_TOKEN, if set.
  static std::optional<std::string> token_from_env();

  std::vector<RepoInfo> search_repositories(const std::string& query) override;
  std::int64_t closed_pull_requests(const std::string& repo) override;
  std::vector<std::string> list_files(const std::string& repo) override;
  std::string file_contents(const std::string& repo, const std::string& path) override;

 private:
  HttpResponse request(const std::string& path_and_query, bool raw = false);
  std::string default_branch(const std::string& repo);

  std::unique_ptr<HttpTransport> transport_;
  std::optional<std::string> token_;
  RetryPolicy retry_;
  std::map<std::string, std::string> branches_;
};

std::string url_encode(std::string_view text);

/// Parses one repository object of the REST API.
RepoInfo repo_from_api_json(const nlohmann::json& item);

}  // namespace pairminer
