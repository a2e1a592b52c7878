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

#include "pairminer/github_client.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <mutex>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <fmt/format.h>

#include "pairminer/error.hpp"

namespace pairminer {
namespace {

using nlohmann::json;

class HttplibTransport : public HttpTransport {
 public:
  explicit HttplibTransport(std::string host) : client_(std::move(host)) {
    client_.set_connection_timeout(10);
    client_.set_read_timeout(30);
    client_.set_follow_location(true);
  }

  HttpResponse get(const std::string& path_and_query,
                   const std::map<std::string, std::string>& headers) override {
    httplib::Headers h(headers.begin(), headers.end());
    auto res = client_.Get(path_and_query, h);
    if (!res) throw NetworkError(fmt::format("GET {} failed: {}", path_and_query, httplib::to_string(res.error())));
    HttpResponse out;
    out.status = res->status;
    out.body = res->body;
    for (const auto& [k, v] : res->headers) {
      std::string key = k;
      std::transform(key.begin(), key.end(), key.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      out.headers[key] = v;
    }
    return out;
  }

 private:
  httplib::SSLClient client_;
};

std::optional<long> header_long(const HttpResponse& r, const std::string& name) {
  auto it = r.headers.find(name);
  if (it == r.headers.end()) return std::nullopt;
  long v = 0;
  const auto& s = it->second;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

bool is_rate_limited(const HttpResponse& r) {
  if (r.status == 429) return true;
  if (r.status != 403) return false;
  auto remaining = header_long(r, "x-ratelimit-remaining");
  return (remaining && *remaining == 0) || r.headers.count("retry-after") > 0;
}

json parse_body(const HttpResponse& r, const std::string& what) {
  try {
    return json::parse(r.body);
  } catch (const json::exception& e) {
    throw NetworkError(fmt::format("malformed response for {}: {}", what, e.what()));
  }
}

}  // namespace

std::unique_ptr<HttpTransport> make_github_transport(std::string host) {
  return std::make_unique<HttplibTransport>(std::move(host));
}

std::string url_encode(std::string_view text) {
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~')
      out += static_cast<char>(c);
    else
      out += fmt::format("%{:02X}", c);
  }
  return out;
}

GitHubHost::GitHubHost(std::unique_ptr<HttpTransport> transport, std::optional<std::string> token,
                       RetryPolicy retry)
    : transport_(std::move(transport)), token_(std::move(token)), retry_(std::move(retry)) {
  if (!transport_) throw Error("GitHubHost needs a transport");
  if (retry_.max_attempts < 1) throw Error("retry policy needs at least one attempt");
  if (!retry_.sleep) retry_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (!retry_.clock)
    retry_.clock = [] { return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()); };
}

std::optional<std::string> GitHubHost::token_from_env() {
  const char* v = std::getenv(kGitHubTokenEnv);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

HttpResponse GitHubHost::request(const std::string& path_and_query, bool raw) {
  std::map<std::string, std::string> headers{
      {"Accept", raw ? "application/vnd.github.raw" : "application/vnd.github+json"},
      {"User-Agent", "pairminer"},
      {"X-GitHub-Api-Version", "2022-11-28"}};
  if (token_) headers["Authorization"] = "Bearer " + *token_;

  std::optional<long> retry_after;
  std::string last_problem;
  for (int attempt = 0; attempt < retry_.max_attempts; ++attempt) {
    HttpResponse r;
    bool transient = false;
    try {
      r = transport_->get(path_and_query, headers);
    } catch (const NetworkError& e) {
      transient = true;
      last_problem = e.what();
    }

    std::chrono::milliseconds backoff =
        std::min<std::chrono::milliseconds>(retry_.max_delay, retry_.base_delay * (1LL << std::min(attempt, 20)));
    std::chrono::milliseconds wait = backoff;
    bool limited = false;
    if (!transient) {
      if (r.status >= 200 && r.status < 300) return r;
      if (is_rate_limited(r)) {
        limited = true;
        retry_after = header_long(r, "retry-after");
        if (!retry_after) {
          if (auto reset = header_long(r, "x-ratelimit-reset")) {
            long delta = *reset - retry_.clock().time_since_epoch().count();
            retry_after = std::max(delta, 0L);
          }
        }
        if (retry_after) wait = std::chrono::milliseconds(*retry_after * 1000);
        last_problem = fmt::format("rate limited (HTTP {})", r.status);
      } else if (r.status >= 500) {
        transient = true;
        last_problem = fmt::format("HTTP {}", r.status);
      } else if (r.status == 401) {
        throw NetworkError(fmt::format("GET {}: authentication failed (set {})", path_and_query,
                                       kGitHubTokenEnv));
      } else {
        throw NetworkError(fmt::format("GET {}: HTTP {}", path_and_query, r.status));
      }
    }
    if (attempt + 1 == retry_.max_attempts) {
      if (limited)
        throw RateLimitError(fmt::format("GET {}: {} after {} attempts", path_and_query, last_problem,
                                         retry_.max_attempts),
                             retry_after);
      break;
    }
    retry_.sleep(std::min(wait, retry_.max_delay));
  }
  throw NetworkError(fmt::format("GET {}: {} after {} attempts", path_and_query, last_problem,
                                 retry_.max_attempts));
}

std::vector<RepoInfo> GitHubHost::search_repositories(const std::string& query) {
  auto r = request(fmt::format("/search/repositories?q={}&sort=stars&order=desc&per_page=100",
                               url_encode(query)));
  json body = parse_body(r, "repository search");
  std::vector<RepoInfo> out;
  try {
    for (const auto& item : body.at("items")) {
      out.push_back(repo_from_api_json(item));
      if (!out.back().default_branch.empty())
        branches_[out.back().full_name] = out.back().default_branch;
    }
  } catch (const std::exception& e) {
    throw NetworkError(fmt::format("unexpected repository search response: {}", e.what()));
  }
  return out;
}

std::int64_t GitHubHost::closed_pull_requests(const std::string& repo) {
  auto r = request(fmt::format("/search/issues?q={}&per_page=1",
                               url_encode(fmt::format("repo:{} type:pr is:closed", repo))));
  json body = parse_body(r, "pull-request search");
  if (!body.contains("total_count") || !body["total_count"].is_number_integer())
    throw NetworkError("pull-request search response lacks total_count");
  return body["total_count"].get<std::int64_t>();
}

std::string GitHubHost::default_branch(const std::string& repo) {
  auto it = branches_.find(repo);
  if (it != branches_.end()) return it->second;
  json body = parse_body(request("/repos/" + repo), "repository");
  std::string branch = body.value("default_branch", "");
  if (branch.empty()) throw NetworkError(fmt::format("{} has no default branch", repo));
  branches_[repo] = branch;
  return branch;
}

std::vector<std::string> GitHubHost::list_files(const std::string& repo) {
  auto branch = default_branch(repo);
  json body = parse_body(
      request(fmt::format("/repos/{}/git/trees/{}?recursive=1", repo, url_encode(branch))), "tree");
  std::vector<std::string> out;
  for (const auto& entry : body.value("tree", json::array()))
    if (entry.value("type", "") == "blob") out.push_back(entry.value("path", ""));
  std::sort(out.begin(), out.end());
  return out;
}

std::string GitHubHost::file_contents(const std::string& repo, const std::string& path) {
  std::string encoded;
  for (std::size_t start = 0; start <= path.size();) {
    auto slash = path.find('/', start);
    auto end = slash == std::string::npos ? path.size() : slash;
    if (!encoded.empty()) encoded += '/';
    encoded += url_encode(std::string_view(path).substr(start, end - start));
    if (slash == std::string::npos) break;
    start = slash + 1;
  }
  auto branch = default_branch(repo);
  return request(fmt::format("/repos/{}/contents/{}?ref={}", repo, encoded, url_encode(branch)), true)
      .body;
}

}  // namespace pairminer
