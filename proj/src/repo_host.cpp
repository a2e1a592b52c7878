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

#include "pairminer/repo_host.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "pairminer/error.hpp"
#include "pairminer/github_client.hpp"

namespace pairminer {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json repo_json(const RepoInfo& r) {
  ordered_json j;
  j["full_name"] = r.full_name;
  j["language"] = r.language;
  j["stargazers_count"] = r.stars;
  j["pushed_at"] = format_timestamp(r.pushed_at);
  j["default_branch"] = r.default_branch;
  return j;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += '\'';
  return out;
}

}  // namespace

RepoInfo repo_from_api_json(const json& j) {
  RepoInfo r;
  r.full_name = j.at("full_name").get<std::string>();
  if (j.contains("language") && !j["language"].is_null()) r.language = j["language"].get<std::string>();
  r.stars = j.at("stargazers_count").get<std::int64_t>();
  r.pushed_at = parse_timestamp(j.at("pushed_at").get<std::string>());
  if (j.contains("default_branch") && !j["default_branch"].is_null())
    r.default_branch = j["default_branch"].get<std::string>();
  return r;
}

ordered_json HostRecording::to_json() const {
  ordered_json j;
  j["searches"] = ordered_json::array();
  for (const auto& [query, repos] : searches) {
    ordered_json entry;
    entry["query"] = query;
    entry["items"] = ordered_json::array();
    for (const auto& r : repos) entry["items"].push_back(repo_json(r));
    j["searches"].push_back(std::move(entry));
  }
  j["closed_pull_requests"] = ordered_json::object();
  for (const auto& [repo, n] : closed_pull_requests) j["closed_pull_requests"][repo] = n;
  j["files"] = ordered_json::object();
  for (const auto& [repo, files] : files) {
    ordered_json f = ordered_json::object();
    for (const auto& [path, text] : files) f[path] = text;
    j["files"][repo] = std::move(f);
  }
  return j;
}

HostRecording HostRecording::from_json(const json& j) {
  HostRecording rec;
  try {
    const json searches = j.value("searches", json::array());
    const json prs = j.value("closed_pull_requests", json::object());
    const json files = j.value("files", json::object());
    for (const auto& entry : searches) {
      std::vector<RepoInfo> repos;
      for (const auto& item : entry.at("items")) repos.push_back(repo_from_api_json(item));
      rec.searches.emplace_back(entry.at("query").get<std::string>(), std::move(repos));
    }
    for (const auto& [repo, n] : prs.items()) rec.closed_pull_requests[repo] = n.get<std::int64_t>();
    for (const auto& [repo, listing] : files.items()) {
      auto& dest = rec.files[repo];
      for (const auto& [path, text] : listing.items()) dest[path] = text.get<std::string>();
    }
  } catch (const json::exception& e) {
    throw Error(fmt::format("bad host recording: {}", e.what()));
  }
  return rec;
}

HostRecording HostRecording::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open recording {}", path.string()));
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(fmt::format("{}: {}", path.string(), e.what()));
  }
  return from_json(j);
}

void HostRecording::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  out << to_json().dump(2) << '\n';
}

std::vector<RepoInfo> ReplayHost::search_repositories(const std::string& query) {
  for (const auto& [q, repos] : rec_.searches)
    if (q == query) return repos;
  for (const auto& [q, repos] : rec_.searches)
    if (q == "*") return repos;
  throw NetworkError(fmt::format("no recorded search for query '{}'", query));
}

std::int64_t ReplayHost::closed_pull_requests(const std::string& repo) {
  auto it = rec_.closed_pull_requests.find(repo);
  if (it == rec_.closed_pull_requests.end())
    throw NetworkError(fmt::format("no recorded pull-request count for {}", repo));
  return it->second;
}

std::vector<std::string> ReplayHost::list_files(const std::string& repo) {
  std::vector<std::string> out;
  auto it = rec_.files.find(repo);
  if (it == rec_.files.end()) throw NetworkError(fmt::format("no recorded file listing for {}", repo));
  for (const auto& [path, text] : it->second) out.push_back(path);
  return out;
}

std::string ReplayHost::file_contents(const std::string& repo, const std::string& path) {
  auto it = rec_.files.find(repo);
  if (it != rec_.files.end()) {
    auto f = it->second.find(path);
    if (f != it->second.end()) return f->second;
  }
  throw NetworkError(fmt::format("no recorded file {} in {}", path, repo));
}

std::vector<RepoInfo> RecordingHost::search_repositories(const std::string& query) {
  auto repos = inner_.search_repositories(query);
  rec_.searches.emplace_back(query, repos);
  return repos;
}

std::int64_t RecordingHost::closed_pull_requests(const std::string& repo) {
  auto n = inner_.closed_pull_requests(repo);
  rec_.closed_pull_requests[repo] = n;
  return n;
}

std::vector<std::string> RecordingHost::list_files(const std::string& repo) {
  auto files = inner_.list_files(repo);
  // Only fetched paths are replayed, but the repository itself is known.
  rec_.files[repo];
  return files;
}

std::string RecordingHost::file_contents(const std::string& repo, const std::string& path) {
  auto text = inner_.file_contents(repo, path);
  rec_.files[repo][path] = text;
  return text;
}

CloningHost::CloningHost(RepoHost& inner, std::filesystem::path work_dir, std::string url_template)
    : inner_(inner), work_dir_(std::move(work_dir)), url_template_(std::move(url_template)) {
  if (url_template_.find("{repo}") == std::string::npos)
    throw Error("clone URL template must contain {repo}");
}

const std::filesystem::path& CloningHost::checkout(const std::string& repo) {
  auto it = checkouts_.find(repo);
  if (it != checkouts_.end()) return it->second;
  if (repo.empty() || repo.find("..") != std::string::npos || repo.front() == '/')
    throw Error(fmt::format("refusing to clone suspicious repository name '{}'", repo));

  std::string url = url_template_;
  url.replace(url.find("{repo}"), 6, repo);
  std::string dir_name = repo;
  std::replace(dir_name.begin(), dir_name.end(), '/', '_');
  auto dest = work_dir_ / dir_name;
  std::error_code ec;
  std::filesystem::remove_all(dest, ec);
  std::filesystem::create_directories(work_dir_);

  std::string cmd = fmt::format("git clone --quiet --depth 1 -- {} {} 2>&1", shell_quote(url),
                                shell_quote(dest.string()));
  int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw NetworkError(fmt::format("git clone of {} failed", url));
  return checkouts_.emplace(repo, dest).first->second;
}

std::vector<std::string> CloningHost::list_files(const std::string& repo) {
  const auto& root = checkout(repo);
  std::vector<std::string> out;
  for (auto it = std::filesystem::recursive_directory_iterator(root);
       it != std::filesystem::recursive_directory_iterator(); ++it) {
    if (it->is_directory() && it->path().filename() == ".git") {
      it.disable_recursion_pending();
      continue;
    }
    if (it->is_regular_file()) out.push_back(std::filesystem::relative(it->path(), root).generic_string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string CloningHost::file_contents(const std::string& repo, const std::string& path) {
  const auto& root = checkout(repo);
  std::ifstream in(root / path, std::ios::binary);
  if (!in) throw NetworkError(fmt::format("{} not found in clone of {}", path, repo));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pairminer
