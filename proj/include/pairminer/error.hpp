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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace pairminer {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A required input (file, cache) is missing or unreadable.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed record in a line-oriented input file.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// Failure talking to a remote repository host.
class NetworkError : public Error {
 public:
  NetworkError(const std::string& what,
               std::optional<long> retry_after_seconds = std::nullopt)
      : Error(what), retry_after_(retry_after_seconds) {}

  std::optional<long> retry_after_seconds() const { return retry_after_; }

 private:
  std::optional<long> retry_after_;
};

/// The host kept rejecting requests with a rate limit after all retries.
class RateLimitError : public NetworkError {
 public:
  using NetworkError::NetworkError;
};

}  // namespace pairminer
