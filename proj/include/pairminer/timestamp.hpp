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
#include <string>
#include <string_view>

namespace pairminer {

/// UTC instant with seconds precision.
using Timestamp = std::chrono::sys_seconds;

/// Parses ISO-8601 date-times such as "2012-01-20T18:29:36Z",
/// "2012-01-20 18:29:36.123" or "2012-01-20T18:29:36+02:00". A bare date is
/// midnight UTC. Fractional seconds are truncated. Throws Error on bad input.
Timestamp parse_timestamp(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(Timestamp ts);

/// Formats a duration in seconds as "<d>d <hh>:<mm>h".
std::string format_duration(double seconds);

}  // namespace pairminer
