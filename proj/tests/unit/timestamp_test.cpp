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

#include "pairminer/timestamp.hpp"

#include <gtest/gtest.h>

#include "pairminer/error.hpp"

namespace pairminer {
namespace {

using std::chrono::seconds;

TEST(Timestamp, ParsesCommonForms) {
  const Timestamp ref = parse_timestamp("2012-01-20T18:29:36Z");
  EXPECT_EQ(format_timestamp(ref), "2012-01-20T18:29:36Z");
  EXPECT_EQ(parse_timestamp("2012-01-20 18:29:36"), ref);
  EXPECT_EQ(parse_timestamp("2012-01-20T18:29:36.987Z"), ref);
  EXPECT_EQ(parse_timestamp("2012-01-20T20:29:36+02:00"), ref);
  EXPECT_EQ(parse_timestamp("2012-01-20T18:29Z"), ref - seconds(36));
  EXPECT_EQ(format_timestamp(parse_timestamp("2012-01-20")), "2012-01-20T00:00:00Z");
}

TEST(Timestamp, RejectsGarbage) {
  for (const char* bad : {"", "2012-13-01T00:00:00Z", "2012-02-30", "yesterday", "2012-01-20T25:00:00",
                          "2012-01-20T18:29:36Zjunk"}) {
    EXPECT_THROW(parse_timestamp(bad), Error) << bad;
  }
}

TEST(Timestamp, RoundTripsOverManyInstants) {
  Timestamp t = parse_timestamp("1999-12-31T23:59:59Z");
  for (int i = 0; i < 2000; ++i) {
    t += seconds(86399 + i * 97);
    EXPECT_EQ(parse_timestamp(format_timestamp(t)), t);
  }
}

TEST(Timestamp, FormatsDurations) {
  EXPECT_EQ(format_duration(0), "0d 00:00h");
  EXPECT_EQ(format_duration(5 * 3600 + 2 * 60), "0d 05:02h");
  EXPECT_EQ(format_duration(25 * 86400 + 7 * 3600 + 23 * 60 + 10), "25d 07:23h");
}

}  // namespace
}  // namespace pairminer
