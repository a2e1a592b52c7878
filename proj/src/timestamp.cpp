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

#include <cctype>
#include <cmath>

#include <fmt/format.h>

#include "pairminer/error.hpp"

namespace pairminer {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  void skip() { ++pos_; }

  int digits(std::size_t count) {
    int value = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (done() || !std::isdigit(static_cast<unsigned char>(peek()))) {
        fail();
      }
      value = value * 10 + (peek() - '0');
      skip();
    }
    return value;
  }

  void expect(char c) {
    if (peek() != c) fail();
    skip();
  }

  [[noreturn]] void fail() const {
    throw Error("invalid timestamp '" + std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  Cursor in(text);
  const int y = in.digits(4);
  in.expect('-');
  const int mo = in.digits(2);
  in.expect('-');
  const int d = in.digits(2);

  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) in.fail();

  int hh = 0, mm = 0, ss = 0;
  int offset_minutes = 0;
  if (!in.done()) {
    if (in.peek() != 'T' && in.peek() != ' ') in.fail();
    in.skip();
    hh = in.digits(2);
    in.expect(':');
    mm = in.digits(2);
    if (in.peek() == ':') {
      in.skip();
      ss = in.digits(2);
    }
    if (in.peek() == '.' || in.peek() == ',') {
      in.skip();
      if (!std::isdigit(static_cast<unsigned char>(in.peek()))) in.fail();
      while (std::isdigit(static_cast<unsigned char>(in.peek()))) in.skip();
    }
    if (in.peek() == 'Z' || in.peek() == 'z') {
      in.skip();
    } else if (in.peek() == '+' || in.peek() == '-') {
      const int sign = in.peek() == '-' ? -1 : 1;
      in.skip();
      const int oh = in.digits(2);
      if (in.peek() == ':') in.skip();
      const int om = in.digits(2);
      offset_minutes = sign * (oh * 60 + om);
    }
    if (!in.done()) in.fail();
    if (hh > 23 || mm > 59 || ss > 60) in.fail();
  }

  return sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss} -
         minutes{offset_minutes};
}

std::string format_timestamp(Timestamp ts) {
  using namespace std::chrono;
  const auto day_point = floor<days>(ts);
  const year_month_day ymd{day_point};
  const hh_mm_ss tod{ts - day_point};
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z",
                     static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()),
                     static_cast<unsigned>(ymd.day()), tod.hours().count(),
                     tod.minutes().count(), tod.seconds().count());
}

std::string format_duration(double seconds) {
  const auto total_minutes = static_cast<long long>(std::llround(seconds / 60.0));
  const long long d = total_minutes / (24 * 60);
  const long long h = (total_minutes / 60) % 24;
  const long long m = total_minutes % 60;
  return fmt::format("{}d {:02}:{:02}h", d, h, m);
}

}  // namespace pairminer
