// Copyright 2026 The crisisnet Authors
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

#include "crisisnet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <tuple>
#include <unordered_map>

#include "crisisnet/error.hpp"

namespace crisisnet {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

template <typename Int>
bool ParseInt(std::string_view s, Int& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Fixed-width unsigned field of exactly `width` digits.
bool Digits(std::string_view s, std::size_t pos, std::size_t width, int& out) {
  if (pos + width > s.size()) return false;
  out = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    out = out * 10 + (s[i] - '0');
  }
  return true;
}

std::optional<Timestamp> ParseIso(std::string_view s) {
  const auto day = ParseCivilDay(s.substr(0, std::min<std::size_t>(s.size(), 10)));
  if (!day) return std::nullopt;
  Timestamp t = DayStart(*day);
  std::size_t pos = 10;
  if (pos == s.size()) return t;
  if (s[pos] != 'T' && s[pos] != ' ') return std::nullopt;
  ++pos;
  int hh = 0, mm = 0, ss = 0;
  if (!Digits(s, pos, 2, hh) || pos + 2 >= s.size() || s[pos + 2] != ':' ||
      !Digits(s, pos + 3, 2, mm)) {
    return std::nullopt;
  }
  pos += 5;
  if (pos < s.size() && s[pos] == ':') {
    if (!Digits(s, pos + 1, 2, ss)) return std::nullopt;
    pos += 3;
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  t += hh * 3600 + mm * 60 + ss;
  // Fractional seconds are truncated.
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) return std::nullopt;
  }
  if (pos == s.size()) return t;
  if (s[pos] == 'Z' || s[pos] == 'z') {
    return pos + 1 == s.size() ? std::optional<Timestamp>(t) : std::nullopt;
  }
  if (s[pos] != '+' && s[pos] != '-') return std::nullopt;
  const int sign = s[pos] == '+' ? 1 : -1;
  ++pos;
  int oh = 0, om = 0;
  if (!Digits(s, pos, 2, oh)) return std::nullopt;
  pos += 2;
  if (pos < s.size() && s[pos] == ':') ++pos;
  if (pos < s.size()) {
    if (!Digits(s, pos, 2, om)) return std::nullopt;
    pos += 2;
  }
  if (pos != s.size() || oh > 23 || om > 59) return std::nullopt;
  // Local time minus its offset gives UTC.
  return t - sign * (oh * 3600 + om * 60);
}

struct Row {
  std::string sender;
  std::string recipient;
  Timestamp timestamp;
};

}  // namespace

void ValidateLogFormat(const LogFormatConfig& cfg) {
  std::array<int, 3> seen{};
  for (Column c : cfg.columns) ++seen[static_cast<int>(c)];
  if (seen != std::array<int, 3>{1, 1, 1}) {
    throw Error(ErrorCode::kConfig,
                "column order must name sender, recipient and timestamp once each");
  }
  if (cfg.delimiter == '\n' || cfg.delimiter == '\r' || cfg.delimiter == '\0') {
    throw Error(ErrorCode::kConfig, "delimiter must be a printable single byte");
  }
  if (!(cfg.malformed_threshold >= 0.0 && cfg.malformed_threshold <= 1.0)) {
    throw Error(ErrorCode::kConfig, "malformed threshold must lie in [0, 1]");
  }
}

std::optional<CivilDay> ParseCivilDay(std::string_view s) {
  int y = 0, m = 0, d = 0;
  if (s.size() != 10 || s[4] != '-' || s[7] != '-' || !Digits(s, 0, 4, y) ||
      !Digits(s, 5, 2, m) || !Digits(s, 8, 2, d)) {
    return std::nullopt;
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y},
                                        std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return CivilDay(ymd);
}

std::string FormatCivilDay(CivilDay day) {
  const std::chrono::year_month_day ymd{day};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::optional<Timestamp> ParseTimestamp(std::string_view text,
                                        TimestampFormat format) {
  text = Trim(text);
  if (format == TimestampFormat::kUnixSeconds) {
    Timestamp t = 0;
    if (!ParseInt(text, t)) return std::nullopt;
    return t;
  }
  return ParseIso(text);
}

std::string FormatTimestamp(Timestamp t, TimestampFormat format) {
  if (format == TimestampFormat::kUnixSeconds) return std::to_string(t);
  const CivilDay day = DayOf(t);
  const Timestamp secs = t - DayStart(day);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", FormatCivilDay(day).c_str(),
                static_cast<int>(secs / 3600), static_cast<int>(secs / 60 % 60),
                static_cast<int>(secs % 60));
  return buf;
}

ParsedLog ParseEdgeLog(std::istream& source, const LogFormatConfig& cfg) {
  ValidateLogFormat(cfg);
  int sender_col = 0, recipient_col = 0, time_col = 0;
  for (int i = 0; i < 3; ++i) {
    switch (cfg.columns[i]) {
      case Column::kSender: sender_col = i; break;
      case Column::kRecipient: recipient_col = i; break;
      case Column::kTimestamp: time_col = i; break;
    }
  }

  IngestReport report;
  std::vector<Row> rows;
  std::set<std::tuple<std::string, std::string, Timestamp>> seen;
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = cfg.header;
  std::vector<std::string_view> fields;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header_pending) {
      header_pending = false;
      continue;
    }
    if (Trim(line).empty()) continue;
    ++report.rows_read;

    fields.clear();
    std::string_view rest(line);
    for (;;) {
      const auto cut = rest.find(cfg.delimiter);
      fields.push_back(Trim(rest.substr(0, cut)));
      if (cut == std::string_view::npos) break;
      rest.remove_prefix(cut + 1);
    }
    if (fields.size() != 3) {
      report.malformed.push_back(
          {line_no, "expected 3 columns, found " + std::to_string(fields.size())});
      continue;
    }
    const std::string_view sender = fields[sender_col];
    const std::string_view recipient = fields[recipient_col];
    if (sender.empty() || recipient.empty()) {
      report.malformed.push_back({line_no, "empty node identifier"});
      continue;
    }
    const auto ts = ParseTimestamp(fields[time_col], cfg.timestamp_format);
    if (!ts) {
      report.malformed.push_back(
          {line_no, "bad timestamp '" + std::string(fields[time_col]) + "'"});
      continue;
    }
    if (sender == recipient) {
      ++report.self_loops_dropped;
      continue;
    }
    if (cfg.collapse_duplicates &&
        !seen.emplace(std::string(sender), std::string(recipient), *ts).second) {
      ++report.duplicates_collapsed;
      continue;
    }
    rows.push_back({std::string(sender), std::string(recipient), *ts});
  }
  if (source.bad()) throw Error(ErrorCode::kIo, "read failure");
  report.accepted = rows.size();

  if (report.rows_read > 0) {
    const double fraction =
        static_cast<double>(report.malformed.size()) / report.rows_read;
    if (fraction > cfg.malformed_threshold) {
      std::string msg = std::to_string(report.malformed.size()) + " of " +
                        std::to_string(report.rows_read) +
                        " rows malformed (threshold " +
                        std::to_string(cfg.malformed_threshold) + "); first at line " +
                        std::to_string(report.malformed.front().line) + ": " +
                        report.malformed.front().reason;
      throw Error(ErrorCode::kIngest, msg);
    }
  }

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.timestamp < b.timestamp;
  });
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = ids.try_emplace(name, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(name);
    return it->second;
  };
  std::vector<TemporalEdge> edges;
  edges.reserve(rows.size());
  for (const Row& r : rows) {
    const NodeId s = intern(r.sender);
    const NodeId t = intern(r.recipient);
    edges.push_back({s, t, r.timestamp});
  }
  return {TemporalEdgeStream(std::move(edges), std::move(labels)), std::move(report)};
}

ParsedLog ParseEdgeLogFile(const std::string& path, const LogFormatConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  try {
    return ParseEdgeLog(in, cfg);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void WriteEdgeLog(std::ostream& out, const TemporalEdgeStream& stream,
                  const LogFormatConfig& cfg) {
  ValidateLogFormat(cfg);
  if (cfg.header) {
    for (int i = 0; i < 3; ++i) {
      if (i) out << cfg.delimiter;
      switch (cfg.columns[i]) {
        case Column::kSender: out << "sender"; break;
        case Column::kRecipient: out << "recipient"; break;
        case Column::kTimestamp: out << "timestamp"; break;
      }
    }
    out << '\n';
  }
  std::vector<std::string> names;
  for (NodeId id : stream.registry()) {
    if (names.size() <= id) names.resize(id + 1);
    names[id] = stream.label(id);
    const std::string& n = names[id];
    if (n.find(cfg.delimiter) != std::string::npos || n != Trim(n) || n.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "label '" + n + "' cannot be written with this delimiter");
    }
  }
  for (const TemporalEdge& e : stream.edges()) {
    for (int i = 0; i < 3; ++i) {
      if (i) out << cfg.delimiter;
      switch (cfg.columns[i]) {
        case Column::kSender: out << names[e.sender]; break;
        case Column::kRecipient: out << names[e.recipient]; break;
        case Column::kTimestamp:
          out << FormatTimestamp(e.timestamp, cfg.timestamp_format);
          break;
      }
    }
    out << '\n';
  }
}

}  // namespace crisisnet
