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

#ifndef CRISISNET_INGEST_HPP_
#define CRISISNET_INGEST_HPP_

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crisisnet/temporal_graph.hpp"

namespace crisisnet {

enum class Column { kSender, kRecipient, kTimestamp };
enum class TimestampFormat { kUnixSeconds, kIso8601 };

// Layout of a delimited message log: one row per (message, recipient).
struct LogFormatConfig {
  std::array<Column, 3> columns{Column::kSender, Column::kRecipient,
                                Column::kTimestamp};
  TimestampFormat timestamp_format = TimestampFormat::kUnixSeconds;
  char delimiter = ',';
  bool header = false;
  // Parse fails when malformed rows / rows read exceeds this.
  double malformed_threshold = 0.01;
  // Collapse exact (sender, recipient, timestamp) repeats. Off by default:
  // repeated rows are distinct emails.
  bool collapse_duplicates = false;
};

// Throws kConfig unless the columns are a permutation of the three roles and
// the threshold lies in [0, 1].
void ValidateLogFormat(const LogFormatConfig& cfg);

struct MalformedRow {
  std::size_t line = 0;  // 1-based, counting the header
  std::string reason;
};

// rows_read == accepted + self_loops_dropped + malformed.size() +
// duplicates_collapsed. Blank lines and the header are not rows.
struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t accepted = 0;
  std::size_t self_loops_dropped = 0;
  std::vector<MalformedRow> malformed;
  std::size_t duplicates_collapsed = 0;
};

struct ParsedLog {
  TemporalEdgeStream stream;
  IngestReport report;
};

// Rows are stable-sorted by timestamp, then node ids are assigned densely in
// order of first appearance (sender before recipient) in the sorted stream.
// The stream's labels hold the original identifiers.
ParsedLog ParseEdgeLog(std::istream& source, const LogFormatConfig& cfg = {});
ParsedLog ParseEdgeLogFile(const std::string& path,
                           const LogFormatConfig& cfg = {});

// Writes the stream back in `cfg`'s layout using its labels. Re-parsing the
// output with the same config reproduces the stream exactly.
void WriteEdgeLog(std::ostream& out, const TemporalEdgeStream& stream,
                  const LogFormatConfig& cfg = {});

std::optional<Timestamp> ParseTimestamp(std::string_view text,
                                        TimestampFormat format);
// ISO output is always "YYYY-MM-DDTHH:MM:SSZ".
std::string FormatTimestamp(Timestamp t, TimestampFormat format);

// "YYYY-MM-DD".
std::optional<CivilDay> ParseCivilDay(std::string_view text);
std::string FormatCivilDay(CivilDay day);

}  // namespace crisisnet

#endif  // CRISISNET_INGEST_HPP_
