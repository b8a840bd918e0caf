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

#include <sstream>
#include <string>

#include "doctest.h"

#include "crisisnet/error.hpp"
#include "crisisnet/generators.hpp"
#include "crisisnet/ingest.hpp"

namespace crisisnet {
namespace {

ParsedLog Parse(const std::string& text, const LogFormatConfig& cfg = {}) {
  std::istringstream in(text);
  return ParseEdgeLog(in, cfg);
}

LogFormatConfig Lenient() {
  LogFormatConfig cfg;
  cfg.malformed_threshold = 1.0;
  return cfg;
}

TEST_CASE("well-formed rows are all accepted") {
  const ParsedLog log = Parse("A,B,1000\nB,C,1001\nC,A,1002\n");
  CHECK(log.stream.size() == 3);
  CHECK(log.report.accepted == 3);
  CHECK(log.report.rows_read == 3);
  CHECK(log.report.malformed.empty());
  CHECK(log.report.duplicates_collapsed == 0);
}

TEST_CASE("self-loop rows are dropped and counted") {
  const ParsedLog log = Parse("A,A,1000000000\nA,B,1000000001\n");
  CHECK(log.stream.size() == 1);
  CHECK(log.report.self_loops_dropped == 1);
  CHECK(log.report.accepted == 1);
}

TEST_CASE("bad timestamps are recorded with their line number") {
  const ParsedLog log = Parse("A,B,1\nA,B,not-a-date\nB,A,3\n", Lenient());
  REQUIRE(log.report.malformed.size() == 1);
  CHECK(log.report.malformed[0].line == 2);
  CHECK(log.stream.size() == 2);
}

TEST_CASE("too many malformed rows fail the parse with a summary") {
  std::string text;
  for (int i = 0; i < 99; ++i) text += "A,B," + std::to_string(i) + "\n";
  text += "A,B\n";  // 1 of 100: at the threshold, accepted
  CHECK_NOTHROW(Parse(text));
  text += "A,B,C,D\n";  // 2 of 101: over
  try {
    Parse(text);
    FAIL("expected an ingest error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIngest);
    CHECK(std::string(e.what()).find("line 100") != std::string::npos);
  }
}

TEST_CASE("wrong column count and empty ids are malformed") {
  const ParsedLog log = Parse("A,B\n,B,5\nA,B,5,6\nA,B,7\n", Lenient());
  CHECK(log.report.malformed.size() == 3);
  CHECK(log.report.accepted == 1);
}

TEST_CASE("custom column order, delimiter, header and ISO timestamps") {
  LogFormatConfig cfg;
  cfg.columns = {Column::kTimestamp, Column::kRecipient, Column::kSender};
  cfg.delimiter = '\t';
  cfg.header = true;
  cfg.timestamp_format = TimestampFormat::kIso8601;
  const ParsedLog log =
      Parse("when\tto\tfrom\r\n2001-05-01T10:00:00Z\tbob\talice\r\n"
            "2001-05-01 09:00:00+02:00\tcarol\tbob\r\n",
            cfg);
  REQUIRE(log.stream.size() == 2);
  CHECK(log.report.rows_read == 2);
  const auto& first = log.stream.edges()[0];
  CHECK(log.stream.label(first.sender) == "bob");
  CHECK(log.stream.label(first.recipient) == "carol");
  CHECK(first.timestamp == 988675200 + 7 * 3600);
  CHECK(log.stream.edges()[1].timestamp == 988675200 + 10 * 3600);
}

TEST_CASE("ids are assigned by first appearance in time order") {
  const ParsedLog log = Parse("z,y,50\nx,w,10\n");
  CHECK(log.stream.label(0) == "x");
  CHECK(log.stream.label(1) == "w");
  CHECK(log.stream.label(2) == "z");
}

TEST_CASE("duplicates are kept by default and collapsible on request") {
  const std::string text = "A,B,5\nA,B,5\nA,B,6\n";
  CHECK(Parse(text).stream.size() == 3);
  LogFormatConfig cfg;
  cfg.collapse_duplicates = true;
  const ParsedLog log = Parse(text, cfg);
  CHECK(log.stream.size() == 2);
  CHECK(log.report.duplicates_collapsed == 1);
}

TEST_CASE("blank lines are ignored") {
  const ParsedLog log = Parse("\nA,B,1\n\n  \nB,A,2\n");
  CHECK(log.stream.size() == 2);
  CHECK(log.report.rows_read == 2);
}

TEST_CASE("parsing is deterministic and round-trips through the writer") {
  HubCorpusParams p;
  p.node_count = 30;
  p.day_count = 5;
  p.hub_count = 3;
  p.seed = 5;
  const TemporalEdgeStream original = GenerateHubCorpus(p);

  for (const auto format : {TimestampFormat::kUnixSeconds, TimestampFormat::kIso8601}) {
    LogFormatConfig cfg;
    cfg.timestamp_format = format;
    std::ostringstream out;
    WriteEdgeLog(out, original, cfg);
    const ParsedLog once = Parse(out.str(), cfg);
    const ParsedLog twice = Parse(out.str(), cfg);
    CHECK(once.stream == twice.stream);
    // Parsing re-numbers nodes by identifier, so compare through labels.
    REQUIRE(once.stream.size() == original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
      const TemporalEdge& a = original.edges()[i];
      const TemporalEdge& b = once.stream.edges()[i];
      CHECK(once.stream.label(b.sender) == original.label(a.sender));
      CHECK(once.stream.label(b.recipient) == original.label(a.recipient));
      CHECK(b.timestamp == a.timestamp);
    }
    CHECK(once.stream.registry().size() == original.registry().size());

    std::ostringstream again;
    WriteEdgeLog(again, once.stream, cfg);
    CHECK(again.str() == out.str());
  }
}

TEST_CASE("format validation") {
  LogFormatConfig cfg;
  cfg.columns = {Column::kSender, Column::kSender, Column::kTimestamp};
  CHECK_THROWS_AS(ValidateLogFormat(cfg), Error);
  cfg = {};
  cfg.delimiter = '\n';
  CHECK_THROWS_AS(ValidateLogFormat(cfg), Error);
  cfg = {};
  cfg.malformed_threshold = -0.5;
  CHECK_THROWS_AS(ValidateLogFormat(cfg), Error);
}

TEST_CASE("missing files are I/O errors naming the path") {
  try {
    ParseEdgeLogFile("/nonexistent/log.csv");
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
    CHECK(std::string(e.what()).find("/nonexistent/log.csv") != std::string::npos);
  }
}

TEST_CASE("timestamp parsing") {
  using TF = TimestampFormat;
  CHECK(ParseTimestamp("0", TF::kUnixSeconds) == 0);
  CHECK(ParseTimestamp("-86400", TF::kUnixSeconds) == -86400);
  CHECK_FALSE(ParseTimestamp("12x", TF::kUnixSeconds).has_value());
  CHECK_FALSE(ParseTimestamp("", TF::kUnixSeconds).has_value());
  CHECK(ParseTimestamp("2001-05-01T00:00:00Z", TF::kIso8601) == 988675200);
  CHECK(ParseTimestamp("2001-05-01T00:00", TF::kIso8601) == 988675200);
  CHECK(ParseTimestamp("2001-05-01T01:30:00.75+01:30", TF::kIso8601) == 988675200);
  CHECK(ParseTimestamp("2001-04-30T22:00:00-02:00", TF::kIso8601) == 988675200);
  CHECK_FALSE(ParseTimestamp("2001-02-30T00:00:00Z", TF::kIso8601).has_value());
  CHECK_FALSE(ParseTimestamp("2001-05-01T25:00:00Z", TF::kIso8601).has_value());
  CHECK_FALSE(ParseTimestamp("not-a-date", TF::kIso8601).has_value());
  CHECK(FormatTimestamp(988675200, TF::kIso8601) == "2001-05-01T00:00:00Z");
  CHECK(FormatTimestamp(-1, TF::kIso8601) == "1969-12-31T23:59:59Z");
  CHECK(FormatCivilDay(*ParseCivilDay("2001-05-01")) == "2001-05-01");
  CHECK_FALSE(ParseCivilDay("2001-13-01").has_value());
}

}  // namespace
}  // namespace crisisnet
