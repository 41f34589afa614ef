#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wanderlab/herman.hpp"
#include "wanderlab/verify.hpp"

namespace wanderlab {

// Everything a run emits. `parameters` preserves insertion order;
// `wall_time` stays unset unless timing was explicitly requested, so that
// repeated runs of the same configuration serialize to identical bytes.
struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<VerdictRecord> verdicts;
  std::optional<double> wall_time_seconds;
};

// Deterministic JSON document with fixed key order
// {command, parameters, verdicts[], wall_time}. Complex values serialize as
// {"re": ..., "im": ...}; absent wall time serializes as null.
std::string to_json(const RunReport& report);

// RFC-4180 CSV of the verdict table: header row, CRLF line endings, fields
// quoted when they contain separators.
std::string to_csv(const std::vector<VerdictRecord>& verdicts);

// Binary write (no newline translation); throws on I/O failure.
void write_text_file(const std::string& path, const std::string& content);

// Binary PPM (P6), 8-bit, gray value replicated onto RGB.
void write_ppm(const std::string& path, const GrayImage& image);

}  // namespace wanderlab
