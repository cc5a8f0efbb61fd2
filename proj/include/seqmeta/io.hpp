#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqmeta/core.hpp"

namespace seqmeta::io {

inline constexpr std::string_view kStudiesHeader = "id,seq_index,group_id,estimate,std_error,label";

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

/// Parses a studies table. Errors carry the 1-based line number of the
/// offending row (the header is line 1).
StudySequence parse_studies_csv_text(std::string_view text);
StudySequence parse_studies_csv(const std::filesystem::path& path);
std::string format_studies_csv(const StudySequence& seq);

ModelConfig parse_config_json_text(std::string_view text);
ModelConfig parse_config_json(const std::filesystem::path& path);
/// Canonical serialization (fixed key order, shortest doubles, trailing
/// newline); parse_config_json_text inverts it exactly.
std::string config_to_json(const ModelConfig& config);

/// Reads the whole file; throws Io on failure.
std::string read_file(const std::filesystem::path& path);
/// Writes `content` byte-for-byte; throws Io on failure.
void write_file(const std::filesystem::path& path, std::string_view content);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);
/// SHA-256 after normalizing CRLF line endings to LF.
std::string text_digest(std::string_view text);

struct RunManifest {
  std::string tool_version;
  std::string config_digest;
  std::string input_digest;
  std::optional<std::string> rng_identity;
  std::string timestamp;
};

std::string tool_version();
/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();
/// JSON object; `extra_json` (an object, may be empty) is merged in.
std::string manifest_to_json(const RunManifest& manifest, std::string_view extra_json = {});

}  // namespace seqmeta::io
