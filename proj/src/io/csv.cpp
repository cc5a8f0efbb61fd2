#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "seqmeta/io.hpp"

namespace seqmeta::io {

namespace {

constexpr std::array<std::string_view, 6> kColumns = {"id", "seq_index", "group_id", "estimate", "std_error", "label"};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) return fields;
    start = comma + 1;
  }
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

template <class T>
T parse_number(std::string_view field, std::string_view column, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
    throw Error(ErrorCode::UnparsableNumber,
                at_line(line) + "column '" + std::string(column) + "' has '" + std::string(field) + "'");
  return value;
}

void check_header(std::string_view header) {
  const auto names = split_fields(header);
  for (std::string_view expected : kColumns)
    if (std::find(names.begin(), names.end(), expected) == names.end())
      throw Error(ErrorCode::MissingColumn, at_line(1) + "missing column '" + std::string(expected) + "'");
  for (std::string_view name : names)
    if (std::find(kColumns.begin(), kColumns.end(), name) == kColumns.end())
      throw Error(ErrorCode::UnexpectedColumn, at_line(1) + "unexpected column '" + std::string(name) + "'");
  if (names.size() != kColumns.size() || !std::equal(names.begin(), names.end(), kColumns.begin()))
    throw Error(ErrorCode::UnexpectedColumn, at_line(1) + "header must be exactly '" + std::string(kStudiesHeader) + "'");
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw Error(ErrorCode::InvalidArgument, "cannot format number");
  return std::string(buf.data(), ptr);
}

StudySequence parse_studies_csv_text(std::string_view text) {
  std::vector<StudyRecord> records;
  std::unordered_map<std::string, std::size_t> line_of;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    std::string_view line = trim(raw);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (line.empty()) continue;
    if (!have_header) {
      if (line_no != 1) throw Error(ErrorCode::MissingColumn, at_line(line_no) + "header must be the first line");
      check_header(line);
      have_header = true;
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() < kColumns.size())
      throw Error(ErrorCode::MissingColumn, at_line(line_no) + "expected 6 fields, found " + std::to_string(fields.size()));
    if (fields.size() > kColumns.size())
      throw Error(ErrorCode::UnexpectedColumn, at_line(line_no) + "expected 6 fields, found " + std::to_string(fields.size()));

    StudyRecord r;
    r.id = std::string(fields[0]);
    r.seq_index = parse_number<std::int64_t>(fields[1], kColumns[1], line_no);
    r.group_id = std::string(fields[2]);
    r.estimate = parse_number<double>(fields[3], kColumns[3], line_no);
    r.std_error = parse_number<double>(fields[4], kColumns[4], line_no);
    if (!fields[5].empty()) r.label = std::string(fields[5]);
    try {
      validate_sequence({r});
    } catch (const Error& e) {
      throw Error(e.code(), at_line(line_no) + e.detail(), r.id);
    }
    line_of.emplace(r.id, line_no);
    records.push_back(std::move(r));
  }
  if (!have_header) throw Error(ErrorCode::MissingColumn, "no header line");
  try {
    return validate_sequence(std::move(records));
  } catch (const Error& e) {
    const auto it = line_of.find(e.record_id());
    if (it == line_of.end()) throw;
    throw Error(e.code(), at_line(it->second) + e.detail(), e.record_id());
  }
}

StudySequence parse_studies_csv(const std::filesystem::path& path) { return parse_studies_csv_text(read_file(path)); }

std::string format_studies_csv(const StudySequence& seq) {
  std::string out(kStudiesHeader);
  out += '\n';
  for (const auto& r : seq.records()) {
    out += r.id + ',' + std::to_string(r.seq_index) + ',' + r.group_id + ',' + format_double(r.estimate) + ',' +
           format_double(r.std_error) + ',' + r.label.value_or("") + '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
  return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
}

}  // namespace seqmeta::io
