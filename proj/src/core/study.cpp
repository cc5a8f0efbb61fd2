#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "seqmeta/core.hpp"

namespace seqmeta {

bool is_valid_identifier(std::string_view s) noexcept {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
  });
}

GaussianBelief::GaussianBelief(double mean, double sd) : mean_(mean), sd_(sd) {
  if (!std::isfinite(mean))
    throw Error(ErrorCode::InvalidArgument, "belief mean must be finite");
  if (!(sd > 0.0) || !std::isfinite(sd))
    throw Error(ErrorCode::InvalidArgument, "belief sd must be positive and finite");
}

bool StudySequence::has_label(std::string_view label) const {
  return std::binary_search(labels_.begin(), labels_.end(), label);
}

std::span<const StudyRecord> StudySequence::group(std::size_t g) const {
  if (g >= group_starts_.size()) throw Error(ErrorCode::InvalidArgument, "group index out of range");
  const std::size_t begin = group_starts_[g];
  const std::size_t end = g + 1 < group_starts_.size() ? group_starts_[g + 1] : records_.size();
  return std::span<const StudyRecord>(records_).subspan(begin, end - begin);
}

std::span<const StudyRecord> StudySequence::prefix_groups(std::size_t groups) const {
  if (groups > group_starts_.size())
    throw Error(ErrorCode::InvalidArgument, "group prefix out of range");
  const std::size_t end = groups < group_starts_.size() ? group_starts_[groups] : records_.size();
  return std::span<const StudyRecord>(records_).first(end);
}

std::vector<std::string> StudySequence::group_ids(std::size_t g) const {
  std::vector<std::string> ids;
  for (const auto& r : group(g)) ids.push_back(r.id);
  return ids;
}

StudySequence validate_sequence(std::vector<StudyRecord> records) {
  if (records.empty()) throw Error(ErrorCode::EmptySequence, "no study records");

  for (auto& r : records) {
    if (!is_valid_identifier(r.id))
      throw Error(ErrorCode::InvalidIdentifier, "record id '" + r.id + "' must match [A-Za-z0-9_-]+", r.id);
    if (r.group_id.empty()) r.group_id = r.id;
    if (!is_valid_identifier(r.group_id))
      throw Error(ErrorCode::InvalidIdentifier, "record '" + r.id + "': invalid group_id", r.id);
    if (r.label && r.label->empty()) r.label.reset();
    if (r.label && !is_valid_identifier(*r.label))
      throw Error(ErrorCode::InvalidIdentifier, "record '" + r.id + "': invalid label", r.id);
    if (r.seq_index < 1)
      throw Error(ErrorCode::InvalidArgument, "record '" + r.id + "': seq_index must be >= 1", r.id);
    if (!std::isfinite(r.estimate))
      throw Error(ErrorCode::NonFiniteEstimate, "record '" + r.id + "'", r.id);
    if (!(r.std_error > 0.0) || !std::isfinite(r.std_error))
      throw Error(ErrorCode::NonPositiveStdError, "record '" + r.id + "'", r.id);
  }

  std::stable_sort(records.begin(), records.end(),
                   [](const StudyRecord& a, const StudyRecord& b) { return a.seq_index < b.seq_index; });

  StudySequence seq;
  std::unordered_map<std::string, std::size_t> closed_groups;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const StudyRecord& r = records[i];
    if (i > 0 && records[i - 1].seq_index == r.seq_index)
      throw Error(ErrorCode::DuplicateSeqIndex, "record '" + r.id + "' repeats seq_index " + std::to_string(r.seq_index), r.id);
    if (i == 0 || records[i - 1].group_id != r.group_id) {
      if (i > 0) closed_groups.emplace(records[i - 1].group_id, i);
      if (closed_groups.contains(r.group_id))
        throw Error(ErrorCode::NonContiguousGroup, "record '" + r.id + "' rejoins group '" + r.group_id + "'", r.id);
      seq.group_starts_.push_back(i);
    }
    if (r.label) seq.labels_.push_back(*r.label);
  }
  std::sort(seq.labels_.begin(), seq.labels_.end());
  seq.labels_.erase(std::unique(seq.labels_.begin(), seq.labels_.end()), seq.labels_.end());
  seq.records_ = std::move(records);
  return seq;
}

}  // namespace seqmeta
