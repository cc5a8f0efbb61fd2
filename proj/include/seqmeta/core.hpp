#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "seqmeta/error.hpp"

namespace seqmeta {

/// One reported estimate. `group_id` ties records that enter the trace
/// together as a single update step.
struct StudyRecord {
  std::string id;
  std::int64_t seq_index = 0;
  std::string group_id;
  double estimate = 0.0;
  double std_error = 0.0;
  std::optional<std::string> label;

  bool operator==(const StudyRecord&) const = default;
};

/// Validated, seq_index-ordered studies with group boundaries precomputed.
/// Only `validate_sequence` constructs one.
class StudySequence {
 public:
  std::span<const StudyRecord> records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

  /// Distinct labels, sorted.
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_label(std::string_view label) const;

  std::size_t group_count() const noexcept { return group_starts_.size(); }
  std::span<const StudyRecord> group(std::size_t g) const;
  /// All records of groups [0, groups).
  std::span<const StudyRecord> prefix_groups(std::size_t groups) const;
  std::vector<std::string> group_ids(std::size_t g) const;

  bool operator==(const StudySequence& other) const { return records_ == other.records_; }

 private:
  friend StudySequence validate_sequence(std::vector<StudyRecord> records);

  std::vector<StudyRecord> records_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> group_starts_;
};

/// Sorts by seq_index and checks every record invariant. Errors name the
/// offending record id.
StudySequence validate_sequence(std::vector<StudyRecord> records);

/// Identifiers (ids, group ids, labels) are restricted to [A-Za-z0-9_-].
bool is_valid_identifier(std::string_view s) noexcept;

class GaussianBelief {
 public:
  GaussianBelief(double mean, double sd);

  double mean() const noexcept { return mean_; }
  double sd() const noexcept { return sd_; }
  double variance() const noexcept { return sd_ * sd_; }

  bool operator==(const GaussianBelief&) const = default;

 private:
  double mean_;
  double sd_;
};

struct TauFixed {
  double tau = 0.0;
  bool operator==(const TauFixed&) const = default;
};
struct TauPlugInDL {
  bool operator==(const TauPlugInDL&) const = default;
};
struct TauHalfNormal {
  double scale = 1.0;
  bool operator==(const TauHalfNormal&) const = default;
};
using TauSpec = std::variant<TauFixed, TauPlugInDL, TauHalfNormal>;

/// κ used to encode "believed unbiased"; exact zero would make the joint
/// covariance singular.
inline constexpr double kKappaUnbiased = 1e-4;

struct KappaEntry {
  std::int64_t effective_from = 1;
  std::string label;
  double kappa = 1.0;
  bool operator==(const KappaEntry&) const = default;
};

/// Time-indexed κ per methodology label plus the τ treatment.
class BeliefSchedule {
 public:
  BeliefSchedule() = default;
  BeliefSchedule(std::vector<KappaEntry> entries, TauSpec tau);

  const std::vector<KappaEntry>& entries() const noexcept { return entries_; }
  const TauSpec& tau_spec() const noexcept { return tau_; }

  bool has_label(std::string_view label) const;
  /// True when no label has more than one entry.
  bool is_static() const;

  /// Single-entry-per-label schedule holding each label's κ as of `seq_index`.
  /// Labels with no entry effective by then are dropped.
  BeliefSchedule frozen_at(std::int64_t seq_index) const;
  /// Copy with κ of every entry for `label` replaced; adds an entry from
  /// step 1 if the label has none.
  BeliefSchedule with_kappa(std::string_view label, double kappa) const;
  BeliefSchedule with_tau(TauSpec tau) const;

  bool operator==(const BeliefSchedule&) const = default;

 private:
  std::vector<KappaEntry> entries_;
  TauSpec tau_ = TauFixed{0.0};
};

/// κ of the latest entry for `label` with effective_from <= seq_index.
double kappa_at(const BeliefSchedule& schedule, std::string_view label, std::int64_t seq_index);

enum class ModelKind { FixedEffect, RandomEffects, LabeledRandomEffects };

std::string_view to_string(ModelKind kind) noexcept;

struct ModelConfig {
  ModelKind model = ModelKind::RandomEffects;
  GaussianBelief prior{0.0, 1.0};
  BeliefSchedule schedule{};
  int metric_p = 2;
  int grid_n = 512;
  int quantile_n = 1024;
};

/// Throws InvalidConfig on metric_p outside {1,2} or grid sizes that are
/// not powers of two >= 64.
void validate_config(const ModelConfig& config);

}  // namespace seqmeta
