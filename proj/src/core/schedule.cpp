#include <algorithm>
#include <cmath>
#include <map>

#include "seqmeta/core.hpp"

namespace seqmeta {
namespace {

void validate_tau(const TauSpec& tau) {
  if (const auto* f = std::get_if<TauFixed>(&tau)) {
    if (!(f->tau >= 0.0) || !std::isfinite(f->tau))
      throw Error(ErrorCode::InvalidSchedule, "fixed tau must be finite and >= 0");
  } else if (const auto* h = std::get_if<TauHalfNormal>(&tau)) {
    if (!(h->scale > 0.0) || !std::isfinite(h->scale))
      throw Error(ErrorCode::InvalidSchedule, "half-normal tau scale must be positive");
  }
}

}  // namespace

BeliefSchedule::BeliefSchedule(std::vector<KappaEntry> entries, TauSpec tau)
    : entries_(std::move(entries)), tau_(tau) {
  validate_tau(tau_);
  std::map<std::string, std::vector<std::int64_t>, std::less<>> froms;
  for (const auto& e : entries_) {
    if (!is_valid_identifier(e.label))
      throw Error(ErrorCode::InvalidSchedule, "invalid label '" + e.label + "'");
    if (e.effective_from < 1)
      throw Error(ErrorCode::InvalidSchedule, "effective_from must be >= 1 for label '" + e.label + "'");
    if (!(e.kappa > 0.0) || !std::isfinite(e.kappa))
      throw Error(ErrorCode::InvalidSchedule,
                  "kappa for label '" + e.label + "' must be > 0 (use 1e-4 for unbiased)");
    froms[e.label].push_back(e.effective_from);
  }
  for (auto& [label, f] : froms) {
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
      throw Error(ErrorCode::InvalidSchedule, "label '" + label + "' has two entries with the same effective_from");
  }
}

bool BeliefSchedule::has_label(std::string_view label) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const KappaEntry& e) { return e.label == label; });
}

bool BeliefSchedule::is_static() const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    for (std::size_t j = i + 1; j < entries_.size(); ++j)
      if (entries_[i].label == entries_[j].label) return false;
  return true;
}

BeliefSchedule BeliefSchedule::frozen_at(std::int64_t seq_index) const {
  std::vector<KappaEntry> out;
  for (const auto& e : entries_) {
    if (std::any_of(out.begin(), out.end(), [&](const KappaEntry& o) { return o.label == e.label; }))
      continue;
    bool effective = std::any_of(entries_.begin(), entries_.end(), [&](const KappaEntry& o) {
      return o.label == e.label && o.effective_from <= seq_index;
    });
    if (effective) out.push_back({1, e.label, kappa_at(*this, e.label, seq_index)});
  }
  return BeliefSchedule(std::move(out), tau_);
}

BeliefSchedule BeliefSchedule::with_kappa(std::string_view label, double kappa) const {
  std::vector<KappaEntry> out = entries_;
  bool found = false;
  for (auto& e : out) {
    if (e.label == label) {
      e.kappa = kappa;
      found = true;
    }
  }
  if (!found) out.push_back({1, std::string(label), kappa});
  return BeliefSchedule(std::move(out), tau_);
}

BeliefSchedule BeliefSchedule::with_tau(TauSpec tau) const { return BeliefSchedule(entries_, tau); }

double kappa_at(const BeliefSchedule& schedule, std::string_view label, std::int64_t seq_index) {
  const KappaEntry* best = nullptr;
  for (const auto& e : schedule.entries()) {
    if (e.label != label || e.effective_from > seq_index) continue;
    if (best == nullptr || e.effective_from > best->effective_from) best = &e;
  }
  if (best == nullptr)
    throw Error(ErrorCode::LabelUnknownAtTime,
                "no kappa for label '" + std::string(label) + "' at seq_index " + std::to_string(seq_index));
  return best->kappa;
}

}  // namespace seqmeta
