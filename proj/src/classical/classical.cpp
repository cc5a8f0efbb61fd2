#include "seqmeta/classical.hpp"

#include <algorithm>
#include <cmath>

namespace seqmeta {
namespace {

MetaEstimate inverse_variance_pool(std::span<const StudyRecord> records, double tau) {
  if (records.empty()) throw Error(ErrorCode::EmptySequence, "meta-analysis needs at least one study");
  MetaEstimate m;
  m.tau2 = tau * tau;
  m.weights.reserve(records.size());
  double total = 0.0;
  double weighted = 0.0;
  for (const auto& r : records) {
    const double w = 1.0 / (r.std_error * r.std_error + m.tau2);
    m.weights.push_back(w);
    total += w;
    weighted += w * r.estimate;
  }
  m.estimate = weighted / total;
  m.variance = 1.0 / total;
  for (auto& w : m.weights) w /= total;
  return m;
}

}  // namespace

MetaEstimate fe_estimate(std::span<const StudyRecord> records) { return inverse_variance_pool(records, 0.0); }

TauEstimate dl_tau(std::span<const StudyRecord> records) {
  if (records.size() < 2) return {0.0, true};
  double sw = 0.0;
  double sw2 = 0.0;
  double swy = 0.0;
  for (const auto& r : records) {
    const double w = 1.0 / (r.std_error * r.std_error);
    sw += w;
    sw2 += w * w;
    swy += w * r.estimate;
  }
  const double pooled = swy / sw;
  double q = 0.0;
  for (const auto& r : records) {
    const double d = r.estimate - pooled;
    q += d * d / (r.std_error * r.std_error);
  }
  const double c = sw - sw2 / sw;
  const double df = static_cast<double>(records.size() - 1);
  const double tau2 = std::max(0.0, (q - df) / c);
  return {std::sqrt(tau2), false};
}

MetaEstimate re_estimate(std::span<const StudyRecord> records, std::optional<double> tau) {
  if (records.empty()) throw Error(ErrorCode::EmptySequence, "meta-analysis needs at least one study");
  if (tau && !(*tau >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tau must be >= 0");
  return inverse_variance_pool(records, tau.value_or(dl_tau(records).tau));
}

std::vector<WeightRow> weights_table(std::span<const StudyRecord> records, WeightMode mode, WeightModel model) {
  if (records.empty()) throw Error(ErrorCode::EmptySequence, "weights need at least one study");
  const auto pool = [&](std::span<const StudyRecord> rs) {
    return model == WeightModel::FE ? fe_estimate(rs) : re_estimate(rs);
  };
  std::vector<WeightRow> rows;
  rows.reserve(records.size());
  if (mode == WeightMode::Retrospective) {
    const MetaEstimate m = pool(records);
    for (std::size_t i = 0; i < records.size(); ++i)
      rows.push_back({i + 1, records[i].id, 100.0 * m.weights[i]});
  } else {
    for (std::size_t m = 1; m <= records.size(); ++m) {
      const MetaEstimate e = pool(records.first(m));
      rows.push_back({m, records[m - 1].id, 100.0 * e.weights.back()});
    }
  }
  return rows;
}

}  // namespace seqmeta
