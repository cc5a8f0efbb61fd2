#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "seqmeta/core.hpp"

namespace seqmeta {

/// Discretized 1-D density on a uniform grid of `size()` nodes over
/// [lo, hi]. Between nodes the density is linear, so the trapezoid rule
/// integrates it exactly and the CDF is piecewise quadratic.
class GridBelief {
 public:
  /// Shifts and normalizes an unnormalized log density. Throws GridUnderflow
  /// when fewer than two nodes carry representable mass.
  static GridBelief from_log_density(double lo, double hi, std::vector<double> log_density);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t size() const noexcept { return log_density_.size(); }
  double step() const noexcept { return step_; }
  double node(std::size_t i) const noexcept { return lo_ + step_ * static_cast<double>(i); }
  std::span<const double> nodes() const noexcept { return nodes_; }

  std::span<const double> log_density() const noexcept { return log_density_; }
  std::span<const double> density() const noexcept { return density_; }
  /// CDF at each node; cdf().back() == 1.
  std::span<const double> cdf() const noexcept { return cdf_; }

  double mean() const noexcept { return mean_; }
  double sd() const noexcept { return sd_; }

  /// Inverse of the piecewise-quadratic CDF; u is clamped to [0, 1].
  double quantile(double u) const;
  /// Average of the quantile function over each of n equal-probability cells.
  std::vector<double> cell_mean_quantiles(std::size_t n) const;
  /// -∫ f log f by the trapezoid rule.
  double entropy() const;

 private:
  GridBelief() = default;
  double partial_moment(double x) const;

  double lo_ = 0.0;
  double hi_ = 0.0;
  double step_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> log_density_;
  std::vector<double> density_;
  std::vector<double> cdf_;
  std::vector<double> moment_;  // ∫_lo^node (t - center) f(t) dt
  double mean_ = 0.0;
  double sd_ = 0.0;
};

/// Gaussian log density sampled on n nodes over [lo, hi].
GridBelief rasterize(const GaussianBelief& belief, double lo, double hi, std::size_t n);
/// Same, on mean ± half_width_sds·sd.
GridBelief rasterize(const GaussianBelief& belief, std::size_t n, double half_width_sds = 8.0);

}  // namespace seqmeta
