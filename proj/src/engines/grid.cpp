#include "seqmeta/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "seqmeta/kernels.hpp"

namespace seqmeta {
namespace {

// Below this, exp() underflows to zero; clamping keeps f·log f finite.
constexpr double kLogFloor = -1000.0;
constexpr double kExpUnderflow = -745.0;

}  // namespace

GridBelief GridBelief::from_log_density(double lo, double hi, std::vector<double> log_density) {
  const std::size_t n = log_density.size();
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw Error(ErrorCode::InvalidArgument, "grid requires finite lo < hi");
  if (n < 64) throw Error(ErrorCode::InvalidArgument, "grid requires at least 64 nodes");
  if (std::any_of(log_density.begin(), log_density.end(), [](double v) { return std::isnan(v); }))
    throw Error(ErrorCode::NonMonotoneCDF, "log density contains NaN");

  const double peak = kernels::max(log_density);
  if (!std::isfinite(peak)) throw Error(ErrorCode::GridUnderflow, "log density has no finite maximum");

  GridBelief g;
  g.lo_ = lo;
  g.hi_ = hi;
  g.step_ = (hi - lo) / static_cast<double>(n - 1);
  g.nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.nodes_[i] = g.node(i);

  std::size_t live = 0;
  g.density_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = log_density[i] - peak;
    if (v > kExpUnderflow) ++live;
    v = std::max(v, kLogFloor);
    log_density[i] = v;
    g.density_[i] = std::exp(v);
  }
  if (live < 2)
    throw Error(ErrorCode::GridUnderflow, "posterior mass concentrated in a single grid cell");

  const double h = g.step_;
  const double z = h * (kernels::sum(g.density_) - 0.5 * (g.density_.front() + g.density_.back()));
  const double log_z = std::log(z);
  for (std::size_t i = 0; i < n; ++i) {
    log_density[i] = std::max(log_density[i] - log_z, kLogFloor);
    g.density_[i] /= z;
  }
  g.log_density_ = std::move(log_density);

  const auto& f = g.density_;
  g.cdf_.assign(n, 0.0);
  g.moment_.assign(n, 0.0);
  const double center = 0.5 * (lo + hi);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    g.cdf_[i + 1] = g.cdf_[i] + 0.5 * h * (f[i] + f[i + 1]);
    const double a = g.nodes_[i] - center;
    g.moment_[i + 1] = g.moment_[i] + a * h * 0.5 * (f[i] + f[i + 1]) + h * h * (f[i] / 6.0 + f[i + 1] / 3.0);
  }
  const double total = g.cdf_.back();
  for (auto& c : g.cdf_) c /= total;
  for (auto& m : g.moment_) m /= total;
  for (auto& v : g.density_) v /= total;
  for (auto& v : g.log_density_) v = std::max(v - std::log(total), kLogFloor);

  const auto trapezoid = [&](std::span<const double> w) {
    return h * (kernels::dot(w, f) - 0.5 * (w.front() * f.front() + w.back() * f.back()));
  };
  g.mean_ = trapezoid(g.nodes_);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = g.nodes_[i] - g.mean_;
    sq[i] = d * d;
  }
  const double var = trapezoid(sq);
  if (!(var > 0.0)) throw Error(ErrorCode::GridUnderflow, "grid density has zero variance");
  g.sd_ = std::sqrt(var);
  return g;
}

double GridBelief::quantile(double u) const {
  if (!(u > 0.0)) return lo_;
  if (u >= 1.0) return hi_;
  const std::size_t n = size();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t j = static_cast<std::size_t>(it - cdf_.begin());
  const std::size_t i = std::min(j == 0 ? 0 : j - 1, n - 2);

  const double f0 = density_[i];
  const double f1 = density_[i + 1];
  const double g = (f1 - f0) / step_;
  const double r = std::max(0.0, u - cdf_[i]);
  const double disc = std::max(0.0, f0 * f0 + 2.0 * g * r);
  const double denom = f0 + std::sqrt(disc);
  const double s = denom > 0.0 ? 2.0 * r / denom : 0.0;
  return nodes_[i] + std::clamp(s, 0.0, step_);
}

double GridBelief::partial_moment(double x) const {
  const std::size_t n = size();
  if (x <= lo_) return 0.0;
  if (x >= hi_) return moment_.back();
  const std::size_t i = std::min(static_cast<std::size_t>((x - lo_) / step_), n - 2);
  const double s = x - nodes_[i];
  const double a = nodes_[i] - 0.5 * (lo_ + hi_);
  const double f0 = density_[i];
  const double g = (density_[i + 1] - f0) / step_;
  const double cell = a * f0 * s + (a * g + f0) * s * s / 2.0 + g * s * s * s / 3.0;
  return moment_[i] + cell;
}

std::vector<double> GridBelief::cell_mean_quantiles(std::size_t n) const {
  const double center = 0.5 * (lo_ + hi_);
  const double dn = static_cast<double>(n);
  std::vector<double> out(n);
  double prev = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double next = k == n ? moment_.back() : partial_moment(quantile(static_cast<double>(k) / dn));
    out[k - 1] = center + dn * (next - prev);
    prev = next;
  }
  return out;
}

double GridBelief::entropy() const {
  const double h = step_;
  const auto& f = density_;
  const auto& l = log_density_;
  return -h * (kernels::dot(f, l) - 0.5 * (f.front() * l.front() + f.back() * l.back()));
}

GridBelief rasterize(const GaussianBelief& belief, double lo, double hi, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "grid requires at least two nodes");
  const double h = (hi - lo) / static_cast<double>(n - 1);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = lo + h * static_cast<double>(i);
  std::vector<double> logd(n, 0.0);
  kernels::add_gaussian_loglik(x, logd, belief.mean(), belief.variance());
  return GridBelief::from_log_density(lo, hi, std::move(logd));
}

GridBelief rasterize(const GaussianBelief& belief, std::size_t n, double half_width_sds) {
  return rasterize(belief, belief.mean() - half_width_sds * belief.sd(),
                   belief.mean() + half_width_sds * belief.sd(), n);
}

}  // namespace seqmeta
