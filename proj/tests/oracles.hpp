#pragma once
// Brute-force reference computations shared by the unit and acceptance
// tests. They deliberately avoid the library's engines and kernels.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

/// One observation y = θ + γ_label + noise, noise variance `var`.
struct LabeledObs {
  double y;
  double var;
  int label;  // 0-based index into the label kappas
};

/// Marginal moments of θ from a dense tensor-product grid over
/// (θ, γ_1..γ_L), L <= 2. The grid is re-centred on the previous pass's
/// moments until the box covers ±`width` marginal sds; `n` nodes per axis.
inline Moments labeled_grid_posterior(double prior_mean, double prior_sd, const std::vector<double>& kappas,
                                      const std::vector<LabeledObs>& obs, int n = 161, double width = 9.0,
                                      int passes = 3) {
  const int dims = 1 + static_cast<int>(kappas.size());
  std::array<double, 3> center{prior_mean, 0.0, 0.0};
  std::array<double, 3> half{width * prior_sd, 0.0, 0.0};
  for (std::size_t k = 0; k < kappas.size(); ++k) half[k + 1] = width * kappas[k];

  Moments theta;
  for (int pass = 0; pass < passes; ++pass) {
    std::array<std::vector<double>, 3> axis;
    for (int d = 0; d < dims; ++d) {
      axis[d].resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        axis[d][static_cast<std::size_t>(i)] = center[d] - half[d] + 2.0 * half[d] * i / (n - 1);
    }
    const int n1 = dims > 1 ? n : 1;
    const int n2 = dims > 2 ? n : 1;
    auto log_density = [&](int i, int j, int k) {
      const double th = axis[0][static_cast<std::size_t>(i)];
      std::array<double, 3> g{0.0, dims > 1 ? axis[1][static_cast<std::size_t>(j)] : 0.0,
                              dims > 2 ? axis[2][static_cast<std::size_t>(k)] : 0.0};
      double lp = -0.5 * (th - prior_mean) * (th - prior_mean) / (prior_sd * prior_sd);
      for (std::size_t l = 0; l < kappas.size(); ++l) lp -= 0.5 * g[l + 1] * g[l + 1] / (kappas[l] * kappas[l]);
      for (const auto& o : obs) {
        const double r = o.y - th - g[static_cast<std::size_t>(o.label) + 1];
        lp -= 0.5 * r * r / o.var;
      }
      return lp;
    };
    double peak = -INFINITY;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k) peak = std::max(peak, log_density(i, j, k));

    std::array<double, 3> s1{}, s2{};
    double mass = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k) {
          const double w = std::exp(log_density(i, j, k) - peak);
          mass += w;
          const std::array<double, 3> x{axis[0][static_cast<std::size_t>(i)],
                                        dims > 1 ? axis[1][static_cast<std::size_t>(j)] : 0.0,
                                        dims > 2 ? axis[2][static_cast<std::size_t>(k)] : 0.0};
          for (int d = 0; d < dims; ++d) {
            s1[d] += w * x[d];
            s2[d] += w * x[d] * x[d];
          }
        }
    for (int d = 0; d < dims; ++d) {
      const double m = s1[d] / mass;
      const double sd = std::sqrt(std::max(s2[d] / mass - m * m, 0.0));
      center[d] = m;
      half[d] = width * sd;
    }
    theta = {center[0], half[0] / width};
  }
  return theta;
}

/// Posterior moments of θ for the random-effects model with a half-normal
/// prior on τ truncated to [0, tau_max], by midpoint quadrature on an
/// (n_theta × n_tau) grid.
inline Moments halfnormal_grid_posterior(double prior_mean, double prior_sd, double scale, const std::vector<double>& y,
                                         const std::vector<double>& se, double tau_max, double lo, double hi, int n_theta,
                                         int n_tau) {
  const double ht = (hi - lo) / n_theta;
  const double hs = tau_max / n_tau;
  std::vector<double> logp(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_tau));
  double peak = -INFINITY;
  for (int a = 0; a < n_tau; ++a) {
    const double t = (a + 0.5) * hs;
    for (int i = 0; i < n_theta; ++i) {
      const double th = lo + (i + 0.5) * ht;
      double lp = -0.5 * (th - prior_mean) * (th - prior_mean) / (prior_sd * prior_sd) - 0.5 * t * t / (scale * scale);
      for (std::size_t s = 0; s < y.size(); ++s) {
        const double v = se[s] * se[s] + t * t;
        lp += -0.5 * std::log(v) - 0.5 * (y[s] - th) * (y[s] - th) / v;
      }
      logp[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_theta) + static_cast<std::size_t>(i)] = lp;
      peak = std::max(peak, lp);
    }
  }
  double mass = 0.0, m1 = 0.0, m2 = 0.0;
  for (int a = 0; a < n_tau; ++a)
    for (int i = 0; i < n_theta; ++i) {
      const double th = lo + (i + 0.5) * ht;
      const double w = std::exp(logp[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_theta) +
                                     static_cast<std::size_t>(i)] - peak);
      mass += w;
      m1 += w * th;
      m2 += w * th * th;
    }
  const double m = m1 / mass;
  return {m, std::sqrt(m2 / mass - m * m)};
}

/// Precision-weighted combination of independent Gaussian observations
/// with a Gaussian prior.
inline Moments precision_pool(double prior_mean, double prior_var, const std::vector<double>& y,
                              const std::vector<double>& var) {
  double prec = 1.0 / prior_var;
  double info = prior_mean / prior_var;
  for (std::size_t i = 0; i < y.size(); ++i) {
    prec += 1.0 / var[i];
    info += y[i] / var[i];
  }
  return {info / prec, std::sqrt(1.0 / prec)};
}

}  // namespace oracle
