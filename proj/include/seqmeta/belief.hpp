#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "seqmeta/core.hpp"
#include "seqmeta/grid.hpp"

namespace seqmeta {

using Belief = std::variant<GaussianBelief, GridBelief>;

double mean(const Belief& b);
double sd(const Belief& b);
double differential_entropy(const Belief& b);

/// Equal-tailed interval: Gaussian mean ± z·sd with z = Φ⁻¹((1+level)/2);
/// grid beliefs invert their numeric CDF.
std::pair<double, double> credible_interval(const Belief& b, double level = 0.95);

/// Φ⁻¹(u) for u in (0, 1).
double normal_quantile(double u);

enum class QuantileRule {
  /// Quantile at the cell midpoints u = (k - 1/2)/n.
  Midpoint,
  /// Exact average of the quantile function over each cell [(k-1)/n, k/n].
  CellMean,
};

/// n quantile representatives of `b`, one per equal-probability cell.
std::vector<double> quantile_nodes(const Belief& b, std::size_t n, QuantileRule rule);

}  // namespace seqmeta
