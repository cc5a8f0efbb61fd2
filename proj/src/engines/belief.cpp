#include "seqmeta/belief.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/distributions/normal.hpp>

namespace seqmeta {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double normal_pdf(double z) {
  if (std::isinf(z)) return 0.0;
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorCode::InvalidArgument, "normal quantile needs u in (0,1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), u);
}

double mean(const Belief& b) {
  return std::visit([](const auto& x) { return x.mean(); }, b);
}

double sd(const Belief& b) {
  return std::visit([](const auto& x) { return x.sd(); }, b);
}

double differential_entropy(const Belief& b) {
  return std::visit(Overloaded{
                        [](const GaussianBelief& g) {
                          return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * g.variance());
                        },
                        [](const GridBelief& g) { return g.entropy(); },
                    },
                    b);
}

std::pair<double, double> credible_interval(const Belief& b, double level) {
  if (!(level > 0.0 && level < 1.0)) throw Error(ErrorCode::InvalidArgument, "level must lie in (0,1)");
  return std::visit(Overloaded{
                        [&](const GaussianBelief& g) {
                          const double z = normal_quantile(0.5 * (1.0 + level));
                          return std::pair{g.mean() - z * g.sd(), g.mean() + z * g.sd()};
                        },
                        [&](const GridBelief& g) {
                          return std::pair{g.quantile(0.5 * (1.0 - level)), g.quantile(0.5 * (1.0 + level))};
                        },
                    },
                    b);
}

std::vector<double> quantile_nodes(const Belief& b, std::size_t n, QuantileRule rule) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "need at least one quantile cell");
  const double dn = static_cast<double>(n);
  std::vector<double> q(n);
  if (const auto* g = std::get_if<GaussianBelief>(&b)) {
    if (rule == QuantileRule::Midpoint) {
      for (std::size_t k = 0; k < n; ++k)
        q[k] = g->mean() + g->sd() * normal_quantile((static_cast<double>(k) + 0.5) / dn);
    } else {
      // ∫ Φ⁻¹ over [a, b] equals φ(Φ⁻¹(a)) − φ(Φ⁻¹(b)).
      double prev = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const double next = k == n ? 0.0 : normal_pdf(normal_quantile(static_cast<double>(k) / dn));
        q[k - 1] = g->mean() + g->sd() * dn * (prev - next);
        prev = next;
      }
    }
  } else {
    const auto& grid = std::get<GridBelief>(b);
    if (rule == QuantileRule::Midpoint) {
      for (std::size_t k = 0; k < n; ++k) q[k] = grid.quantile((static_cast<double>(k) + 0.5) / dn);
    } else {
      q = grid.cell_mean_quantiles(n);
    }
  }
  for (std::size_t k = 1; k < n; ++k) {
    if (!(q[k] >= q[k - 1] - 1e-9 * (1.0 + std::fabs(q[k]))))
      throw Error(ErrorCode::NonMonotoneCDF, "quantile function decreases at cell " + std::to_string(k));
  }
  return q;
}

}  // namespace seqmeta
