#include "seqmeta/metrics.hpp"

#include <cmath>

#include "seqmeta/kernels.hpp"

namespace seqmeta {

double w2_gaussian(const GaussianBelief& a, const GaussianBelief& b) {
  return std::hypot(b.mean() - a.mean(), b.sd() - a.sd());
}

double wp_numeric(const Belief& a, const Belief& b, int p, std::size_t quantile_n, QuantileRule rule) {
  if (p != 1 && p != 2) throw Error(ErrorCode::InvalidArgument, "wp_numeric supports p = 1 or 2");
  const auto qa = quantile_nodes(a, quantile_n, rule);
  const auto qb = quantile_nodes(b, quantile_n, rule);
  const double n = static_cast<double>(quantile_n);
  if (p == 1) return kernels::sum_abs_diff(qa, qb) / n;
  return std::sqrt(kernels::sum_sq_diff(qa, qb) / n);
}

double lindley_gaussian(const GaussianBelief& prior, const GaussianBelief& post) {
  return std::log(prior.sd() / post.sd());
}

double lindley_numeric(const GridBelief& prior, const GridBelief& post) {
  return prior.entropy() - post.entropy();
}

double lindley(const Belief& prior, const Belief& post) {
  const auto* gp = std::get_if<GaussianBelief>(&prior);
  const auto* gq = std::get_if<GaussianBelief>(&post);
  if (gp && gq) return lindley_gaussian(*gp, *gq);
  return differential_entropy(prior) - differential_entropy(post);
}

double wasserstein(const Belief& a, const Belief& b, int p, std::size_t quantile_n) {
  const auto* ga = std::get_if<GaussianBelief>(&a);
  const auto* gb = std::get_if<GaussianBelief>(&b);
  if (p == 2 && ga && gb) return w2_gaussian(*ga, *gb);
  return wp_numeric(a, b, p, quantile_n);
}

}  // namespace seqmeta
