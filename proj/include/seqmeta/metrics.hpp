#pragma once

#include <cstddef>

#include "seqmeta/belief.hpp"

namespace seqmeta {

/// Closed-form W2 between Gaussians: sqrt(Δmean² + Δsd²).
double w2_gaussian(const GaussianBelief& a, const GaussianBelief& b);

/// Wasserstein-p via the 1-D quantile representation,
/// (∫₀¹ |F_a⁻¹(u) − F_b⁻¹(u)|ᵖ du)^{1/p}, summed over `quantile_n` equal
/// cells. p must be 1 or 2.
double wp_numeric(const Belief& a, const Belief& b, int p, std::size_t quantile_n,
                  QuantileRule rule = QuantileRule::CellMean);

/// Lindley's information gain for Gaussians, log(σ_prior / σ_post):
/// positive when the update reduces uncertainty, blind to mean shifts.
double lindley_gaussian(const GaussianBelief& prior, const GaussianBelief& post);

/// ∫ post log post − ∫ prior log prior by the trapezoid rule, i.e.
/// H(prior) − H(post); same sign convention as lindley_gaussian.
double lindley_numeric(const GridBelief& prior, const GridBelief& post);

/// Entropy difference for any pair of beliefs (closed form where possible).
double lindley(const Belief& prior, const Belief& post);

/// Learning contribution used in traces: closed-form W2 for Gaussian pairs
/// with p = 2, wp_numeric otherwise.
double wasserstein(const Belief& a, const Belief& b, int p, std::size_t quantile_n);

}  // namespace seqmeta
