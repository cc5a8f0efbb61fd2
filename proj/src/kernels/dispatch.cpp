#include <cassert>
#include <cmath>
#include <numbers>

#include "kernels_impl.hpp"

namespace seqmeta::kernels {

std::string_view to_string(Backend backend) noexcept {
  switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

const KernelTable& scalar_table() noexcept { return detail::kScalarTable; }

const KernelTable* table_for(Backend backend) noexcept {
  switch (backend) {
    case Backend::Scalar:
      return &detail::kScalarTable;
    case Backend::Avx2:
#if defined(SEQMETA_HAVE_AVX2)
      if (__builtin_cpu_supports("avx2")) return &detail::kAvx2Table;
#endif
      return nullptr;
    case Backend::Neon:
#if defined(SEQMETA_HAVE_NEON)
      return &detail::kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::Scalar};
  for (Backend b : {Backend::Avx2, Backend::Neon})
    if (table_for(b) != nullptr) out.push_back(b);
  return out;
}

const KernelTable& active() noexcept {
  static const KernelTable* const selected = [] {
    for (Backend b : {Backend::Avx2, Backend::Neon})
      if (const KernelTable* t = table_for(b)) return t;
    return &detail::kScalarTable;
  }();
  return *selected;
}

void add_gaussian_loglik(std::span<const double> x, std::span<double> acc, double mean,
                         double variance) {
  assert(x.size() == acc.size());
  const double log_norm = -0.5 * std::log(2.0 * std::numbers::pi * variance);
  active().add_gaussian_loglik(x.data(), acc.data(), x.size(), mean, 0.5 / variance, log_norm);
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().dot(a.data(), b.data(), a.size());
}

double sum(std::span<const double> a) { return active().sum(a.data(), a.size()); }

double max(std::span<const double> a) { return active().max(a.data(), a.size()); }

double sum_abs_diff(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().sum_abs_diff(a.data(), b.data(), a.size());
}

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().sum_sq_diff(a.data(), b.data(), a.size());
}

}  // namespace seqmeta::kernels
