#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels_impl.hpp"

namespace seqmeta::kernels::detail {
namespace {

void add_gaussian_loglik(const double* x, double* acc, std::size_t n, double mean,
                         double half_inv_var, double log_norm) {
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - mean;
    acc[i] = acc[i] + (log_norm - half_inv_var * d * d);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i];
  return s;
}

double max(const double* a, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, a[i]);
  return m;
}

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

const KernelTable kScalarTable{Backend::Scalar, add_gaussian_loglik, dot, sum, max,
                               sum_abs_diff,    sum_sq_diff};

}  // namespace seqmeta::kernels::detail
