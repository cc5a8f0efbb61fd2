#include <arm_neon.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels_impl.hpp"

namespace seqmeta::kernels::detail {
namespace {

void add_gaussian_loglik(const double* x, double* acc, std::size_t n, double mean,
                         double half_inv_var, double log_norm) {
  const float64x2_t vm = vdupq_n_f64(mean);
  const float64x2_t vh = vdupq_n_f64(half_inv_var);
  const float64x2_t vc = vdupq_n_f64(log_norm);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(x + i), vm);
    const float64x2_t q = vmulq_f64(vmulq_f64(vh, d), d);
    vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vsubq_f64(vc, q)));
  }
  for (; i < n; ++i) {
    const double d = x[i] - mean;
    acc[i] = acc[i] + (log_norm - half_inv_var * d * d);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t s0 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) s0 = vaddq_f64(s0, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double s = vaddvq_f64(s0);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum(const double* a, std::size_t n) {
  float64x2_t s0 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) s0 = vaddq_f64(s0, vld1q_f64(a + i));
  double s = vaddvq_f64(s0);
  for (; i < n; ++i) s += a[i];
  return s;
}

double max(const double* a, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= 2) {
    float64x2_t vm = vdupq_n_f64(m);
    for (; i + 2 <= n; i += 2) vm = vmaxq_f64(vm, vld1q_f64(a + i));
    m = vmaxvq_f64(vm);
  }
  for (; i < n; ++i) m = std::max(m, a[i]);
  return m;
}

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
  float64x2_t s0 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) s0 = vaddq_f64(s0, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double s = vaddvq_f64(s0);
  for (; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
  float64x2_t s0 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    s0 = vaddq_f64(s0, vmulq_f64(d, d));
  }
  double s = vaddvq_f64(s0);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

const KernelTable kNeonTable{Backend::Neon, add_gaussian_loglik, dot, sum, max,
                             sum_abs_diff,  sum_sq_diff};

}  // namespace seqmeta::kernels::detail
