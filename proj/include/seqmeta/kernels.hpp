#pragma once

// Data-parallel inner loops of the grid engine and the transport metrics.
//
// Every kernel has a scalar reference implementation; vector variants
// (AVX2 on x86-64, NEON on aarch64) are chosen at runtime when the CPU
// supports them. Elementwise kernels are bitwise identical across backends.
// Reductions may differ in the last bits because of summation order.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace seqmeta::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view to_string(Backend backend) noexcept;

struct KernelTable {
  Backend backend;
  // acc[i] += log_norm - half_inv_var * (x[i] - mean)^2
  void (*add_gaussian_loglik)(const double* x, double* acc, std::size_t n, double mean,
                              double half_inv_var, double log_norm);
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* a, std::size_t n);
  double (*max)(const double* a, std::size_t n);
  double (*sum_abs_diff)(const double* a, const double* b, std::size_t n);
  double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// Backends compiled in and supported by this CPU; Scalar is always first.
std::vector<Backend> available_backends();

/// Table for `backend`, or nullptr if unavailable here.
const KernelTable* table_for(Backend backend) noexcept;

/// Best available backend, selected once on first use.
const KernelTable& active() noexcept;

// Convenience wrappers over active().

void add_gaussian_loglik(std::span<const double> x, std::span<double> acc, double mean,
                         double variance);
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double max(std::span<const double> a);
double sum_abs_diff(std::span<const double> a, std::span<const double> b);
double sum_sq_diff(std::span<const double> a, std::span<const double> b);

}  // namespace seqmeta::kernels
