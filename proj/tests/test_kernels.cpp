#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "seqmeta/kernels.hpp"

using namespace seqmeta::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

double tolerance_for(std::span<const double> terms) {
  double mag = 0.0;
  for (double t : terms) mag += std::abs(t);
  return 1e-14 * (mag + 1.0);
}

}  // namespace

TEST_CASE("scalar backend is always available and listed first") {
  const auto backends = available_backends();
  REQUIRE_FALSE(backends.empty());
  CHECK(backends.front() == Backend::Scalar);
  CHECK(table_for(Backend::Scalar) == &scalar_table());
  bool active_listed = false;
  for (Backend b : backends) active_listed = active_listed || b == active().backend;
  CHECK(active_listed);
}

TEST_CASE("scalar log-likelihood kernel matches the Gaussian log density") {
  const std::vector<double> x{-1.0, 0.0, 0.5, 2.0};
  std::vector<double> acc(x.size(), 0.0);
  const double mean = 0.3;
  const double var = 0.49;
  const auto& t = scalar_table();
  t.add_gaussian_loglik(x.data(), acc.data(), x.size(), mean, 0.5 / var, -0.5 * std::log(2 * std::numbers::pi * var));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - mean;
    const double expected = -0.5 * std::log(2 * std::numbers::pi * var) - d * d / (2 * var);
    CHECK(acc[i] == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("every backend agrees with the scalar reference") {
  std::mt19937_64 rng(20240611);
  const KernelTable& ref = scalar_table();
  for (Backend b : available_backends()) {
    const KernelTable* t = table_for(b);
    REQUIRE(t != nullptr);
    CAPTURE(to_string(b));
    for (std::size_t n = 0; n <= 67; ++n) {
      CAPTURE(n);
      const auto x = random_vector(rng, n, 2.0);
      const auto y = random_vector(rng, n, 2.0);
      auto acc_ref = random_vector(rng, n, 1.0);
      auto acc = acc_ref;

      ref.add_gaussian_loglik(x.data(), acc_ref.data(), n, 0.25, 1.7, -0.9);
      t->add_gaussian_loglik(x.data(), acc.data(), n, 0.25, 1.7, -0.9);
      for (std::size_t i = 0; i < n; ++i) CHECK(acc[i] == acc_ref[i]);

      std::vector<double> products(n), abs_diff(n), sq_diff(n);
      for (std::size_t i = 0; i < n; ++i) {
        products[i] = x[i] * y[i];
        abs_diff[i] = std::abs(x[i] - y[i]);
        sq_diff[i] = (x[i] - y[i]) * (x[i] - y[i]);
      }
      CHECK(std::abs(t->dot(x.data(), y.data(), n) - ref.dot(x.data(), y.data(), n)) <= tolerance_for(products));
      CHECK(std::abs(t->sum(x.data(), n) - ref.sum(x.data(), n)) <= tolerance_for(x));
      CHECK(std::abs(t->sum_abs_diff(x.data(), y.data(), n) - ref.sum_abs_diff(x.data(), y.data(), n)) <=
            tolerance_for(abs_diff));
      CHECK(std::abs(t->sum_sq_diff(x.data(), y.data(), n) - ref.sum_sq_diff(x.data(), y.data(), n)) <=
            tolerance_for(sq_diff));
      if (n > 0) CHECK(t->max(x.data(), n) == ref.max(x.data(), n));
    }
  }
}

TEST_CASE("reductions of known vectors") {
  const std::vector<double> a{1, 2, 3, 4, 5, 6, 7, 8, 9};
  const std::vector<double> b{9, 8, 7, 6, 5, 4, 3, 2, 1};
  CHECK(sum(a) == 45.0);
  CHECK(max(a) == 9.0);
  CHECK(dot(a, b) == 165.0);
  CHECK(sum_abs_diff(a, b) == 40.0);
  CHECK(sum_sq_diff(a, b) == 240.0);
}
