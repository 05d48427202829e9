#pragma once

#include <cstddef>

namespace shiftcert {

enum class Tail { Less, Greater, TwoSided };

struct TTestResult {
  double t = 0.0;
  double p_value = 1.0;
  std::size_t dof = 0;
  Tail tail = Tail::TwoSided;
};

// One-sample Student t-test of H0: mean = mu0 from summary statistics.
// `tail` = Greater tests mean > mu0. With zero sample variance the p-value is
// 1 when the sample mean equals mu0 and 0 otherwise.
TTestResult one_sample_t_test(std::size_t n, double mean, double sample_sd, double mu0, Tail tail);

// One-sided test in the direction of the observed mean (Greater when mean >
// mu0, Less otherwise).
TTestResult directional_t_test(std::size_t n, double mean, double sample_sd, double mu0);

// P(X <= k) for X ~ Binomial(n, p).
double binomial_cdf(std::size_t k, std::size_t n, double p);

// Unbiased sample standard deviation from running sums.
double sample_sd(std::size_t n, double sum, double sum_sq);

}  // namespace shiftcert
