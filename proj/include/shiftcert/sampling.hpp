#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "shiftcert/model.hpp"
#include "shiftcert/rng.hpp"
#include "shiftcert/shift.hpp"

namespace shiftcert {

// Draws one realization: masked coordinates uniform on [theta_i - delta,
// theta_i + delta], the others copied.
ParamVector sample_realization(const ParamVector& theta, const ShiftSpec& shift, Rng& rng);
void sample_realization_into(std::span<const double> theta, const ShiftSpec& shift, Rng& rng,
                             std::span<double> out);

// Summary of the outputs of n realizations at one input. Realization i is drawn
// from Rng(seed, i), so the summary only depends on (net, x, shift, n, seed).
struct SampleStats {
  std::size_t n = 0;
  std::size_t positive = 0;  // outputs >= threshold
  double min = 0.0;
  double max = 0.0;
  double sum = 0.0;
  double sum_sq = 0.0;
  double sum_abs_dev = 0.0;  // sum of |output - unshifted output|

  double rate() const { return n == 0 ? 0.0 : static_cast<double>(positive) / static_cast<double>(n); }
  double mean() const { return sum / static_cast<double>(n); }
};

struct SamplingOptions {
  unsigned threads = 1;
};

// Throws DomainError if any sampled output is not finite.
SampleStats sample_outputs(const Network& net, std::span<const double> x, const ShiftSpec& shift,
                           std::size_t n, std::uint64_t seed, const SamplingOptions& opts = {});

// Fraction of n realizations classifying x as positive.
double realizations(const Network& net, std::span<const double> x, const ShiftSpec& shift,
                    std::size_t n, std::uint64_t seed, const SamplingOptions& opts = {});
double realizations(const Network& net, std::span<const double> x, double delta, std::size_t n,
                    std::uint64_t seed);

// Sampled under-approximation of the reachable output range.
std::pair<double, double> min_max_outputs(const Network& net, std::span<const double> x,
                                          const ShiftSpec& shift, std::size_t n, std::uint64_t seed,
                                          const SamplingOptions& opts = {});
std::pair<double, double> min_max_outputs(const Network& net, std::span<const double> x,
                                          double delta, std::size_t n, std::uint64_t seed);

}  // namespace shiftcert
