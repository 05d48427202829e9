#include "shiftcert/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "shiftcert/error.hpp"

namespace shiftcert {
namespace {

// Fixed chunking keeps floating-point sums identical for any thread count.
constexpr std::size_t kChunk = 4096;

struct Partial {
  SampleStats stats;
  bool finite = true;
};

void sample_chunk(const Network& net, std::span<const double> x, const ShiftSpec& shift,
                  std::span<const double> theta, double center, std::uint64_t seed, std::size_t begin,
                  std::size_t end, Partial& out) {
  ForwardWorkspace ws;
  std::vector<double> params(theta.size());
  SampleStats& s = out.stats;
  s.min = INFINITY;
  s.max = -INFINITY;
  for (std::size_t i = begin; i < end; ++i) {
    Rng rng(seed, i);
    sample_realization_into(theta, shift, rng, params);
    const double y = forward_with_params(net, params, x, ws);
    if (!std::isfinite(y)) {
      out.finite = false;
      return;
    }
    ++s.n;
    if (is_positive(y)) ++s.positive;
    s.min = std::min(s.min, y);
    s.max = std::max(s.max, y);
    s.sum += y;
    s.sum_sq += y * y;
    s.sum_abs_dev += std::abs(y - center);
  }
}

}  // namespace

void sample_realization_into(std::span<const double> theta, const ShiftSpec& shift, Rng& rng,
                             std::span<double> out) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    out[i] = shift.mask[i] ? rng.uniform(theta[i] - shift.delta, theta[i] + shift.delta) : theta[i];
  }
}

ParamVector sample_realization(const ParamVector& theta, const ShiftSpec& shift, Rng& rng) {
  shift.validate(theta.size());
  ParamVector out;
  out.values.resize(theta.size());
  sample_realization_into(theta.values, shift, rng, out.values);
  return out;
}

SampleStats sample_outputs(const Network& net, std::span<const double> x, const ShiftSpec& shift,
                           std::size_t n, std::uint64_t seed, const SamplingOptions& opts) {
  shift.validate(net.param_count());
  if (n == 0) throw DomainError("sample count must be positive");
  const double center = forward(net, x);
  const ParamVector theta = net.flatten();

  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<Partial> partials(chunks);
  auto run = [&](std::size_t c) {
    sample_chunk(net, x, shift, theta.values, center, seed, c * kChunk, std::min(n, (c + 1) * kChunk),
                 partials[c]);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(chunks)));
  if (threads == 1) {
    for (std::size_t c = 0; c < chunks; ++c) run(c);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t c = t; c < chunks; c += threads) run(c);
      });
    }
  }

  SampleStats total;
  total.min = INFINITY;
  total.max = -INFINITY;
  for (const Partial& p : partials) {
    if (!p.finite) throw DomainError("network produced a non-finite output under a sampled shift");
    total.n += p.stats.n;
    total.positive += p.stats.positive;
    total.min = std::min(total.min, p.stats.min);
    total.max = std::max(total.max, p.stats.max);
    total.sum += p.stats.sum;
    total.sum_sq += p.stats.sum_sq;
    total.sum_abs_dev += p.stats.sum_abs_dev;
  }
  return total;
}

double realizations(const Network& net, std::span<const double> x, const ShiftSpec& shift, std::size_t n,
                    std::uint64_t seed, const SamplingOptions& opts) {
  return sample_outputs(net, x, shift, n, seed, opts).rate();
}

double realizations(const Network& net, std::span<const double> x, double delta, std::size_t n,
                    std::uint64_t seed) {
  return realizations(net, x, ShiftSpec::for_model(net, delta), n, seed);
}

std::pair<double, double> min_max_outputs(const Network& net, std::span<const double> x,
                                          const ShiftSpec& shift, std::size_t n, std::uint64_t seed,
                                          const SamplingOptions& opts) {
  const SampleStats s = sample_outputs(net, x, shift, n, seed, opts);
  return {s.min, s.max};
}

std::pair<double, double> min_max_outputs(const Network& net, std::span<const double> x, double delta,
                                          std::size_t n, std::uint64_t seed) {
  return min_max_outputs(net, x, ShiftSpec::for_model(net, delta), n, seed);
}

}  // namespace shiftcert
