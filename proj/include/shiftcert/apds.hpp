#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "shiftcert/model.hpp"
#include "shiftcert/sampling.hpp"
#include "shiftcert/shift.hpp"

namespace shiftcert {

// Wilks tolerance-limit sizing: with n realizations, the sample minimum bounds
// at least a fraction R of further realizations with confidence 1 - R^n.
//
// n = floor(log(1 - alpha) / log(R)), at least 1. Truncation reproduces the
// published sizes (1378 for alpha = 0.999, R = 0.995); the confidence actually
// achieved is `confidence_of(n, R)`, which can fall short of alpha by less
// than one sample's worth.
std::size_t sample_size(double alpha, double r);
// Same, with the risk 1 - alpha given directly (alpha = 1 - 1e-40 is not a
// double).
std::size_t sample_size_for_risk(double risk, double r);
double confidence_of(std::size_t n, double r);

class Confidence {
 public:
  // alpha = 0.999, R = 0.995.
  Confidence() : Confidence(1e-3, 0.995) {}
  static Confidence from_alpha(double alpha, double r);
  static Confidence from_risk(double risk, double r);

  double alpha() const { return 1.0 - risk_; }
  double risk() const { return risk_; }
  double r() const { return r_; }
  std::size_t n() const { return n_; }

 private:
  Confidence(double risk, double r);
  double risk_;
  double r_;
  std::size_t n_;
};

// How a batch of realizations is judged robust. AllRobust is the published
// algorithm (rate must be exactly 1). AtLeastR accepts rate >= R; it tracks
// the delta at which the robust fraction drops to R instead of the sample
// minimum.
enum class AcceptanceRule { AllRobust, AtLeastR };

std::string_view to_string(AcceptanceRule rule);
AcceptanceRule acceptance_rule_from_string(std::string_view s);

struct ApdsOptions {
  double delta_init = 1e-4;
  // Replaces the Wilks size; must not be smaller than it.
  std::optional<std::size_t> n_override;
  AcceptanceRule rule = AcceptanceRule::AllRobust;
  int max_doublings = 64;
  SamplingOptions sampling;
};

struct ApdsStep {
  double delta = 0.0;
  double rate = 0.0;
  bool accepted = false;
};

struct ApdsResult {
  double delta_max = 0.0;
  Confidence confidence;
  std::size_t n = 0;
  double achieved_alpha = 0.0;
  int iterations = 0;  // rate evaluations
  std::size_t samples_used = 0;
  std::uint64_t seed = 0;
  std::vector<ApdsStep> trace;
};

// Approximate plausible delta-shift search: gate at delta_init, exponential
// doubling while the batch is accepted, then bisection down to delta_init
// resolution. Every rate call uses n realizations and a fresh sub-seed
// derive_seed(seed, call index).
ApdsResult apds(const Network& net, std::span<const double> x, const Confidence& conf, std::uint64_t seed,
                const ApdsOptions& opts = {});
// Shift mask supplied explicitly (delta inside `shift` is ignored).
ApdsResult apds(const Network& net, std::span<const double> x, const ShiftSpec& shift, const Confidence& conf,
                std::uint64_t seed, const ApdsOptions& opts = {});

// Fixed-delta test used by counterfactual generation: all n realizations
// (n from the Wilks size) must classify x as positive.
bool check_robust_at(const Network& net, std::span<const double> x, const ShiftSpec& shift,
                     const Confidence& conf, std::uint64_t seed, const SamplingOptions& opts = {});
bool check_robust_at(const Network& net, std::span<const double> x, double delta, double alpha, double r,
                     std::uint64_t seed);

}  // namespace shiftcert
