#include "shiftcert/apds.hpp"

#include <cmath>

#include "shiftcert/error.hpp"
#include "shiftcert/rng.hpp"

namespace shiftcert {
namespace {

void check_r(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("R must lie in (0, 1)");
}

}  // namespace

std::size_t sample_size_for_risk(double risk, double r) {
  if (!(risk > 0.0 && risk < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  check_r(r);
  // The 1e-9 slack absorbs rounding when the ratio is an exact integer.
  const double n = std::floor(std::log(risk) / std::log(r) + 1e-9);
  return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

std::size_t sample_size(double alpha, double r) { return sample_size_for_risk(1.0 - alpha, r); }

double confidence_of(std::size_t n, double r) {
  if (n == 0) throw DomainError("sample count must be positive");
  check_r(r);
  return -std::expm1(static_cast<double>(n) * std::log(r));
}

Confidence::Confidence(double risk, double r) : risk_(risk), r_(r), n_(sample_size_for_risk(risk, r)) {}

Confidence Confidence::from_alpha(double alpha, double r) { return Confidence(1.0 - alpha, r); }
Confidence Confidence::from_risk(double risk, double r) { return Confidence(risk, r); }

std::string_view to_string(AcceptanceRule rule) {
  return rule == AcceptanceRule::AllRobust ? "all-robust" : "at-least-r";
}

AcceptanceRule acceptance_rule_from_string(std::string_view s) {
  if (s == "all-robust") return AcceptanceRule::AllRobust;
  if (s == "at-least-r") return AcceptanceRule::AtLeastR;
  throw DomainError("unknown acceptance rule '" + std::string(s) + "'");
}

ApdsResult apds(const Network& net, std::span<const double> x, const ShiftSpec& shift, const Confidence& conf,
                std::uint64_t seed, const ApdsOptions& opts) {
  shift.validate(net.param_count());
  if (!(opts.delta_init > 0.0)) throw DomainError("delta_init must be positive");
  if (!std::isfinite(forward(net, x))) throw DomainError("network output at the counterfactual is not finite");

  ApdsResult res;
  res.confidence = conf;
  res.seed = seed;
  res.n = conf.n();
  if (opts.n_override) {
    if (*opts.n_override < conf.n()) {
      throw DomainError("sample size override " + std::to_string(*opts.n_override) +
                        " is below the Wilks size " + std::to_string(conf.n()));
    }
    res.n = *opts.n_override;
  }
  res.achieved_alpha = confidence_of(res.n, conf.r());

  auto accepted = [&](double delta) {
    const SampleStats s =
        sample_outputs(net, x, shift.with_delta(delta), res.n, derive_seed(seed, res.iterations), opts.sampling);
    ++res.iterations;
    res.samples_used += s.n;
    const bool ok = opts.rule == AcceptanceRule::AllRobust ? s.positive == s.n : s.rate() >= conf.r();
    res.trace.push_back({delta, s.rate(), ok});
    return ok;
  };

  const double delta_init = opts.delta_init;
  if (!accepted(delta_init)) return res;

  double delta = delta_init;
  int doublings = 0;
  do {
    if (++doublings > opts.max_doublings) {
      throw DomainError("counterfactual still accepted after " + std::to_string(opts.max_doublings) +
                        " doublings (delta = " + std::to_string(delta) + "); output is likely constant");
    }
    delta *= 2.0;
  } while (accepted(delta));

  double delta_max = delta / 2.0;
  while (std::abs(delta - delta_max) > delta_init) {
    const double mid = (delta_max + delta) / 2.0;
    if (accepted(mid)) {
      delta_max = mid;
    } else {
      delta = mid;
    }
  }
  res.delta_max = delta_max;
  return res;
}

ApdsResult apds(const Network& net, std::span<const double> x, const Confidence& conf, std::uint64_t seed,
                const ApdsOptions& opts) {
  return apds(net, x, ShiftSpec::for_model(net, 0.0), conf, seed, opts);
}

bool check_robust_at(const Network& net, std::span<const double> x, const ShiftSpec& shift,
                     const Confidence& conf, std::uint64_t seed, const SamplingOptions& opts) {
  const SampleStats s = sample_outputs(net, x, shift, conf.n(), seed, opts);
  return s.positive == s.n;
}

bool check_robust_at(const Network& net, std::span<const double> x, double delta, double alpha, double r,
                     std::uint64_t seed) {
  return check_robust_at(net, x, ShiftSpec::for_model(net, delta), Confidence::from_alpha(alpha, r), seed);
}

}  // namespace shiftcert
