#include "shiftcert/cfx.hpp"

#include <cmath>
#include <limits>

#include "shiftcert/error.hpp"
#include "shiftcert/rng.hpp"

namespace shiftcert {
namespace {

double l1(std::span<const double> a, std::span<const double> b) { return vector_distance(a, b, NormOrder::L1); }

std::vector<double> lerp(std::span<const double> a, std::span<const double> b, double t) {
  std::vector<double> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] + t * (b[j] - a[j]);
  return out;
}

void clamp_into(std::vector<double>& v, const std::vector<double>& lo, const std::vector<double>& hi) {
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::min(std::max(v[j], lo[j]), hi[j]);
}

}  // namespace

CfxPlan plan_cfx(const Network& net, std::span<const double> x, const Dataset& data, const CfxSearchConfig& cfg) {
  if (x.size() != net.input_dim()) throw DimensionError("input has the wrong dimension for the model");
  if (data.dim != net.input_dim()) throw DimensionError("dataset dimension differs from the model input");
  CfxPlan plan;
  plan.x.assign(x.begin(), x.end());
  if (is_positive(forward(net, x))) {
    plan.anchor = plan.deep_anchor = plan.x_min = plan.x;
    return plan;
  }

  const double target = kDecisionThreshold + cfg.margin;
  std::optional<std::size_t> best, deep;
  double best_d = std::numeric_limits<double>::infinity();
  double deep_out = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double out = forward(net, data.row(i));
    if (out < target) continue;
    const double d = l1(x, data.row(i));
    if (d < best_d) {
      best_d = d;
      best = i;
    }
    if (out > deep_out) {
      deep_out = out;
      deep = i;
    }
  }
  if (!best) throw DomainError("no dataset row is classified positive; cannot anchor a counterfactual");
  const std::span<const double> anchor_row = data.row(*best);
  plan.anchor.assign(anchor_row.begin(), anchor_row.end());
  plan.deep_anchor.assign(data.row(*deep).begin(), data.row(*deep).end());
  plan.d_anchor = best_d;

  std::vector<double> lo_b, hi_b;
  if (cfg.clamp_to_data) {
    lo_b = feature_min(data);
    hi_b = feature_max(data);
  }
  auto valid = [&](std::vector<double>& p) {
    if (cfg.clamp_to_data) clamp_into(p, lo_b, hi_b);
    return forward(net, p) >= target;
  };

  // Boundary crossing on the segment x -> anchor.
  double lo = 0.0, hi = 1.0;
  for (int s = 0; s < cfg.bisection_steps; ++s) {
    const double mid = 0.5 * (lo + hi);
    std::vector<double> p = lerp(x, plan.anchor, mid);
    (valid(p) ? hi : lo) = mid;
  }
  std::vector<double> cur = lerp(x, plan.anchor, hi);
  if (!valid(cur)) cur = plan.anchor;

  // Greedy coordinate descent towards x.
  for (int round = 0; round < cfg.descent_rounds; ++round) {
    bool improved = false;
    for (std::size_t j = 0; j < cur.size(); ++j) {
      if (cur[j] == x[j]) continue;
      std::vector<double> trial = cur;
      trial[j] = x[j];
      if (valid(trial)) {
        cur = std::move(trial);
        improved = true;
        continue;
      }
      double keep = 0.0, drop = 1.0;  // fraction of the move towards x[j]
      for (int s = 0; s < cfg.bisection_steps; ++s) {
        const double mid = 0.5 * (keep + drop);
        trial[j] = cur[j] + mid * (x[j] - cur[j]);
        (valid(trial) ? keep : drop) = mid;
      }
      if (keep > 0.0) {
        const double before = cur[j];
        trial[j] = cur[j] + keep * (x[j] - cur[j]);
        if (valid(trial) && std::abs(trial[j] - before) > 1e-12) {
          cur = std::move(trial);
          improved = true;
        }
      }
    }
    if (!improved) break;
  }
  plan.x_min = std::move(cur);
  plan.d_min = l1(x, plan.x_min);
  return plan;
}

std::optional<std::vector<double>> candidate_at(const Network& net, const CfxPlan& plan, double budget,
                                                const CfxSearchConfig& cfg) {
  if (plan.d_min == 0.0 && plan.x_min == plan.x) return plan.x;
  if (budget < plan.d_min) return std::nullopt;
  const double target = kDecisionThreshold + cfg.margin;
  // Path parameter s in [0, 2]: [0, 1] is x_min -> anchor, [1, 2] anchor -> deep.
  auto at = [&](double s) {
    return s <= 1.0 ? lerp(plan.x_min, plan.anchor, s) : lerp(plan.anchor, plan.deep_anchor, s - 1.0);
  };
  auto dist = [&](double s) { return l1(plan.x, at(s)); };

  // Furthest path point whose distance stays within budget.
  double s = 0.0;
  for (double seg = 0.0; seg < 2.0; seg += 1.0) {
    if (dist(seg + 1.0) <= budget) {
      s = seg + 1.0;
      continue;
    }
    double lo = seg, hi = seg + 1.0;
    for (int k = 0; k < cfg.bisection_steps; ++k) {
      const double mid = 0.5 * (lo + hi);
      (dist(mid) <= budget ? lo : hi) = mid;
    }
    s = lo;
    break;
  }
  // Back off towards x_min while the point is not valid.
  for (int k = 0; k < cfg.bisection_steps && s > 0.0; ++k) {
    std::vector<double> p = at(s);
    if (forward(net, p) >= target) return p;
    s *= 0.5;
  }
  return plan.x_min;
}

std::optional<std::vector<double>> compute_cfx(const Network& net, std::span<const double> x, const Dataset& data,
                                               double budget, const CfxSearchConfig& cfg) {
  if (x.size() != net.input_dim()) throw DimensionError("input has the wrong dimension for the model");
  if (is_positive(forward(net, x))) return std::vector<double>(x.begin(), x.end());
  return candidate_at(net, plan_cfx(net, x, data, cfg), budget, cfg);
}

CfxResult generate_robust_cfx(const CfxRequest& req, const Network& net, const Dataset& data) {
  if (req.tau < 1) throw DomainError("tau must be at least 1");
  if (!(req.relaxation > 1.0)) throw DomainError("relaxation factor must exceed 1");
  if (!(req.delta >= 0.0) || !std::isfinite(req.delta)) throw DomainError("delta must be finite and >= 0");
  if (req.x.size() != net.input_dim()) throw DimensionError("input has the wrong dimension for the model");
  if (is_positive(forward(net, req.x))) {
    throw DomainError("input is already classified positive; a counterfactual request is vacuous");
  }

  const CfxPlan plan = plan_cfx(net, req.x, data, req.search);
  const ShiftSpec shift = ShiftSpec::for_model(net, req.delta);
  double budget = req.initial_budget.value_or(plan.d_min * 1.05);
  if (!(budget > 0.0)) throw DomainError("initial distance budget must be positive");

  CfxResult res;
  for (int t = 0; t < req.tau; ++t) {
    res.iterations_used = t + 1;
    res.budgets.push_back(budget);
    if (std::optional<std::vector<double>> cand = candidate_at(net, plan, budget, req.search)) {
      res.x_prime = std::move(*cand);
      res.output = forward(net, res.x_prime);
      res.valid = is_positive(res.output);
      const bool robust =
          res.valid && (req.delta == 0.0 ||
                        check_robust_at(net, res.x_prime, shift, req.confidence,
                                        derive_seed(req.seed, static_cast<std::uint64_t>(t)), req.sampling));
      if (robust) {
        res.found = res.robust = true;
        break;
      }
    }
    budget *= req.relaxation;
  }
  if (!res.x_prime.empty()) {
    res.distance_l1 = l1(req.x, res.x_prime);
    res.distance = vector_distance(req.x, res.x_prime, req.metric);
  }
  if (!res.found) res.failure = "no robust CFX can be found";
  return res;
}

}  // namespace shiftcert
