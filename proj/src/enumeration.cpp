#include "shiftcert/enumeration.hpp"

#include <cmath>

#include "shiftcert/error.hpp"
#include "shiftcert/rng.hpp"
#include "shiftcert/sampling.hpp"

namespace shiftcert {
namespace {

std::pair<Branch, Branch> split(const Branch& b, std::size_t index) {
  Branch lo = b, hi = b;
  const double mid = b.box[index].mid();
  lo.box[index].hi = mid;
  hi.box[index].lo = mid;
  lo.depth = hi.depth = b.depth + 1;
  lo.relative_volume = hi.relative_volume = b.relative_volume * 0.5;
  return {std::move(lo), std::move(hi)};
}

std::vector<double> box_center(std::span<const Interval> box) {
  std::vector<double> c;
  c.reserve(box.size());
  for (const Interval& iv : box) c.push_back(iv.mid());
  return c;
}

}  // namespace

std::optional<std::size_t> choose_split(std::span<const Interval> box) {
  std::optional<std::size_t> best;
  double best_width = 0.0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (box[i].width() > best_width) {
      best_width = box[i].width();
      best = i;
    }
  }
  return best;
}

EnumerationReport enumerate(const Network& net, std::span<const double> x, const ShiftSpec& shift,
                            const EnumerationBudget& budget, const LeafVisitor& visit) {
  if (!(shift.delta > 0.0)) throw DomainError("enumeration requires delta > 0");
  EnumerationReport rep;
  IntervalWorkspace ws;

  std::vector<Branch> stack;
  stack.push_back(Branch{shift_box(net, shift), 0, 1.0});

  auto leaf = [&](const Branch& b, Verdict v) {
    switch (v) {
      case Verdict::Robust:
        rep.robust_fraction += b.relative_volume;
        ++rep.robust_leaves;
        break;
      case Verdict::NonRobust:
        rep.nonrobust_fraction += b.relative_volume;
        ++rep.nonrobust_leaves;
        break;
      case Verdict::Unknown:
        rep.unknown_fraction += b.relative_volume;
        ++rep.unknown_leaves;
        break;
    }
    if (visit) visit(b, v);
  };

  while (!stack.empty()) {
    Branch b = std::move(stack.back());
    stack.pop_back();
    if (rep.branches_evaluated >= budget.max_leaves) {
      rep.budget_exhausted = true;
      leaf(b, Verdict::Unknown);
      continue;
    }
    ++rep.branches_evaluated;
    rep.depth_reached = std::max(rep.depth_reached, b.depth);

    const Verdict v = classify(propagate_box(net, b.box, x, ws));
    if (v != Verdict::Unknown) {
      leaf(b, v);
      continue;
    }
    const std::optional<std::size_t> axis = choose_split(b.box);
    if (b.depth >= budget.max_depth || !axis) {
      rep.budget_exhausted = rep.budget_exhausted || b.depth >= budget.max_depth;
      leaf(b, Verdict::Unknown);
      continue;
    }
    auto [lo, hi] = split(b, *axis);
    stack.push_back(std::move(hi));
    stack.push_back(std::move(lo));
  }
  return rep;
}

Decision decide_robust(const Network& net, std::span<const double> x, const ShiftSpec& shift,
                       const DecideOptions& opts) {
  Decision d;
  const ParamVector theta = net.flatten();
  shift.validate(theta.size());

  if (opts.counterexample_samples > 0 && shift.delta > 0.0) {
    ForwardWorkspace fws;
    std::vector<double> params(theta.size());
    for (std::size_t i = 0; i < opts.counterexample_samples; ++i) {
      Rng rng(opts.seed, i);
      sample_realization_into(theta.values, shift, rng, params);
      if (!is_positive(forward_with_params(net, params, x, fws))) {
        d.verdict = Verdict::NonRobust;
        d.witness = ParamVector{params};
        return d;
      }
    }
  }

  IntervalWorkspace ws;
  ForwardWorkspace fws;
  std::vector<Branch> stack;
  stack.push_back(Branch{shift_box(net, shift), 0, 1.0});
  while (!stack.empty()) {
    Branch b = std::move(stack.back());
    stack.pop_back();
    if (d.branches_evaluated >= opts.budget.max_leaves) {
      d.budget_exhausted = true;
      break;
    }
    ++d.branches_evaluated;
    const Verdict v = classify(propagate_box(net, b.box, x, ws));
    if (v == Verdict::Robust) continue;
    if (v == Verdict::NonRobust) {
      d.verdict = Verdict::NonRobust;
      d.witness = ParamVector{box_center(b.box)};
      return d;
    }
    const std::optional<std::size_t> axis = choose_split(b.box);
    if (b.depth >= opts.budget.max_depth || !axis) {
      std::vector<double> c = box_center(b.box);
      if (!is_positive(forward_with_params(net, c, x, fws))) {
        d.verdict = Verdict::NonRobust;
        d.witness = ParamVector{std::move(c)};
        return d;
      }
      d.budget_exhausted = true;
      if (opts.stop_at_unknown) break;
      continue;
    }
    auto [lo, hi] = split(b, *axis);
    stack.push_back(std::move(hi));
    stack.push_back(std::move(lo));
  }
  d.verdict = d.budget_exhausted ? Verdict::Unknown : Verdict::Robust;
  return d;
}

ProvableDeltaResult provable_delta(const Network& net, std::span<const double> x, const ShiftSpec& shift,
                                   const ProvableDeltaOptions& opts) {
  ProvableDeltaResult res;
  if (!(opts.delta_init > 0.0)) throw DomainError("delta_init must be positive");
  const double center = forward(net, x);
  if (!std::isfinite(center)) throw DomainError("network output at the counterfactual is not finite");
  if (!is_positive(center)) return res;

  auto robust = [&](double delta) {
    DecideOptions o = opts.decide;
    o.seed = derive_seed(opts.decide.seed, static_cast<std::uint64_t>(res.decisions));
    ++res.decisions;
    const Decision d = decide_robust(net, x, shift.with_delta(delta), o);
    if (d.verdict == Verdict::Unknown) res.any_unknown = true;
    return d.verdict == Verdict::Robust;
  };

  const double delta_init = opts.delta_init;
  if (!robust(delta_init)) return res;
  double delta = delta_init;
  int doublings = 0;
  do {
    if (++doublings > opts.max_doublings) {
      throw DomainError("robustness still provable after " + std::to_string(opts.max_doublings) +
                        " doublings; output is likely constant");
    }
    delta *= 2.0;
  } while (robust(delta));

  double delta_max = delta / 2.0;
  while (std::abs(delta - delta_max) > delta_init) {
    const double mid = (delta_max + delta) / 2.0;
    if (robust(mid)) {
      delta_max = mid;
    } else {
      delta = mid;
    }
  }
  res.delta_star = delta_max;
  return res;
}

}  // namespace shiftcert
