#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "shiftcert/interval.hpp"
#include "shiftcert/model.hpp"
#include "shiftcert/shift.hpp"

namespace shiftcert {

// Sub-box of the root shift box produced by midpoint splits.
struct Branch {
  std::vector<Interval> box;  // one interval per parameter
  int depth = 0;
  double relative_volume = 1.0;  // 2^-depth
};

// Limits for the splitting search. A branch still undecided at `max_depth`,
// or once `max_leaves` branches have been evaluated, is counted as unknown and
// flags `budget_exhausted`.
struct EnumerationBudget {
  int max_depth = 24;
  std::size_t max_leaves = 1'000'000;
};

struct EnumerationReport {
  double robust_fraction = 0.0;
  double nonrobust_fraction = 0.0;
  double unknown_fraction = 0.0;
  std::size_t robust_leaves = 0;
  std::size_t nonrobust_leaves = 0;
  std::size_t unknown_leaves = 0;
  std::size_t branches_evaluated = 0;
  int depth_reached = 0;
  bool budget_exhausted = false;
};

using LeafVisitor = std::function<void(const Branch&, Verdict)>;

// Index of the interval to split: widest perturbed interval, lowest index on
// ties. Returns nullopt when every interval is degenerate.
std::optional<std::size_t> choose_split(std::span<const Interval> box);

// Exact robustness enumeration: depth-first worklist over sub-boxes of the
// shift box, each classified by interval propagation and split in half along
// `choose_split` while undecided. Fractions are volume fractions of the root
// box. `visit` (optional) sees every final leaf.
EnumerationReport enumerate(const Network& net, std::span<const double> x, const ShiftSpec& shift,
                            const EnumerationBudget& budget = {}, const LeafVisitor& visit = {});

struct Decision {
  Verdict verdict = Verdict::Unknown;
  bool budget_exhausted = false;
  std::size_t branches_evaluated = 0;
  // A realization classifying x as negative, when one was found.
  std::optional<ParamVector> witness;
};

struct DecideOptions {
  EnumerationBudget budget;
  std::size_t counterexample_samples = 1000;
  std::uint64_t seed = 0;
  // Return Unknown at the first branch that hits the budget instead of
  // searching the rest of the box for a counterexample.
  bool stop_at_unknown = false;
};

// Sound and complete (up to budget) decision of delta-robustness: random
// counterexample search first, then the splitting search with early exit on
// the first non-robust leaf.
Decision decide_robust(const Network& net, std::span<const double> x, const ShiftSpec& shift,
                       const DecideOptions& opts = {});

struct ProvableDeltaOptions {
  double delta_init = 1e-4;
  int max_doublings = 64;
  DecideOptions decide;
};

struct ProvableDeltaResult {
  double delta_star = 0.0;
  int decisions = 0;
  bool any_unknown = false;
};

// Largest delta (to delta_init resolution) with a robustness proof, using the
// same gate/doubling/bisection skeleton as `apds`. Unknown counts as not
// robust. Returns 0 when x is not classified positive.
ProvableDeltaResult provable_delta(const Network& net, std::span<const double> x, const ShiftSpec& shift,
                                   const ProvableDeltaOptions& opts = {});

}  // namespace shiftcert
