#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shiftcert/apds.hpp"
#include "shiftcert/dataset.hpp"
#include "shiftcert/model.hpp"
#include "shiftcert/shift.hpp"

namespace shiftcert {

// Counterfactual search that stands in for a MILP generator: pick the nearest
// (l1) dataset row the network classifies positive with output >= 0.5 +
// margin, bisect the segment from x towards it until the output is within
// `margin` of the boundary, then greedily move single coordinates back towards
// x while the output stays >= 0.5 + margin.
//
// Larger distance budgets move the candidate along the path x_min -> anchor
// -> deep anchor, the dataset row with the highest output.
struct CfxSearchConfig {
  double margin = 0.01;
  int bisection_steps = 60;
  int descent_rounds = 50;
  bool clamp_to_data = true;
};

// Fixed part of a search for one x. Candidates for a distance budget lie on
// the path x_min -> anchor -> deep_anchor.
struct CfxPlan {
  std::vector<double> x;
  std::vector<double> anchor;
  std::vector<double> deep_anchor;
  std::vector<double> x_min;
  double d_min = 0.0;  // l1(x, x_min)
  double d_anchor = 0.0;
};

// Throws DomainError when no dataset row is positive with the margin.
CfxPlan plan_cfx(const Network& net, std::span<const double> x, const Dataset& data,
                 const CfxSearchConfig& cfg = {});

// Candidate whose l1 distance to x is as close to `budget` as possible while
// staying valid, or nullopt when budget < d_min. A positively classified x is
// returned unchanged.
std::optional<std::vector<double>> compute_cfx(const Network& net, std::span<const double> x,
                                               const Dataset& data, double budget,
                                               const CfxSearchConfig& cfg = {});
std::optional<std::vector<double>> candidate_at(const Network& net, const CfxPlan& plan, double budget,
                                                const CfxSearchConfig& cfg = {});

struct CfxRequest {
  std::vector<double> x;
  NormOrder metric = NormOrder::L1;
  // Initial distance budget; unset means 1.05 x the minimal distance found.
  std::optional<double> initial_budget;
  double relaxation = 1.1;
  int tau = 50;
  double delta = 0.05;
  Confidence confidence;
  std::uint64_t seed = 42;
  SamplingOptions sampling;
  CfxSearchConfig search;
};

struct CfxResult {
  std::vector<double> x_prime;
  bool found = false;
  bool valid = false;
  bool robust = false;
  double output = 0.0;
  double distance_l1 = 0.0;
  double distance = 0.0;  // in the request metric
  int iterations_used = 0;
  std::vector<double> budgets;  // one per iteration
  std::string failure;
};

// Generate-test-relax loop: the candidate at budget b_t is tested with
// check_robust_at at the request delta (sub-seed derive_seed(seed, t)); on
// failure the budget is multiplied by `relaxation`. After tau failures the
// result carries failure "no robust CFX can be found".
CfxResult generate_robust_cfx(const CfxRequest& req, const Network& net, const Dataset& data);

}  // namespace shiftcert
