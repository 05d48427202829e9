#pragma once

#include <cstdint>
#include <vector>

#include "shiftcert/model.hpp"

namespace shiftcert {

// Networks used throughout the tests and the reproduction experiments. All
// are bias-free with an identity output and carry a weights-only shift mask.

// 2-2-1 ReLU net with w = (1, 0, 0, 0.6 | 1, -1). Output 0.52 at [1, 0.8].
Network fig2_network();
inline std::vector<double> fig2_counterfactual() { return {1.0, 0.8}; }
inline std::vector<double> fig2_factual() { return {0.9, 0.9}; }

// 1-2-1 ReLU net with weights at the centers of the published intervals.
// Output ~0.860 at x = -2.57.
Network fig5_network();
inline std::vector<double> fig5_input() { return {-2.57}; }

// y = w x with w = 1; robust up to delta = 0.5 at x = 1.
Network one_weight_network();
inline std::vector<double> one_weight_input() { return {1.0}; }

// Seeded random feed-forward nets with a positively classified input.
struct RandomNetConfig {
  std::size_t min_inputs = 1;
  std::size_t max_inputs = 3;
  std::size_t min_hidden_layers = 1;
  std::size_t max_hidden_layers = 2;
  std::size_t max_width = 4;
  std::size_t max_params = 30;
  bool biases = true;
  double min_margin = 0.05;  // forward(x) >= 0.5 + min_margin
};

struct RandomInstance {
  Network net;
  std::vector<double> x;
};

RandomInstance random_instance(std::uint64_t seed, const RandomNetConfig& cfg = {});

}  // namespace shiftcert
