#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "shiftcert/cfx.hpp"
#include "shiftcert/dataset.hpp"
#include "shiftcert/lof.hpp"
#include "shiftcert/model.hpp"
#include "shiftcert/stats.hpp"

namespace shiftcert {

// Mini-batch gradient descent on the logistic loss. Hidden layers are ReLU,
// the single output unit is sigmoid. Weights start He-uniform, biases at 0.
struct TrainConfig {
  std::vector<std::size_t> hidden = {20, 10};
  int epochs = 300;
  std::size_t batch_size = 16;
  double learning_rate = 0.1;
  std::uint64_t seed = 42;
  // Start from these parameters instead of a fresh initialization.
  std::optional<Network> warm_start;
};

struct TrainResult {
  Network net;
  double accuracy = 0.0;
  double final_loss = 0.0;
  int epochs = 0;
};

// Untrained network with the initialization `train` starts from.
Network init_network(std::size_t input_dim, const TrainConfig& cfg);
// Throws DomainError on an empty dataset or a non-finite loss.
TrainResult train(const Dataset& data, const TrainConfig& cfg);
double accuracy(const Network& net, const Dataset& data);

// Percentages of counterfactuals classified positive by each model.
std::pair<double, double> vm_metrics(const std::vector<std::vector<double>>& cfxs, const Network& base,
                                     const Network& shifted);
// Infinity-norm parameter change between two models of the same topology.
double delta_e(const Network& base, const Network& shifted);

struct EvalReport {
  double vm1 = 0.0;
  double vm2 = 0.0;
  double mean_l1 = 0.0;
  double mean_lof = 0.0;  // mean of +1/-1 labels
  double delta_e = 0.0;
  std::size_t requested = 0;
  std::size_t generated = 0;  // requests that returned a robust CFX
  double base_accuracy = 0.0;
  double shifted_accuracy = 0.0;
};

// How the shifted model is obtained from D1 + D2: a fresh run with the base
// model's seed, or continued training from the base model's parameters.
enum class ShiftedTraining { Retrain, FineTune };

std::string_view to_string(ShiftedTraining t);
ShiftedTraining shifted_training_from_string(std::string_view s);

struct ProtocolConfig {
  TrainConfig train;
  ShiftedTraining shifted = ShiftedTraining::Retrain;
  int finetune_epochs = 50;
  CfxRequest request;  // `x` is filled per input; the rest is shared
  std::size_t n_cfx = 50;
  std::size_t lof_k = kDefaultLofNeighbors;
  double lof_threshold = kDefaultLofThreshold;
};

struct ProtocolOutput {
  EvalReport report;
  Network base;
  Network shifted;
  std::vector<std::vector<double>> inputs;
  std::vector<CfxResult> results;
};

// Shuffle and halve the data into D1, D2; train the base model on D1 and the
// shifted model on D1 + D2 with the same seed; generate robust CFXs against
// the base model for the first n_cfx rows of D1 it classifies negative; score
// them on both models.
ProtocolOutput run_shift_protocol(const Dataset& data, const ProtocolConfig& cfg);

// Metrics for a given set of counterfactuals (empty slots are skipped).
EvalReport evaluate_cfxs(const std::vector<std::vector<double>>& inputs,
                         const std::vector<std::vector<double>>& cfxs, const Network& base,
                         const Network& shifted, const Dataset& reference, std::size_t lof_k = kDefaultLofNeighbors,
                         double lof_threshold = kDefaultLofThreshold);

struct NomsRow {
  double delta = 0.0;
  std::size_t n = 0;
  double avg_diff = 0.0;       // mean |M'(x') - M(x')|, averaged over CFXs
  double rejection_pct = 0.0;  // % of CFXs whose t-test rejects mean = M(x')
};

struct NomsOptions {
  double significance = 0.05;
  bool two_sided = false;
  SamplingOptions sampling;
};

// For every (delta, n): n realizations per counterfactual; the t-test is
// one-sided in the direction of the observed mean unless two_sided is set.
std::vector<NomsRow> noms_compare(const Network& base, const std::vector<std::vector<double>>& cfxs,
                                  const std::vector<double>& deltas, const std::vector<std::size_t>& n_list,
                                  std::uint64_t seed, const NomsOptions& opts = {});

}  // namespace shiftcert
