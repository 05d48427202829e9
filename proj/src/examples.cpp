#include "shiftcert/examples.hpp"

#include "shiftcert/error.hpp"
#include "shiftcert/rng.hpp"

namespace shiftcert {
namespace {

DenseLayer dense(std::size_t rows, std::size_t cols, std::vector<double> w, Activation a) {
  return DenseLayer{rows, cols, std::move(w), std::vector<double>(rows, 0.0), a};
}

Network with_weight_mask(Network net, const char* name) {
  net.metadata().name = name;
  net.metadata().perturbation_mask = net.weights_only_mask();
  return net;
}

}  // namespace

Network fig2_network() {
  return with_weight_mask(Network(2, {dense(2, 2, {1.0, 0.0, 0.0, 0.6}, Activation::Relu),
                                      dense(1, 2, {1.0, -1.0}, Activation::Identity)}),
                          "fig2");
}

Network fig5_network() {
  return with_weight_mask(Network(1, {dense(2, 1, {-0.365, -0.875}, Activation::Relu),
                                      dense(1, 2, {-1.025, 0.81}, Activation::Identity)}),
                          "fig5");
}

Network one_weight_network() {
  return with_weight_mask(Network(1, {dense(1, 1, {1.0}, Activation::Identity)}), "one-weight");
}

RandomInstance random_instance(std::uint64_t seed, const RandomNetConfig& cfg) {
  for (std::uint64_t attempt = 0; attempt < 10'000; ++attempt) {
    Rng rng(seed, attempt);
    auto pick = [&](std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(rng.below(hi - lo + 1)); };
    const std::size_t in = pick(cfg.min_inputs, cfg.max_inputs);
    const std::size_t depth = pick(cfg.min_hidden_layers, cfg.max_hidden_layers);
    std::vector<std::size_t> sizes;
    for (std::size_t l = 0; l < depth; ++l) sizes.push_back(pick(1, cfg.max_width));
    sizes.push_back(1);

    std::size_t params = 0, prev = in;
    for (std::size_t s : sizes) {
      params += s * prev + (cfg.biases ? s : 0);
      prev = s;
    }
    if (params > cfg.max_params) continue;

    std::vector<DenseLayer> layers;
    prev = in;
    for (std::size_t l = 0; l < sizes.size(); ++l) {
      DenseLayer L;
      L.rows = sizes[l];
      L.cols = prev;
      L.activation = l + 1 == sizes.size() ? Activation::Identity : Activation::Relu;
      for (std::size_t k = 0; k < L.rows * L.cols; ++k) L.weights.push_back(rng.uniform(-1.0, 1.0));
      for (std::size_t k = 0; k < L.rows; ++k) L.biases.push_back(cfg.biases ? rng.uniform(-0.5, 0.5) : 0.0);
      layers.push_back(std::move(L));
      prev = sizes[l];
    }
    Network net(in, std::move(layers));
    if (!cfg.biases) net.metadata().perturbation_mask = net.weights_only_mask();
    for (int tries = 0; tries < 50; ++tries) {
      std::vector<double> x(in);
      for (double& v : x) v = rng.uniform(-1.0, 1.0);
      if (forward(net, x) >= kDecisionThreshold + cfg.min_margin) return {std::move(net), std::move(x)};
    }
  }
  throw Error("could not draw a random network with a positive input");
}

}  // namespace shiftcert
