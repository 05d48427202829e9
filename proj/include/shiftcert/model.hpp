#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace shiftcert {

// Class 1 iff the scalar network output is >= this value. Every decision in
// the library goes through `is_positive`.
inline constexpr double kDecisionThreshold = 0.5;

inline bool is_positive(double output) { return output >= kDecisionThreshold; }

enum class Activation { Relu, Identity, Sigmoid };

std::string_view to_string(Activation a);
Activation activation_from_string(std::string_view name);
double activate(Activation a, double v);

// Fully connected layer; weights are row-major with `rows` outputs and `cols`
// inputs.
struct DenseLayer {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> weights;
  std::vector<double> biases;
  Activation activation = Activation::Relu;

  double weight(std::size_t r, std::size_t c) const { return weights[r * cols + c]; }
  std::size_t param_count() const { return rows * cols + rows; }
};

// Flat parameter vector. Canonical order: layer by layer, the row-major weights
// followed by the biases.
struct ParamVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  bool operator==(const ParamVector&) const = default;
};

struct Normalization {
  std::vector<double> min;
  std::vector<double> max;
};

struct ModelMetadata {
  std::string name;
  std::string dataset;
  std::vector<std::string> feature_names;
  std::optional<Normalization> normalization;
  // Which parameters a plausible shift may move (true = perturbed). Absent
  // means every parameter.
  std::optional<std::vector<bool>> perturbation_mask;
  // Free-form extras (the reduction stores its interval half-widths here).
  nlohmann::json extra = nlohmann::json::object();
};

// Feed-forward binary classifier with a single output unit.
class Network {
 public:
  Network(std::size_t input_dim, std::vector<DenseLayer> layers);

  std::size_t input_dim() const { return input_dim_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::size_t param_count() const { return param_count_; }

  ParamVector flatten() const;
  // Same topology, parameters taken from `params` (canonical order).
  Network with_params(std::span<const double> params) const;

  // Mask selecting weights only; biases stay fixed under shifts.
  std::vector<bool> weights_only_mask() const;
  bool is_bias_index(std::size_t flat_index) const;

  ModelMetadata& metadata() { return metadata_; }
  const ModelMetadata& metadata() const { return metadata_; }

 private:
  std::size_t input_dim_;
  std::vector<DenseLayer> layers_;
  std::size_t param_count_ = 0;
  ModelMetadata metadata_;
};

// Scratch buffers for allocation-free evaluation in sampling loops.
struct ForwardWorkspace {
  std::vector<double> a;
  std::vector<double> b;
};

// Scalar pre-threshold output.
double forward(const Network& net, std::span<const double> x);

// Evaluates the topology of `net` with the flat parameters `params` instead of
// its own. No validation beyond sizes; meant for hot loops.
double forward_with_params(const Network& net, std::span<const double> params,
                           std::span<const double> x, ForwardWorkspace& ws);

enum class NormOrder { L1, L2, Inf };

NormOrder norm_from_string(std::string_view s);
double param_distance(const ParamVector& a, const ParamVector& b, NormOrder p);
double vector_distance(std::span<const double> a, std::span<const double> b, NormOrder p);

}  // namespace shiftcert
