#include "shiftcert/model.hpp"

#include <algorithm>
#include <cmath>

#include "shiftcert/error.hpp"

namespace shiftcert {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::Relu: return "relu";
    case Activation::Identity: return "identity";
    case Activation::Sigmoid: return "sigmoid";
  }
  return "?";
}

Activation activation_from_string(std::string_view name) {
  if (name == "relu") return Activation::Relu;
  if (name == "identity" || name == "linear") return Activation::Identity;
  if (name == "sigmoid") return Activation::Sigmoid;
  throw DomainError("unknown activation '" + std::string(name) + "'");
}

double activate(Activation a, double v) {
  switch (a) {
    case Activation::Relu: return v > 0.0 ? v : 0.0;
    case Activation::Identity: return v;
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-v));
  }
  return v;
}

Network::Network(std::size_t input_dim, std::vector<DenseLayer> layers)
    : input_dim_(input_dim), layers_(std::move(layers)) {
  if (input_dim_ == 0) throw DimensionError("network input_dim must be positive");
  if (layers_.empty()) throw DimensionError("network needs at least one layer");
  std::size_t in = input_dim_;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const DenseLayer& l = layers_[i];
    const std::string where = "layer " + std::to_string(i);
    if (l.rows == 0) throw DimensionError(where + ": zero outputs");
    if (l.cols != in) {
      throw DimensionError(where + ": expects " + std::to_string(l.cols) +
                           " inputs but previous size is " + std::to_string(in));
    }
    if (l.weights.size() != l.rows * l.cols) throw DimensionError(where + ": weight count mismatch");
    if (l.biases.size() != l.rows) throw DimensionError(where + ": bias count mismatch");
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(l.weights.begin(), l.weights.end(), finite) ||
        !std::all_of(l.biases.begin(), l.biases.end(), finite)) {
      throw DomainError(where + ": non-finite parameter");
    }
    param_count_ += l.param_count();
    in = l.rows;
  }
  if (in != 1) throw DimensionError("final layer must have exactly one output");
}

ParamVector Network::flatten() const {
  ParamVector p;
  p.values.reserve(param_count_);
  for (const DenseLayer& l : layers_) {
    p.values.insert(p.values.end(), l.weights.begin(), l.weights.end());
    p.values.insert(p.values.end(), l.biases.begin(), l.biases.end());
  }
  return p;
}

Network Network::with_params(std::span<const double> params) const {
  if (params.size() != param_count_) {
    throw DimensionError("parameter vector has " + std::to_string(params.size()) +
                         " entries, network has " + std::to_string(param_count_));
  }
  std::vector<DenseLayer> layers = layers_;
  std::size_t k = 0;
  for (DenseLayer& l : layers) {
    std::copy_n(params.begin() + k, l.weights.size(), l.weights.begin());
    k += l.weights.size();
    std::copy_n(params.begin() + k, l.biases.size(), l.biases.begin());
    k += l.biases.size();
  }
  Network out(input_dim_, std::move(layers));
  out.metadata_ = metadata_;
  return out;
}

std::vector<bool> Network::weights_only_mask() const {
  std::vector<bool> mask;
  mask.reserve(param_count_);
  for (const DenseLayer& l : layers_) {
    mask.insert(mask.end(), l.weights.size(), true);
    mask.insert(mask.end(), l.biases.size(), false);
  }
  return mask;
}

bool Network::is_bias_index(std::size_t flat_index) const {
  std::size_t k = 0;
  for (const DenseLayer& l : layers_) {
    if (flat_index < k + l.weights.size()) return false;
    k += l.weights.size();
    if (flat_index < k + l.biases.size()) return true;
    k += l.biases.size();
  }
  throw DimensionError("parameter index out of range");
}

double forward_with_params(const Network& net, std::span<const double> params,
                           std::span<const double> x, ForwardWorkspace& ws) {
  ws.a.assign(x.begin(), x.end());
  std::size_t k = 0;
  for (const DenseLayer& l : net.layers()) {
    ws.b.resize(l.rows);
    const double* w = params.data() + k;
    const double* bias = w + l.rows * l.cols;
    for (std::size_t r = 0; r < l.rows; ++r) {
      double s = bias[r];
      const double* row = w + r * l.cols;
      for (std::size_t c = 0; c < l.cols; ++c) s += row[c] * ws.a[c];
      ws.b[r] = activate(l.activation, s);
    }
    k += l.param_count();
    std::swap(ws.a, ws.b);
  }
  return ws.a[0];
}

double forward(const Network& net, std::span<const double> x) {
  if (x.size() != net.input_dim()) {
    throw DimensionError("input has " + std::to_string(x.size()) + " features, model expects " +
                         std::to_string(net.input_dim()));
  }
  std::vector<double> a(x.begin(), x.end());
  std::vector<double> b;
  for (const DenseLayer& l : net.layers()) {
    b.assign(l.rows, 0.0);
    for (std::size_t r = 0; r < l.rows; ++r) {
      double s = l.biases[r];
      for (std::size_t c = 0; c < l.cols; ++c) s += l.weight(r, c) * a[c];
      b[r] = activate(l.activation, s);
    }
    a.swap(b);
  }
  return a[0];
}

NormOrder norm_from_string(std::string_view s) {
  if (s == "1" || s == "l1") return NormOrder::L1;
  if (s == "2" || s == "l2") return NormOrder::L2;
  if (s == "inf" || s == "linf") return NormOrder::Inf;
  throw DomainError("unknown norm '" + std::string(s) + "' (expected 1, 2 or inf)");
}

double vector_distance(std::span<const double> a, std::span<const double> b, NormOrder p) {
  if (a.size() != b.size()) {
    throw DimensionError("distance between vectors of length " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    switch (p) {
      case NormOrder::L1: acc += d; break;
      case NormOrder::L2: acc += d * d; break;
      case NormOrder::Inf: acc = std::max(acc, d); break;
    }
  }
  return p == NormOrder::L2 ? std::sqrt(acc) : acc;
}

double param_distance(const ParamVector& a, const ParamVector& b, NormOrder p) {
  return vector_distance(a.values, b.values, p);
}

}  // namespace shiftcert
