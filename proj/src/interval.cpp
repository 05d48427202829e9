#include "shiftcert/interval.hpp"

#include <cmath>

#include "shiftcert/error.hpp"

namespace shiftcert {

Interval Interval::make(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("interval bounds must be finite");
  if (lo > hi) throw DomainError("interval lower bound exceeds upper bound");
  return {lo, hi};
}

Interval activate(Activation a, Interval v) {
  return {activate(a, v.lo), activate(a, v.hi)};
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Robust: return "robust";
    case Verdict::NonRobust: return "non-robust";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

Verdict classify(const Interval& output) {
  if (output.lo >= kDecisionThreshold) return Verdict::Robust;
  if (output.hi < kDecisionThreshold) return Verdict::NonRobust;
  return Verdict::Unknown;
}

IntervalNetwork IntervalNetwork::from_box(const Network& topology, std::span<const Interval> box) {
  if (box.size() != topology.param_count()) {
    throw DimensionError("interval box has " + std::to_string(box.size()) + " entries, network has " +
                         std::to_string(topology.param_count()));
  }
  IntervalNetwork inn;
  inn.input_dim_ = topology.input_dim();
  std::size_t k = 0;
  for (const DenseLayer& l : topology.layers()) {
    IntervalLayer il;
    il.rows = l.rows;
    il.cols = l.cols;
    il.activation = l.activation;
    il.weights.assign(box.begin() + k, box.begin() + k + l.weights.size());
    k += l.weights.size();
    il.biases.assign(box.begin() + k, box.begin() + k + l.biases.size());
    k += l.biases.size();
    inn.layers_.push_back(std::move(il));
  }
  return inn;
}

std::vector<Interval> IntervalNetwork::box() const {
  std::vector<Interval> out;
  for (const IntervalLayer& l : layers_) {
    out.insert(out.end(), l.weights.begin(), l.weights.end());
    out.insert(out.end(), l.biases.begin(), l.biases.end());
  }
  return out;
}

Network IntervalNetwork::center(const Network& topology) const {
  std::vector<double> params;
  for (const Interval& iv : box()) params.push_back(iv.mid());
  return topology.with_params(params);
}

std::vector<Interval> shift_box(const Network& net, const ShiftSpec& shift) {
  shift.validate(net.param_count());
  const ParamVector theta = net.flatten();
  std::vector<Interval> box(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    box[i] = shift.mask[i] ? Interval{theta[i] - shift.delta, theta[i] + shift.delta}
                           : Interval::point(theta[i]);
  }
  return box;
}

IntervalNetwork abstract(const Network& net, const ShiftSpec& shift) {
  return IntervalNetwork::from_box(net, shift_box(net, shift));
}

namespace {

template <typename WeightAt, typename BiasAt>
void propagate_layer(std::size_t rows, std::size_t cols, Activation act, WeightAt weight, BiasAt bias,
                     const std::vector<Interval>& in, std::vector<Interval>& out) {
  out.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    Interval s = bias(r);
    for (std::size_t c = 0; c < cols; ++c) s = s + weight(r, c) * in[c];
    out[r] = activate(act, s);
  }
}

void check_input(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw DimensionError("input has " + std::to_string(got) + " features, model expects " +
                         std::to_string(expected));
  }
}

}  // namespace

Interval propagate(const IntervalNetwork& inn, std::span<const double> x) {
  check_input(inn.input_dim(), x.size());
  std::vector<Interval> a, b;
  for (double v : x) a.push_back(Interval::point(v));
  for (const IntervalLayer& l : inn.layers()) {
    propagate_layer(
        l.rows, l.cols, l.activation, [&](std::size_t r, std::size_t c) { return l.weights[r * l.cols + c]; },
        [&](std::size_t r) { return l.biases[r]; }, a, b);
    a.swap(b);
  }
  return a[0];
}

Interval propagate_box(const Network& topology, std::span<const Interval> box, std::span<const double> x,
                       IntervalWorkspace& ws) {
  check_input(topology.input_dim(), x.size());
  ws.a.clear();
  for (double v : x) ws.a.push_back(Interval::point(v));
  std::size_t k = 0;
  for (const DenseLayer& l : topology.layers()) {
    const Interval* w = box.data() + k;
    const Interval* bias = w + l.rows * l.cols;
    propagate_layer(
        l.rows, l.cols, l.activation, [&](std::size_t r, std::size_t c) { return w[r * l.cols + c]; },
        [&](std::size_t r) { return bias[r]; }, ws.a, ws.b);
    k += l.param_count();
    std::swap(ws.a, ws.b);
  }
  return ws.a[0];
}

Verdict verdict(const IntervalNetwork& inn, std::span<const double> x) { return classify(propagate(inn, x)); }

}  // namespace shiftcert
