#pragma once

#include <algorithm>
#include <span>
#include <string_view>
#include <vector>

#include "shiftcert/model.hpp"
#include "shiftcert/shift.hpp"

namespace shiftcert {

// Closed interval [lo, hi]. Plain double arithmetic, no outward rounding, so
// results can be off by an ulp; callers compare with a 1e-9 slack where it
// matters.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double v) { return {v, v}; }
  // Validating constructor: finite bounds with lo <= hi.
  static Interval make(double lo, double hi);

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool operator==(const Interval&) const = default;
};

inline Interval operator+(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }

inline Interval operator*(Interval a, Interval b) {
  const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

// Monotone activations map endpoints.
Interval activate(Activation a, Interval v);

enum class Verdict { Robust, NonRobust, Unknown };

std::string_view to_string(Verdict v);
Verdict classify(const Interval& output);

struct IntervalLayer {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Interval> weights;
  std::vector<Interval> biases;
  Activation activation = Activation::Relu;
};

// Network whose parameters are intervals; same topology as its source.
class IntervalNetwork {
 public:
  // `box` holds one interval per parameter in canonical order.
  static IntervalNetwork from_box(const Network& topology, std::span<const Interval> box);

  std::size_t input_dim() const { return input_dim_; }
  const std::vector<IntervalLayer>& layers() const { return layers_; }
  std::vector<Interval> box() const;

  // The realization with every parameter at its interval midpoint.
  Network center(const Network& topology) const;

 private:
  std::size_t input_dim_ = 0;
  std::vector<IntervalLayer> layers_;
};

// Interval box of a shift: masked parameters get [v - delta, v + delta].
std::vector<Interval> shift_box(const Network& net, const ShiftSpec& shift);

IntervalNetwork abstract(const Network& net, const ShiftSpec& shift);

// Naive interval propagation of a point input.
Interval propagate(const IntervalNetwork& inn, std::span<const double> x);

// Same as `propagate(IntervalNetwork::from_box(net, box), x)` without building
// the intermediate network. Scratch vectors are reused across calls.
struct IntervalWorkspace {
  std::vector<Interval> a;
  std::vector<Interval> b;
};
Interval propagate_box(const Network& topology, std::span<const Interval> box,
                       std::span<const double> x, IntervalWorkspace& ws);

Verdict verdict(const IntervalNetwork& inn, std::span<const double> x);

}  // namespace shiftcert
