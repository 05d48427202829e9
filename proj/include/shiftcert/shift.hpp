#pragma once

#include <vector>

#include "shiftcert/model.hpp"

namespace shiftcert {

// Box of plausible model shifts: every masked parameter may move by at most
// `delta` (infinity-norm ball around the trained parameters).
struct ShiftSpec {
  double delta = 0.0;
  std::vector<bool> mask;  // true = perturbed

  static ShiftSpec all(const Network& net, double delta);
  static ShiftSpec weights_only(const Network& net, double delta);
  // Uses the mask stored in the model metadata, or all parameters.
  static ShiftSpec for_model(const Network& net, double delta);

  ShiftSpec with_delta(double d) const { return ShiftSpec{d, mask}; }
  std::size_t perturbed_count() const;

  // Throws DomainError/DimensionError when delta is negative or non-finite, or
  // the mask length differs from `param_count`.
  void validate(std::size_t param_count) const;
};

}  // namespace shiftcert
