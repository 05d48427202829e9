#include "shiftcert/shift.hpp"

#include <algorithm>
#include <cmath>

#include "shiftcert/error.hpp"

namespace shiftcert {

ShiftSpec ShiftSpec::all(const Network& net, double delta) {
  return ShiftSpec{delta, std::vector<bool>(net.param_count(), true)};
}

ShiftSpec ShiftSpec::weights_only(const Network& net, double delta) {
  return ShiftSpec{delta, net.weights_only_mask()};
}

ShiftSpec ShiftSpec::for_model(const Network& net, double delta) {
  if (net.metadata().perturbation_mask) return ShiftSpec{delta, *net.metadata().perturbation_mask};
  return all(net, delta);
}

std::size_t ShiftSpec::perturbed_count() const {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
}

void ShiftSpec::validate(std::size_t param_count) const {
  if (!std::isfinite(delta) || delta < 0.0) throw DomainError("shift delta must be finite and >= 0");
  if (mask.size() != param_count) {
    throw DimensionError("shift mask has " + std::to_string(mask.size()) + " entries, network has " +
                         std::to_string(param_count) + " parameters");
  }
}

}  // namespace shiftcert
