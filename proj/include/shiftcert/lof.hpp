#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shiftcert/dataset.hpp"

namespace shiftcert {

inline constexpr std::size_t kDefaultLofNeighbors = 20;
inline constexpr double kDefaultLofThreshold = 1.5;

// Local outlier factor over a fixed reference set, Euclidean distance.
// Neighborhoods hold exactly k points (ties broken by index); a reference
// member never counts itself as a neighbor, but its duplicates do.
//
// Zero reachability distances give an infinite local density. Density ratios
// inf/inf count as 1, so a member of an all-identical set scores exactly 1.
class LocalOutlierFactor {
 public:
  LocalOutlierFactor(std::vector<double> points, std::size_t dim, std::size_t k = kDefaultLofNeighbors);
  explicit LocalOutlierFactor(const Dataset& data, std::size_t k = kDefaultLofNeighbors);

  std::size_t size() const { return n_; }
  std::size_t k() const { return k_; }

  // Score of a query point (not assumed to be in the reference set).
  double score(std::span<const double> x) const;
  // Score of reference point i, excluding itself from its neighborhood.
  double member_score(std::size_t i) const;

 private:
  std::span<const double> point(std::size_t i) const { return {points_.data() + i * dim_, dim_}; }
  // Indices of the k nearest reference points to x, skipping `skip`.
  std::vector<std::size_t> neighbors(std::span<const double> x, std::size_t skip) const;
  double score_from(std::span<const double> x, std::size_t skip) const;

  std::vector<double> points_;
  std::size_t dim_;
  std::size_t n_;
  std::size_t k_;
  std::vector<double> k_distance_;
  std::vector<double> lrd_;
};

double lof_score(std::span<const double> x, const Dataset& reference, std::size_t k = kDefaultLofNeighbors);
// +1 inlier (score <= threshold), -1 outlier.
int lof_label(double score, double threshold = kDefaultLofThreshold);

}  // namespace shiftcert
