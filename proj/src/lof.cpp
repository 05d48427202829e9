#include "shiftcert/lof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "shiftcert/error.hpp"

namespace shiftcert {
namespace {

double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

double density(double mean_reach) {
  return mean_reach > 0.0 ? 1.0 / mean_reach : std::numeric_limits<double>::infinity();
}

double density_ratio(double num, double den) {
  if (std::isinf(den)) return std::isinf(num) ? 1.0 : 0.0;
  return num / den;
}

}  // namespace

LocalOutlierFactor::LocalOutlierFactor(std::vector<double> points, std::size_t dim, std::size_t k)
    : points_(std::move(points)), dim_(dim), n_(dim == 0 ? 0 : points_.size() / dim), k_(k) {
  if (dim == 0 || points_.size() % dim != 0) throw DimensionError("LOF reference matrix has a ragged shape");
  if (k < 2) throw DomainError("LOF needs k >= 2");
  if (n_ <= k) throw DomainError("LOF needs more than k = " + std::to_string(k) + " reference points");

  std::vector<std::vector<std::size_t>> nbrs(n_);
  k_distance_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    nbrs[i] = neighbors(point(i), i);
    k_distance_[i] = euclidean(point(i), point(nbrs[i].back()));
  }
  lrd_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double reach = 0.0;
    for (std::size_t j : nbrs[i]) reach += std::max(k_distance_[j], euclidean(point(i), point(j)));
    lrd_[i] = density(reach / static_cast<double>(k_));
  }
}

LocalOutlierFactor::LocalOutlierFactor(const Dataset& data, std::size_t k)
    : LocalOutlierFactor(data.features, data.dim, k) {}

std::vector<std::size_t> LocalOutlierFactor::neighbors(std::span<const double> x, std::size_t skip) const {
  std::vector<std::pair<double, std::size_t>> d;
  d.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (i != skip) d.emplace_back(euclidean(x, point(i)), i);
  }
  std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k_), d.end());
  std::vector<std::size_t> out(k_);
  for (std::size_t i = 0; i < k_; ++i) out[i] = d[i].second;
  return out;
}

double LocalOutlierFactor::score_from(std::span<const double> x, std::size_t skip) const {
  const std::vector<std::size_t> nbrs = neighbors(x, skip);
  double reach = 0.0;
  for (std::size_t j : nbrs) reach += std::max(k_distance_[j], euclidean(x, point(j)));
  const double own = density(reach / static_cast<double>(k_));
  double ratio = 0.0;
  for (std::size_t j : nbrs) ratio += density_ratio(lrd_[j], own);
  return ratio / static_cast<double>(k_);
}

double LocalOutlierFactor::score(std::span<const double> x) const {
  if (x.size() != dim_) throw DimensionError("LOF query has the wrong dimension");
  return score_from(x, n_);
}

double LocalOutlierFactor::member_score(std::size_t i) const {
  if (i >= n_) throw DomainError("LOF member index out of range");
  return score_from(point(i), i);
}

double lof_score(std::span<const double> x, const Dataset& reference, std::size_t k) {
  return LocalOutlierFactor(reference, k).score(x);
}

int lof_label(double score, double threshold) { return score <= threshold ? 1 : -1; }

}  // namespace shiftcert
