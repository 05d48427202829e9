#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shiftcert/model.hpp"

namespace shiftcert {

// Numeric feature matrix (row-major) with binary labels.
struct Dataset {
  std::vector<std::string> feature_names;
  std::size_t dim = 0;
  std::vector<double> features;
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
  std::span<const double> row(std::size_t i) const { return {features.data() + i * dim, dim}; }
  void add(std::span<const double> x, int label);
};

// CSV with a header row: feature names, then a final `label` column (0/1).
Dataset parse_dataset_csv(std::string_view text);
Dataset load_dataset_csv(const std::filesystem::path& path);
void save_dataset_csv(const Dataset& data, const std::filesystem::path& path);

// Numeric rows of equal length, optional header line.
std::vector<std::vector<double>> parse_input_rows(std::string_view text);
std::vector<std::vector<double>> load_input_rows(const std::filesystem::path& path);
// Same, but exactly one row.
std::vector<double> parse_input_vector(std::string_view text);
std::vector<double> load_input_vector(const std::filesystem::path& path);

// Per-feature min/max; constant features map to 0.
Normalization fit_normalization(const Dataset& data);
Dataset normalize(const Dataset& data, const Normalization& norm);
std::vector<double> normalize(std::span<const double> x, const Normalization& norm);

std::vector<double> feature_min(const Dataset& data);
std::vector<double> feature_max(const Dataset& data);

// Two Gaussian blobs in `dim` dimensions, label 1 for the second blob,
// rescaled into [0, 1]^dim.
Dataset make_two_clusters(std::size_t n, std::size_t dim, std::uint64_t seed, double separation = 3.0);

Dataset shuffled(const Dataset& data, std::uint64_t seed);
// Shuffle, then split into two halves (the first gets the extra row).
std::pair<Dataset, Dataset> split_halves(const Dataset& data, std::uint64_t seed);
Dataset concat(const Dataset& a, const Dataset& b);

}  // namespace shiftcert
