#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "shiftcert/report.hpp"

namespace shiftcert {

// Canned desk-scale experiments with acceptance bounds from a versioned JSON
// config (config/reproduce.json in the source tree).
inline constexpr int kReproduceConfigVersion = 1;

const std::vector<std::string>& experiment_ids();

nlohmann::json load_reproduce_config(const std::filesystem::path& path);
// Path used when none is given: $SHIFTCERT_REPRODUCE_CONFIG, else the copy in
// the source tree the library was built from.
std::filesystem::path default_reproduce_config_path();

struct ReproduceOptions {
  std::uint64_t seed = 42;
  unsigned threads = 1;
};

struct ExperimentResult {
  std::string id;
  bool pass = false;
  Report report{"reproduce"};
};

// Throws DomainError for an unknown id.
ExperimentResult reproduce(std::string_view id, const nlohmann::json& config, const ReproduceOptions& opts = {});

}  // namespace shiftcert
