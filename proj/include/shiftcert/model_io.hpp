#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "shiftcert/model.hpp"

namespace shiftcert {

inline constexpr std::string_view kModelFormat = "shiftcert-model";
inline constexpr int kModelFormatVersion = 1;

// JSON model documents; see docs/formats.md. Numbers are written with
// round-trip precision so save -> load reproduces every double bit for bit.
// Parameters may also be given as strings ("0x1.8p-1", "0.75"), parsed with
// strtod.
nlohmann::json model_to_json(const Network& net);
Network model_from_json(const nlohmann::json& doc);
Network parse_model(std::string_view text);
std::string serialize_model(const Network& net);

Network load_model(const std::filesystem::path& path);
void save_model(const Network& net, const std::filesystem::path& path);

}  // namespace shiftcert
