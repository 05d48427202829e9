#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

namespace shiftcert {

enum class ReportFormat { Human, Structured };

ReportFormat report_format_from_string(std::string_view s);

// Ordered key/value report. Human output is an aligned two-column listing;
// structured output is one `key=value` line per entry (values JSON-encoded,
// nested objects flattened with dots) followed by a `#json ` line holding the
// whole report as a single JSON object. See docs/formats.md.
class Report {
 public:
  explicit Report(std::string command);

  const std::string& command() const { return command_; }
  nlohmann::ordered_json& data() { return data_; }
  const nlohmann::ordered_json& data() const { return data_; }

  template <typename T>
  Report& set(const std::string& key, T&& value) {
    data_[key] = std::forward<T>(value);
    return *this;
  }

  void write(std::ostream& out, ReportFormat format) const;
  std::string render(ReportFormat format) const;

 private:
  std::string command_;
  nlohmann::ordered_json data_;
};

}  // namespace shiftcert
