#include "shiftcert/report.hpp"

#include <sstream>
#include <utility>
#include <vector>

#include "shiftcert/error.hpp"

namespace shiftcert {
namespace {

using Rows = std::vector<std::pair<std::string, const nlohmann::ordered_json*>>;

void flatten(const nlohmann::ordered_json& v, const std::string& prefix, Rows& out) {
  if (v.is_object() && !v.empty()) {
    for (const auto& [k, child] : v.items()) flatten(child, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  out.emplace_back(prefix, &v);
}

}  // namespace

ReportFormat report_format_from_string(std::string_view s) {
  if (s == "human") return ReportFormat::Human;
  if (s == "structured") return ReportFormat::Structured;
  throw DomainError("unknown report format '" + std::string(s) + "' (expected human or structured)");
}

Report::Report(std::string command) : command_(std::move(command)), data_(nlohmann::ordered_json::object()) {
  data_["command"] = command_;
}

void Report::write(std::ostream& out, ReportFormat format) const {
  Rows rows;
  flatten(data_, "", rows);
  if (format == ReportFormat::Human) {
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    for (const auto& [k, v] : rows) {
      out << k << std::string(width - k.size() + 2, ' ') << (v->is_string() ? v->get<std::string>() : v->dump())
          << '\n';
    }
    return;
  }
  for (const auto& [k, v] : rows) out << k << '=' << v->dump() << '\n';
  out << "#json " << data_.dump() << '\n';
}

std::string Report::render(ReportFormat format) const {
  std::ostringstream out;
  write(out, format);
  return out.str();
}

}  // namespace shiftcert
