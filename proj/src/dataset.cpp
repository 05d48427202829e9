#include "shiftcert/dataset.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "shiftcert/error.hpp"
#include "shiftcert/rng.hpp"

namespace shiftcert {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(s.c_str(), &end);
  return end != s.c_str() && *end == '\0' && errno != ERANGE && std::isfinite(out);
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

void Dataset::add(std::span<const double> x, int label) {
  if (x.size() != dim) throw DimensionError("row has " + std::to_string(x.size()) + " features, dataset has " + std::to_string(dim));
  features.insert(features.end(), x.begin(), x.end());
  labels.push_back(label);
}

Dataset parse_dataset_csv(std::string_view text) {
  const std::vector<std::string> lines = lines_of(text);
  std::size_t li = 0;
  while (li < lines.size() && trim(lines[li]).empty()) ++li;
  if (li == lines.size()) throw ParseError("empty dataset", 0, "");
  const std::vector<std::string> header = split_csv_line(lines[li]);
  if (header.size() < 2 || header.back() != "label") {
    throw ParseError("header must list the features followed by a 'label' column", li + 1, "header");
  }
  Dataset data;
  data.feature_names.assign(header.begin(), header.end() - 1);
  data.dim = data.feature_names.size();
  std::vector<double> row(data.dim);
  for (++li; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    const std::vector<std::string> cells = split_csv_line(lines[li]);
    if (cells.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " columns, found " + std::to_string(cells.size()),
                       li + 1, "");
    }
    for (std::size_t j = 0; j < data.dim; ++j) {
      if (!parse_double(cells[j], row[j])) throw ParseError("bad number '" + cells[j] + "'", li + 1, header[j]);
    }
    double label = 0.0;
    if (!parse_double(cells.back(), label) || (label != 0.0 && label != 1.0)) {
      throw ParseError("label must be 0 or 1", li + 1, "label");
    }
    data.add(row, static_cast<int>(label));
  }
  if (data.size() == 0) throw ParseError("dataset has no rows", 0, "");
  return data;
}

Dataset load_dataset_csv(const std::filesystem::path& path) { return parse_dataset_csv(read_file(path)); }

void save_dataset_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.precision(17);
  for (const std::string& name : data.feature_names) out << name << ',';
  out << "label\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.row(i)) out << v << ',';
    out << data.labels[i] << '\n';
  }
}

std::vector<std::vector<double>> parse_input_rows(std::string_view text) {
  std::vector<std::vector<double>> rows;
  const std::vector<std::string> lines = lines_of(text);
  bool seen_content = false;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    const std::vector<std::string> cells = split_csv_line(lines[li]);
    std::vector<double> row(cells.size());
    bool numeric = true;
    for (std::size_t j = 0; j < cells.size() && numeric; ++j) numeric = parse_double(cells[j], row[j]);
    if (!numeric) {
      if (seen_content) throw ParseError("non-numeric value in input row", li + 1, "");
      seen_content = true;  // header
      continue;
    }
    seen_content = true;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("row has " + std::to_string(row.size()) + " values, expected " +
                           std::to_string(rows.front().size()),
                       li + 1, "");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("input contains no numeric row", 0, "");
  return rows;
}

std::vector<std::vector<double>> load_input_rows(const std::filesystem::path& path) {
  return parse_input_rows(read_file(path));
}

std::vector<double> parse_input_vector(std::string_view text) {
  std::vector<std::vector<double>> rows = parse_input_rows(text);
  if (rows.size() != 1) throw ParseError("input must contain a single row, found " + std::to_string(rows.size()), 0, "");
  return std::move(rows.front());
}

std::vector<double> load_input_vector(const std::filesystem::path& path) { return parse_input_vector(read_file(path)); }

std::vector<double> feature_min(const Dataset& data) {
  std::vector<double> m(data.dim, INFINITY);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < data.dim; ++j) m[j] = std::min(m[j], data.row(i)[j]);
  }
  return m;
}

std::vector<double> feature_max(const Dataset& data) {
  std::vector<double> m(data.dim, -INFINITY);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < data.dim; ++j) m[j] = std::max(m[j], data.row(i)[j]);
  }
  return m;
}

Normalization fit_normalization(const Dataset& data) { return {feature_min(data), feature_max(data)}; }

std::vector<double> normalize(std::span<const double> x, const Normalization& norm) {
  if (x.size() != norm.min.size()) throw DimensionError("normalization dimension mismatch");
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double span = norm.max[j] - norm.min[j];
    out[j] = span > 0.0 ? (x[j] - norm.min[j]) / span : 0.0;
  }
  return out;
}

Dataset normalize(const Dataset& data, const Normalization& norm) {
  Dataset out;
  out.feature_names = data.feature_names;
  out.dim = data.dim;
  for (std::size_t i = 0; i < data.size(); ++i) out.add(normalize(data.row(i), norm), data.labels[i]);
  return out;
}

Dataset make_two_clusters(std::size_t n, std::size_t dim, std::uint64_t seed, double separation) {
  if (n < 2 || dim == 0) throw DomainError("two-cluster generator needs n >= 2 and dim >= 1");
  Rng rng(seed, 0xc1u);
  auto normal = [&] {
    const double u1 = 1.0 - rng.uniform01();
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  };
  Dataset raw;
  raw.dim = dim;
  for (std::size_t j = 0; j < dim; ++j) raw.feature_names.push_back("f" + std::to_string(j));
  std::vector<double> x(dim);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    const double center = label == 1 ? separation / std::sqrt(static_cast<double>(dim)) : 0.0;
    for (double& v : x) v = center + normal();
    raw.add(x, label);
  }
  return normalize(raw, fit_normalization(raw));
}

Dataset shuffled(const Dataset& data, std::uint64_t seed) {
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed, 0x5u);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  Dataset out;
  out.feature_names = data.feature_names;
  out.dim = data.dim;
  for (std::size_t i : order) out.add(data.row(i), data.labels[i]);
  return out;
}

std::pair<Dataset, Dataset> split_halves(const Dataset& data, std::uint64_t seed) {
  const Dataset s = shuffled(data, seed);
  const std::size_t half = (s.size() + 1) / 2;
  Dataset a, b;
  a.feature_names = b.feature_names = s.feature_names;
  a.dim = b.dim = s.dim;
  for (std::size_t i = 0; i < s.size(); ++i) (i < half ? a : b).add(s.row(i), s.labels[i]);
  return {std::move(a), std::move(b)};
}

Dataset concat(const Dataset& a, const Dataset& b) {
  if (a.dim != b.dim) throw DimensionError("cannot concatenate datasets of different dimension");
  Dataset out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out.add(b.row(i), b.labels[i]);
  return out;
}

}  // namespace shiftcert
