#include "shiftcert/model_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "shiftcert/error.hpp"

namespace shiftcert {
namespace {

using nlohmann::json;

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ParseError(message, 0, field);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + key, "missing field");
  return *it;
}

std::size_t read_count(const json& v, const std::string& field) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    fail(field, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

double read_real(const json& v, const std::string& field) {
  double out = 0.0;
  if (v.is_number()) {
    out = v.get<double>();
  } else if (v.is_string()) {
    const std::string s = v.get<std::string>();
    char* end = nullptr;
    errno = 0;
    out = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE) fail(field, "bad number '" + s + "'");
  } else {
    fail(field, "expected a number");
  }
  if (!std::isfinite(out)) fail(field, "non-finite value");
  return out;
}

std::vector<double> read_reals(const json& v, const std::string& field, std::size_t expected) {
  if (!v.is_array()) fail(field, "expected an array");
  if (v.size() != expected) {
    fail(field, "expected " + std::to_string(expected) + " values, found " + std::to_string(v.size()));
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(read_real(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<double> read_real_list(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array");
  return read_reals(v, field, v.size());
}

void read_metadata(const json& meta, Network& net) {
  if (!meta.is_object()) fail("metadata", "expected an object");
  ModelMetadata& md = net.metadata();
  md.name = meta.value("name", "");
  md.dataset = meta.value("dataset", "");
  if (auto it = meta.find("feature_names"); it != meta.end()) {
    if (!it->is_array()) fail("metadata.feature_names", "expected an array of strings");
    for (const json& n : *it) md.feature_names.push_back(n.get<std::string>());
  }
  if (auto it = meta.find("normalization"); it != meta.end()) {
    Normalization norm;
    norm.min = read_real_list(require(*it, "min", "metadata.normalization."), "metadata.normalization.min");
    norm.max = read_real_list(require(*it, "max", "metadata.normalization."), "metadata.normalization.max");
    if (norm.min.size() != net.input_dim() || norm.max.size() != net.input_dim()) {
      fail("metadata.normalization", "length must equal input_dim");
    }
    md.normalization = std::move(norm);
  }
  if (auto it = meta.find("perturb"); it != meta.end()) {
    if (it->is_string()) {
      const std::string tag = it->get<std::string>();
      if (tag == "weights") {
        md.perturbation_mask = net.weights_only_mask();
      } else if (tag != "all") {
        fail("metadata.perturb", "expected \"all\", \"weights\" or a boolean array");
      }
    } else if (it->is_array()) {
      if (it->size() != net.param_count()) fail("metadata.perturb", "mask length must equal parameter count");
      std::vector<bool> mask;
      for (const json& b : *it) {
        if (!b.is_boolean()) fail("metadata.perturb", "mask entries must be booleans");
        mask.push_back(b.get<bool>());
      }
      md.perturbation_mask = std::move(mask);
    } else {
      fail("metadata.perturb", "expected \"all\", \"weights\" or a boolean array");
    }
  }
  if (auto it = meta.find("extra"); it != meta.end()) md.extra = *it;
}

}  // namespace

json model_to_json(const Network& net) {
  json doc;
  doc["format"] = kModelFormat;
  doc["version"] = kModelFormatVersion;
  doc["input_dim"] = net.input_dim();
  json layers = json::array();
  for (const DenseLayer& l : net.layers()) {
    layers.push_back({{"rows", l.rows},
                      {"cols", l.cols},
                      {"activation", to_string(l.activation)},
                      {"weights", l.weights},
                      {"biases", l.biases}});
  }
  doc["layers"] = std::move(layers);

  const ModelMetadata& md = net.metadata();
  json meta = json::object();
  if (!md.name.empty()) meta["name"] = md.name;
  if (!md.dataset.empty()) meta["dataset"] = md.dataset;
  if (!md.feature_names.empty()) meta["feature_names"] = md.feature_names;
  if (md.normalization) meta["normalization"] = {{"min", md.normalization->min}, {"max", md.normalization->max}};
  if (md.perturbation_mask) {
    if (*md.perturbation_mask == net.weights_only_mask()) {
      meta["perturb"] = "weights";
    } else {
      meta["perturb"] = *md.perturbation_mask;
    }
  }
  if (!md.extra.empty()) meta["extra"] = md.extra;
  if (!meta.empty()) doc["metadata"] = std::move(meta);
  return doc;
}

Network model_from_json(const json& doc) {
  if (!doc.is_object()) fail("", "model document must be a JSON object");
  if (auto it = doc.find("format"); it != doc.end() && *it != kModelFormat) {
    fail("format", "unsupported format tag");
  }
  if (auto it = doc.find("version"); it != doc.end() && *it != kModelFormatVersion) {
    fail("version", "unsupported version");
  }
  const std::size_t input_dim = read_count(require(doc, "input_dim", ""), "input_dim");
  if (input_dim == 0) fail("input_dim", "must be positive");
  const json& layers_doc = require(doc, "layers", "");
  if (!layers_doc.is_array()) fail("layers", "expected an array");
  if (layers_doc.empty()) fail("layers", "at least one layer is required");

  std::vector<DenseLayer> layers;
  std::size_t in = input_dim;
  for (std::size_t i = 0; i < layers_doc.size(); ++i) {
    const json& ld = layers_doc[i];
    const std::string path = "layers[" + std::to_string(i) + "].";
    if (!ld.is_object()) fail("layers[" + std::to_string(i) + "]", "expected an object");
    DenseLayer l;
    l.rows = read_count(require(ld, "rows", path), path + "rows");
    l.cols = read_count(require(ld, "cols", path), path + "cols");
    if (l.rows == 0) fail(path + "rows", "must be positive");
    if (l.cols != in) {
      fail(path + "cols", "is " + std::to_string(l.cols) + " but previous layer outputs " + std::to_string(in));
    }
    try {
      l.activation = activation_from_string(require(ld, "activation", path).get<std::string>());
    } catch (const DomainError& e) {
      fail(path + "activation", e.what());
    } catch (const json::exception&) {
      fail(path + "activation", "expected a string");
    }
    l.weights = read_reals(require(ld, "weights", path), path + "weights", l.rows * l.cols);
    if (auto it = ld.find("biases"); it != ld.end()) {
      l.biases = read_reals(*it, path + "biases", l.rows);
    } else {
      l.biases.assign(l.rows, 0.0);
    }
    in = l.rows;
    layers.push_back(std::move(l));
  }
  if (in != 1) fail("layers[" + std::to_string(layers_doc.size() - 1) + "].rows", "final layer must have one output");

  Network net(input_dim, std::move(layers));
  if (auto it = doc.find("metadata"); it != doc.end()) read_metadata(*it, net);
  return net;
}

Network parse_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1), "");
  }
  return model_from_json(doc);
}

std::string serialize_model(const Network& net) { return model_to_json(net).dump(2) + "\n"; }

Network load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

void save_model(const Network& net, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write model file '" + path.string() + "'");
  out << serialize_model(net);
}

}  // namespace shiftcert
