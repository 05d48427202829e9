#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "shiftcert/error.hpp"
#include "shiftcert/examples.hpp"
#include "shiftcert/model_io.hpp"

using namespace shiftcert;

namespace {

std::filesystem::path source_path(const char* rel) { return std::filesystem::path(SHIFTCERT_SOURCE_DIR) / rel; }

}  // namespace

TEST_CASE("fig2 forward values") {
  const Network net = fig2_network();
  CHECK(forward(net, std::vector<double>{1.0, 0.8}) == doctest::Approx(0.52).epsilon(1e-12));
  CHECK(forward(net, std::vector<double>{0.0, 0.0}) == 0.0);
  // 1*ReLU(0.9) - 1*ReLU(0.54)
  CHECK(forward(net, std::vector<double>{0.9, 0.9}) == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(is_positive(forward(net, fig2_counterfactual())));
  CHECK_FALSE(is_positive(forward(net, fig2_factual())));
}

TEST_CASE("threshold is inclusive") {
  CHECK(is_positive(0.5));
  CHECK_FALSE(is_positive(std::nextafter(0.5, 0.0)));
}

TEST_CASE("flatten and with_params round trip") {
  const Network net = fig5_network();
  const ParamVector p = net.flatten();
  REQUIRE(p.size() == net.param_count());
  CHECK(p.values == std::vector<double>{-0.365, -0.875, 0.0, 0.0, -1.025, 0.81, 0.0});
  const Network again = net.with_params(p.values);
  CHECK(again.flatten() == p);
  CHECK(forward(again, fig5_input()) == forward(net, fig5_input()));
  CHECK_THROWS_AS(net.with_params(std::vector<double>(3, 0.0)), DimensionError);
}

TEST_CASE("topology invariants") {
  DenseLayer a{2, 1, {1.0, 1.0}, {0.0, 0.0}, Activation::Relu};
  DenseLayer wrong_in{1, 3, {1.0, 1.0, 1.0}, {0.0}, Activation::Identity};
  DenseLayer two_out{2, 2, {1.0, 0.0, 0.0, 1.0}, {0.0, 0.0}, Activation::Identity};
  CHECK_THROWS_AS(Network(1, {a, wrong_in}), DimensionError);
  CHECK_THROWS_AS(Network(1, {a, two_out}), DimensionError);
  CHECK_THROWS(Network(1, {}));
  DenseLayer nan_layer{1, 1, {NAN}, {0.0}, Activation::Identity};
  CHECK_THROWS(Network(1, {nan_layer}));
}

TEST_CASE("input dimension is checked") {
  CHECK_THROWS_AS(forward(fig2_network(), std::vector<double>{1.0}), DimensionError);
}

TEST_CASE("weights-only mask") {
  const Network net = fig2_network();
  const std::vector<bool> m = net.weights_only_mask();
  REQUIRE(m.size() == 9);
  CHECK(std::count(m.begin(), m.end(), true) == 6);
  CHECK(net.is_bias_index(4));
  CHECK_FALSE(net.is_bias_index(0));
}

TEST_CASE("distances") {
  const std::vector<double> a{1.0, 0.0}, b{0.9, 0.1};
  CHECK(vector_distance(a, a, NormOrder::Inf) == 0.0);
  CHECK(vector_distance(a, b, NormOrder::Inf) == doctest::Approx(0.1));
  CHECK(vector_distance(a, b, NormOrder::L1) == doctest::Approx(0.2));
  CHECK(vector_distance(a, b, NormOrder::L2) == doctest::Approx(std::sqrt(0.02)));
  CHECK(norm_from_string("inf") == NormOrder::Inf);
  CHECK_THROWS(norm_from_string("l7"));
}

TEST_CASE("model documents round trip") {
  const Network net = fig2_network();
  const Network back = parse_model(serialize_model(net));
  CHECK(back.flatten() == net.flatten());
  CHECK(forward(back, fig2_counterfactual()) == doctest::Approx(0.52).epsilon(1e-12));
  CHECK(back.metadata().perturbation_mask == net.metadata().perturbation_mask);

  const std::filesystem::path tmp = std::filesystem::temp_directory_path() / "shiftcert_model_rt.json";
  save_model(net, tmp);
  CHECK(load_model(tmp).flatten() == net.flatten());
  std::filesystem::remove(tmp);
}

TEST_CASE("malformed model documents") {
  CHECK_THROWS_AS(parse_model("{"), Error);
  CHECK_THROWS_AS(parse_model(R"({"format":"shiftcert-model","version":1,"input_dim":1,"layers":[]})"), Error);
  CHECK_THROWS_AS(
      parse_model(R"({"format":"shiftcert-model","version":1,"input_dim":1,"layers":[
        {"rows":1,"cols":1,"weights":["nan"],"biases":[0],"activation":"identity"}]})"),
      Error);
  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), Error);
}

TEST_CASE("bundled model files match the built-in networks") {
  CHECK(load_model(source_path("models/fig2.json")).flatten() == fig2_network().flatten());
  CHECK(load_model(source_path("models/fig5.json")).flatten() == fig5_network().flatten());
  CHECK(load_model(source_path("models/one_weight.json")).flatten() == one_weight_network().flatten());
}
