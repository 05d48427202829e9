#include <doctest.h>

#include "shiftcert/evaluation.hpp"
#include "shiftcert/examples.hpp"
#include "shiftcert/sampling.hpp"

using namespace shiftcert;

namespace {

Dataset separable(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Dataset d;
  d.dim = 2;
  d.feature_names = {"a", "b"};
  while (d.size() < n) {
    const std::vector<double> x{rng.uniform01(), rng.uniform01()};
    const double s = x[0] + x[1] - 1.0;
    if (std::abs(s) < 0.1) continue;
    d.add(x, s > 0 ? 1 : 0);
  }
  return d;
}

}  // namespace

TEST_CASE("training fits a separable set") {
  TrainConfig cfg;
  cfg.epochs = 100;
  const TrainResult r = train(separable(200, 3), cfg);
  CHECK(r.accuracy >= 0.95);
}

TEST_CASE("zero epochs keeps the initialization") {
  TrainConfig cfg;
  cfg.epochs = 0;
  const Dataset d = separable(50, 1);
  CHECK(train(d, cfg).net.flatten() == init_network(2, cfg).flatten());
}

TEST_CASE("training is deterministic") {
  TrainConfig cfg;
  cfg.epochs = 5;
  const Dataset d = separable(60, 2);
  CHECK(train(d, cfg).net.flatten() == train(d, cfg).net.flatten());
}

TEST_CASE("validity metrics") {
  const Network net = fig2_network();
  CHECK(vm_metrics({fig2_counterfactual(), fig2_factual()}, net, net).first ==
        vm_metrics({fig2_counterfactual(), fig2_factual()}, net, net).second);
  ParamVector p = net.flatten();
  p[7] = -2.0;  // w6: output at [1, 0.8] drops to 1 - 2 * 0.48 < 0.5
  const Network shifted = net.with_params(p.values);
  const auto [vm1, vm2] = vm_metrics({fig2_counterfactual()}, net, shifted);
  CHECK(vm1 == 100.0);
  CHECK(vm2 == 0.0);
  CHECK(delta_e(net, shifted) == doctest::Approx(1.0));
}

TEST_CASE("vm2 under small uniform noise matches a direct re-evaluation") {
  const Dataset d = make_two_clusters(200, 2, 5);
  TrainConfig cfg;
  cfg.epochs = 30;
  cfg.hidden = {8};
  const Network base = train(d, cfg).net;
  std::vector<std::vector<double>> cfxs;
  Rng rng(8);
  while (cfxs.size() < 50) {
    const std::vector<double> x{rng.uniform01(), rng.uniform01()};
    if (is_positive(forward(base, x))) cfxs.push_back(x);
  }
  ParamVector theta = base.flatten();
  const ParamVector noisy = sample_realization(theta, ShiftSpec::all(base, 0.01), rng);
  const Network shifted = base.with_params(noisy.values);
  std::size_t still = 0;
  for (const auto& c : cfxs) still += is_positive(forward(shifted, c)) ? 1 : 0;
  const auto [vm1, vm2] = vm_metrics(cfxs, base, shifted);
  CHECK(vm1 == 100.0);
  CHECK(vm2 == doctest::Approx(100.0 * still / 50.0));
}

TEST_CASE("noms comparison") {
  const Network net = fig2_network();
  const std::vector<NomsRow> zero = noms_compare(net, {fig2_counterfactual()}, {0.0}, {1000}, 1);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].avg_diff == 0.0);
  CHECK(zero[0].rejection_pct == 0.0);

  // Second hidden unit sits near its kink, so the mean drifts by about delta / 4.
  std::vector<std::vector<double>> cfxs;
  for (int i = 0; i < 20; ++i) cfxs.push_back({1.0, 0.01 * i});
  NomsOptions opts;
  opts.two_sided = true;
  const std::vector<NomsRow> rows = noms_compare(net, cfxs, {0.05, 0.1, 0.2, 0.3}, {200}, 3, opts);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].rejection_pct >= rows[i - 1].rejection_pct);
    CHECK(rows[i].avg_diff > rows[i - 1].avg_diff);
  }
}
