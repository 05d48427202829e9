#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "shiftcert/examples.hpp"
#include "shiftcert/rng.hpp"
#include "shiftcert/sampling.hpp"
#include "shiftcert/stats.hpp"

using namespace shiftcert;

TEST_CASE("rng streams are reproducible and distinct") {
  Rng a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  const std::uint64_t va = a.next_u64();
  CHECK(va == b.next_u64());
  CHECK(va != c.next_u64());
  CHECK(va != d.next_u64());
  Rng u(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform01();
    CHECK((v >= 0.0 && v < 1.0));
    CHECK(u.below(7) < 7);
  }
}

TEST_CASE("zero delta returns theta") {
  const Network net = fig2_network();
  Rng rng(1);
  CHECK(sample_realization(net.flatten(), ShiftSpec::for_model(net, 0.0), rng) == net.flatten());
}

TEST_CASE("uniform coordinate moments") {
  ParamVector theta{{1.0, 5.0}};
  ShiftSpec shift{0.3, {true, false}};
  Rng rng(7);
  double sum = 0.0, mn = 10.0, mx = -10.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const ParamVector p = sample_realization(theta, shift, rng);
    sum += p[0];
    mn = std::min(mn, p[0]);
    mx = std::max(mx, p[0]);
    if (i < 10000) REQUIRE(p[1] == 5.0);
  }
  CHECK(std::abs(sum / n - 1.0) <= 0.005);
  CHECK(mn >= 0.7);
  CHECK(mx <= 1.3);
}

TEST_CASE("rates without shift") {
  const Network net = fig2_network();
  const ShiftSpec none = ShiftSpec::for_model(net, 0.0);
  CHECK(realizations(net, fig2_counterfactual(), none, 50, 1) == 1.0);
  CHECK(realizations(net, fig2_factual(), none, 50, 1) == 0.0);
  const auto [mn, mx] = min_max_outputs(net, fig2_counterfactual(), none, 10, 1);
  CHECK(mn == doctest::Approx(0.52));
  CHECK(mx == doctest::Approx(0.52));
}

TEST_CASE("fig5 rate at 0.115 matches the exact robust volume") {
  const Network net = fig5_network();
  const double exact = fig5_oracle::robust_volume(0.115);
  const double rate = realizations(net, fig5_input(), ShiftSpec::for_model(net, 0.115), 100000, 42);
  // 4 standard errors at n = 1e5.
  CHECK(std::abs(rate - exact) <= 4 * std::sqrt(exact * (1 - exact) / 1e5));
  // The robust share only reaches 0.90 slightly below 0.115.
  CHECK(exact < 0.90);
  CHECK(fig5_oracle::robust_volume(0.11) >= 0.90);
}

TEST_CASE("single sample has min == max") {
  const Network net = fig5_network();
  const auto [mn, mx] = min_max_outputs(net, fig5_input(), ShiftSpec::for_model(net, 0.1), 1, 3);
  CHECK(mn == mx);
}

TEST_CASE("threads do not change the result") {
  const Network net = fig5_network();
  const ShiftSpec shift = ShiftSpec::for_model(net, 0.1);
  const SampleStats a = sample_outputs(net, fig5_input(), shift, 5000, 9, {1});
  const SampleStats b = sample_outputs(net, fig5_input(), shift, 5000, 9, {4});
  CHECK(a.positive == b.positive);
  CHECK(a.min == b.min);
  CHECK(a.max == b.max);
  CHECK(a.sum == doctest::Approx(b.sum).epsilon(1e-12));
}

TEST_CASE("negative delta is rejected") {
  const Network net = fig2_network();
  CHECK_THROWS(sample_outputs(net, fig2_counterfactual(), ShiftSpec::for_model(net, -0.1), 10, 1));
}

TEST_CASE("fig2 expected output under shift") {
  // Jensen: the clipped unit pulls the mean below the unshifted 0.52.
  CHECK(fig2_oracle::expected_output(0.3) == doctest::Approx(0.519875).epsilon(1e-6));
  const Network net = fig2_network();
  const SampleStats s = sample_outputs(net, fig2_counterfactual(), ShiftSpec::for_model(net, 0.3), 100000, 42);
  CHECK(std::abs(s.mean() - fig2_oracle::expected_output(0.3)) <= 4 * sample_sd(s.n, s.sum, s.sum_sq) / std::sqrt(1e5));
}
