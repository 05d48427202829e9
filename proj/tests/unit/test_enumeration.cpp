#include <doctest.h>

#include <cmath>

#include "shiftcert/apds.hpp"
#include "shiftcert/enumeration.hpp"
#include "shiftcert/examples.hpp"

using namespace shiftcert;

TEST_CASE("one-weight non-robust volume converges to 1/12") {
  const Network net = one_weight_network();
  const ShiftSpec shift = ShiftSpec::for_model(net, 0.6);
  for (int depth = 4; depth <= 20; ++depth) {
    const EnumerationReport r = enumerate(net, one_weight_input(), shift, {depth, 1'000'000});
    CHECK(std::abs(r.nonrobust_fraction - 1.0 / 12.0) <= std::ldexp(1.0, -depth));
    CHECK(r.robust_fraction + r.nonrobust_fraction + r.unknown_fraction == doctest::Approx(1.0));
  }
}

TEST_CASE("tiny delta is robust at depth 0") {
  const Network net = fig5_network();
  const EnumerationReport r = enumerate(net, fig5_input(), ShiftSpec::for_model(net, 1e-6), {0, 10});
  CHECK(r.robust_fraction == 1.0);
  CHECK(r.branches_evaluated == 1);
}

TEST_CASE("leaf visitor sees a partition of the box") {
  const Network net = fig5_network();
  double volume = 0.0;
  enumerate(net, fig5_input(), ShiftSpec::for_model(net, 0.115), {8, 100000},
            [&](const Branch& b, Verdict) { volume += b.relative_volume; });
  CHECK(volume == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("split choice") {
  std::vector<Interval> box{{0, 1}, {0, 2}, {1, 1}, {-1, 1}};
  CHECK(choose_split(box) == 1u);
  std::vector<Interval> flat{{1, 1}, {2, 2}};
  CHECK_FALSE(choose_split(flat).has_value());
}

TEST_CASE("decide_robust verdicts") {
  const Network net = one_weight_network();
  CHECK(decide_robust(net, one_weight_input(), ShiftSpec::for_model(net, 1e-6)).verdict == Verdict::Robust);
  const Decision d = decide_robust(net, one_weight_input(), ShiftSpec::for_model(net, 0.6));
  CHECK(d.verdict == Verdict::NonRobust);
  REQUIRE(d.witness.has_value());
  CHECK((*d.witness)[0] < 0.5);

  // The fig5 box straddles the threshold; one branch cannot settle it.
  DecideOptions tight;
  tight.budget = {0, 1};
  tight.counterexample_samples = 0;
  const Decision u = decide_robust(fig5_network(), fig5_input(), ShiftSpec::for_model(fig5_network(), 0.115), tight);
  CHECK(u.verdict == Verdict::Unknown);
  CHECK(u.budget_exhausted);
}

TEST_CASE("provable delta") {
  const Network net = one_weight_network();
  const ProvableDeltaResult r = provable_delta(net, one_weight_input(), ShiftSpec::for_model(net, 0.0));
  CHECK(r.delta_star >= 0.5 - 2e-4);
  CHECK(r.delta_star <= 0.5);
  CHECK(provable_delta(fig2_network(), fig2_factual(), ShiftSpec::for_model(fig2_network(), 0.0)).delta_star == 0.0);
}

TEST_CASE("provable delta never exceeds apds on fig5") {
  const Network net = fig5_network();
  const ProvableDeltaResult p = provable_delta(net, fig5_input(), ShiftSpec::for_model(net, 0.0));
  const ApdsResult a = apds(net, fig5_input(), Confidence{}, 42);
  CHECK(p.delta_star <= a.delta_max);
  CHECK(p.delta_star == doctest::Approx(0.0456).epsilon(0.01));
}
