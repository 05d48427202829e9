#include <doctest.h>

#include "shiftcert/examples.hpp"
#include "shiftcert/interval.hpp"
#include "shiftcert/sampling.hpp"

using namespace shiftcert;

TEST_CASE("fig2 shift box edges") {
  const Network net = fig2_network();
  const std::vector<Interval> box = shift_box(net, ShiftSpec::for_model(net, 0.3));
  CHECK(box[0].lo == doctest::Approx(0.7));
  CHECK(box[0].hi == doctest::Approx(1.3));
  CHECK(box[7].lo == doctest::Approx(-1.3));
  CHECK(box[7].hi == doctest::Approx(-0.7));
  CHECK(box[4] == Interval::point(0.0));  // bias stays fixed
}

TEST_CASE("fig5 intervals at 0.115") {
  const Network net = fig5_network();
  const std::vector<Interval> box = shift_box(net, ShiftSpec::for_model(net, 0.115));
  const double lo[] = {-0.48, -0.99, -1.14, 0.695};
  const double hi[] = {-0.25, -0.76, -0.91, 0.925};
  const std::size_t idx[] = {0, 1, 4, 5};
  for (int i = 0; i < 4; ++i) {
    CHECK(box[idx[i]].lo == doctest::Approx(lo[i]).epsilon(1e-12));
    CHECK(box[idx[i]].hi == doctest::Approx(hi[i]).epsilon(1e-12));
  }
}

TEST_CASE("fig5 propagation by hand") {
  const Network net = fig5_network();
  const Interval out = propagate(abstract(net, ShiftSpec::for_model(net, 0.115)), fig5_input());
  // h1 in [0.6425, 1.2336], h2 in [1.9532, 2.5443]; output = w5 h1 + w6 h2.
  const double h1lo = 0.25 * 2.57, h1hi = 0.48 * 2.57, h2lo = 0.76 * 2.57, h2hi = 0.99 * 2.57;
  CHECK(out.lo == doctest::Approx(-1.14 * h1hi + 0.695 * h2lo).epsilon(1e-12));
  CHECK(out.hi == doctest::Approx(-0.91 * h1lo + 0.925 * h2hi).epsilon(1e-12));
  CHECK(classify(out) == Verdict::Unknown);
}

TEST_CASE("degenerate box collapses to forward") {
  const Network net = fig2_network();
  const IntervalNetwork inn = abstract(net, ShiftSpec::for_model(net, 0.0));
  for (const std::vector<double>& x : {std::vector<double>{1.0, 0.8}, std::vector<double>{0.9, 0.9},
                                       std::vector<double>{-0.3, 2.0}}) {
    const Interval out = propagate(inn, x);
    CHECK(out.lo == doctest::Approx(forward(net, x)).epsilon(1e-12));
    CHECK(out.hi == doctest::Approx(forward(net, x)).epsilon(1e-12));
  }
  CHECK(verdict(inn, fig2_counterfactual()) == Verdict::Robust);
  CHECK(verdict(inn, fig2_factual()) == Verdict::NonRobust);
}

TEST_CASE("fig2 interval contains the nominal output") {
  const Network net = fig2_network();
  const Interval out = propagate(abstract(net, ShiftSpec::for_model(net, 0.3)), fig2_counterfactual());
  CHECK(out.contains(0.52));
}

TEST_CASE("interval arithmetic") {
  CHECK(Interval::make(-1, 2) * Interval::make(-3, 1) == Interval{-6, 3});
  CHECK(Interval::make(1, 2) + Interval::make(-1, 0) == Interval{0, 2});
  CHECK(activate(Activation::Relu, Interval{-1, 2}) == Interval{0, 2});
  CHECK_THROWS(Interval::make(2, 1));
  CHECK_THROWS(Interval::make(0, INFINITY));
}

TEST_CASE("sampled outputs stay inside the propagated interval") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RandomInstance inst = random_instance(seed);
    const ShiftSpec shift = ShiftSpec::for_model(inst.net, 0.2);
    const Interval out = propagate(abstract(inst.net, shift), inst.x);
    const auto [mn, mx] = min_max_outputs(inst.net, inst.x, shift, 500, seed);
    CHECK(mn >= out.lo - 1e-9);
    CHECK(mx <= out.hi + 1e-9);
  }
}

TEST_CASE("split box propagation is at least as tight") {
  const Network net = fig5_network();
  std::vector<Interval> box = shift_box(net, ShiftSpec::for_model(net, 0.115));
  IntervalWorkspace ws;
  const Interval whole = propagate_box(net, box, fig5_input(), ws);
  box[0].hi = box[0].mid();
  const Interval half = propagate_box(net, box, fig5_input(), ws);
  CHECK(whole.contains(half));
}
