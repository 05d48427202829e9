// Acceptance suite: one PASS/FAIL line per criterion, followed by the
// measured values. Exit status is nonzero if any criterion fails, except those
// listed with --known-red (comma-separated criterion numbers), which still
// print FAIL but do not change the status.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "shiftcert/apds.hpp"
#include "shiftcert/dataset.hpp"
#include "shiftcert/enumeration.hpp"
#include "shiftcert/evaluation.hpp"
#include "shiftcert/examples.hpp"
#include "shiftcert/lof.hpp"
#include "shiftcert/reduction.hpp"
#include "shiftcert/rng.hpp"
#include "shiftcert/sampling.hpp"
#include "shiftcert/stats.hpp"

using namespace shiftcert;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Wilks sizing.
Outcome wilks_sizing() {
  const std::size_t n = sample_size(0.999, 0.995);
  const double c = confidence_of(1378, 0.995);
  return {n == 1378 && c >= 0.9989 && c <= 0.9991, fmt("n=%zu confidence=%.7f", n, c)};
}

// 2. Mean output of the fig2 counterfactual under delta = 0.3 shifts.
Outcome lemma3_witness() {
  const Network net = fig2_network();
  const std::size_t n = 100000;
  const SampleStats s = sample_outputs(net, fig2_counterfactual(), ShiftSpec::for_model(net, 0.3), n, kSeed);
  const TTestResult t = one_sample_t_test(n, s.mean(), sample_sd(n, s.sum, s.sum_sq), 0.52, Tail::Greater);
  return {s.mean() > 0.52 && t.p_value < 0.01,
          fmt("mean=%.6f t=%.3f p=%.4f exact_mean=%.6f", s.mean(), t.t, t.p_value,
              fig2_oracle::expected_output(0.3))};
}

// 3. APDS on fig5, R = 0.90, n = 100000, ten seeds.
Outcome fig5_apds() {
  const Network net = fig5_network();
  const Confidence conf = Confidence::from_risk(1e-40, 0.90);
  ApdsOptions o;
  o.n_override = 100000;
  o.rule = AcceptanceRule::AtLeastR;
  ApdsOptions strict = o;
  strict.rule = AcceptanceRule::AllRobust;
  int inside = 0;
  std::string values, strict_values;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const double d = apds(net, fig5_input(), conf, kSeed + s, o).delta_max;
    inside += (d >= 0.095 && d <= 0.135) ? 1 : 0;
    values += fmt("%s%.4f", s ? "," : "", d);
    if (s < 3) strict_values += fmt("%s%.4f", s ? "," : "", apds(net, fig5_input(), conf, kSeed + s, strict).delta_max);
  }
  return {inside >= 9, fmt("in_range=%d/10 delta_max=[%s] (all-robust rule: [%s,...])", inside, values.c_str(),
                           strict_values.c_str())};
}

// 4. Exact enumeration of the fig5 box at 0.115.
Outcome fig5_enumeration() {
  const Network net = fig5_network();
  const EnumerationReport r = enumerate(net, fig5_input(), ShiftSpec::for_model(net, 0.115), {12, 1'000'000});
  const double other = r.nonrobust_fraction + r.unknown_fraction;
  return {r.robust_fraction >= 0.90 && other <= 0.10,
          fmt("robust=%.4f nonrobust=%.4f unknown=%.4f exact_robust_volume=%.4f", r.robust_fraction,
              r.nonrobust_fraction, r.unknown_fraction, fig5_oracle::robust_volume(0.115))};
}

// 5. One-weight closed form.
Outcome one_weight() {
  const Network net = one_weight_network();
  const double ds = provable_delta(net, one_weight_input(), ShiftSpec::for_model(net, 0.0)).delta_star;
  bool ok = ds >= 0.4998 && ds <= 0.5;
  double worst = 0.0;
  for (int depth = 4; depth <= 20; ++depth) {
    const EnumerationReport r = enumerate(net, one_weight_input(), ShiftSpec::for_model(net, 0.6), {depth, 1'000'000});
    const double err = std::abs(r.nonrobust_fraction - 1.0 / 12.0);
    worst = std::max(worst, err / std::ldexp(1.0, -depth));
    ok = ok && err <= std::ldexp(1.0, -depth);
  }
  return {ok, fmt("delta_star=%.6f worst_error/2^-depth=%.3f", ds, worst)};
}

// 6. Provable delta never exceeds the APDS estimate.
Outcome prop1_ordering() {
  ProvableDeltaOptions p;
  p.decide.budget = {24, 20000};
  p.decide.stop_at_unknown = true;
  p.decide.seed = kSeed;
  int ok = 0;
  double max_ratio = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const RandomInstance inst = random_instance(derive_seed(kSeed, i));
    const ShiftSpec shift = ShiftSpec::for_model(inst.net, 0.0);
    const double a = apds(inst.net, inst.x, shift, Confidence{}, kSeed).delta_max;
    const double d = provable_delta(inst.net, inst.x, shift, p).delta_star;
    ok += d <= a ? 1 : 0;
    if (a > 0) max_ratio = std::max(max_ratio, d / a);
  }
  return {ok == 20, fmt("ordered=%d/20 max provable/apds=%.3f", ok, max_ratio)};
}

// 7. Coverage of the Wilks guarantee over 200 random nets.
Outcome wilks_coverage() {
  const Confidence conf;  // alpha = 0.999, R = 0.995
  const int trials = 200;
  int covered = 0;
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const RandomInstance inst = random_instance(derive_seed(kSeed + 1, static_cast<std::uint64_t>(i)));
    const ShiftSpec shift = ShiftSpec::for_model(inst.net, 0.0);
    const double d = apds(inst.net, inst.x, shift, conf, derive_seed(kSeed, 1000 + i)).delta_max;
    const double rate = realizations(inst.net, inst.x, shift.with_delta(d), 10000, derive_seed(kSeed, 5000 + i));
    covered += (1.0 - rate) <= 1.0 - conf.r() ? 1 : 0;
    worst = std::max(worst, 1.0 - rate);
  }
  // H0: coverage probability >= alpha. Reject if so few covered that
  // P(X <= covered) < 0.01.
  const double p = binomial_cdf(static_cast<std::size_t>(covered), trials, conf.alpha());
  return {p >= 0.01, fmt("covered=%d/%d p=%.4f worst_nonrobust=%.4f", covered, trials, p, worst)};
}

// 8. Enumeration against Monte Carlo on nets with at most 6 parameters, every
// parameter perturbed.
Outcome enumeration_vs_mc() {
  RandomNetConfig cfg;
  cfg.max_inputs = 3;
  cfg.max_hidden_layers = 2;
  cfg.max_width = 1;
  cfg.max_params = 6;
  double worst = 0.0;
  int ok = 0;
  std::string diffs;
  for (std::uint64_t i = 0; i < 10; ++i) {
    const RandomInstance inst = random_instance(1000 + i, cfg);
    // Twice the sampled robustness radius, so the box straddles the boundary.
    const double a = apds(inst.net, inst.x, ShiftSpec::all(inst.net, 0.0), Confidence{}, i).delta_max;
    const ShiftSpec shift = ShiftSpec::all(inst.net, 2 * a);
    const EnumerationReport r = enumerate(inst.net, inst.x, shift, {33, 2'000'000'000});
    const double mc = realizations(inst.net, inst.x, shift, 1'000'000, derive_seed(kSeed, i));
    const double diff = std::abs(r.robust_fraction - mc);
    worst = std::max(worst, diff);
    ok += diff <= 0.02 ? 1 : 0;
    diffs += fmt("%s%zu:%.4f", i ? "," : "", inst.net.param_count(), diff);
  }
  return {ok == 10, fmt("within=%d/10 worst=%.4f params:diff=[%s]", ok, worst, diffs.c_str())};
}

// 9. Reduction equivalence and gadget lemmas.
Outcome reduction_suite() {
  const double delta = 0.05;
  std::size_t agree = 0, total = 0;
  for (const Cnf& f : canonical_formulas(3, 3)) {
    agree += check_equivalence(f, delta) ? 1 : 0;
    ++total;
  }
  Rng rng(kSeed, 9);
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const std::size_t m = 1 + rng.below(10);
    agree += check_equivalence(random_cnf(derive_seed(kSeed, i), n, m), delta) ? 1 : 0;
    ++total;
  }
  int lemmas = 0, lemma_pass = 0;
  for (const LemmaCheck& c : lemma_checks(delta)) {
    ++lemmas;
    lemma_pass += c.pass ? 1 : 0;
  }
  const double lo = 8 * delta + 2 * delta * delta, hi = 1 - 4 * delta - 4 * delta * delta;
  return {agree == total && lemma_pass == lemmas && lo < hi,
          fmt("agree=%zu/%zu lemmas=%d/%d gap=%.4f<%.4f", agree, total, lemma_pass, lemmas, lo, hi)};
}

// 10. LOF against a brute-force reference.
Outcome lof_oracle_check() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Dataset d = make_two_clusters(50, 2, s);
    lof_oracle::BruteLof ref{{}, kDefaultLofNeighbors};
    for (std::size_t i = 0; i < d.size(); ++i) ref.pts.emplace_back(d.row(i).begin(), d.row(i).end());
    const LocalOutlierFactor lof(d);
    Rng rng(s, 10);
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double want = ref.score(ref.pts[i], static_cast<long>(i));
      worst = std::max(worst, std::abs(lof.member_score(i) - want) / std::max(1.0, std::abs(want)));
    }
    for (int q = 0; q < 20; ++q) {
      const std::vector<double> x{rng.uniform(-0.5, 1.5), rng.uniform(-0.5, 1.5)};
      const double want = ref.score(x);
      worst = std::max(worst, std::abs(lof.score(x) - want) / std::max(1.0, std::abs(want)));
    }
  }
  const Dataset d = make_two_clusters(50, 2, 1);
  const std::vector<double> dup(d.row(3).begin(), d.row(3).end());
  const int inlier = lof_label(lof_score(dup, d));
  const int outlier = lof_label(lof_score(std::vector<double>{100 * std::sqrt(2.0), 100 * std::sqrt(2.0)}, d));
  return {worst <= 1e-9 && inlier == 1 && outlier == -1,
          fmt("max_rel_error=%.2e duplicate=%+d far=%+d", worst, inlier, outlier)};
}

// 11. End-to-end generation on a two-cluster set.
ProtocolConfig protocol(std::uint64_t seed) {
  ProtocolConfig cfg;
  cfg.train.hidden = {20, 10};
  cfg.train.seed = seed;
  cfg.request.delta = 0.02;
  cfg.request.seed = seed;
  cfg.n_cfx = 50;
  return cfg;
}

Outcome end_to_end() {
  const Dataset data = make_two_clusters(1000, 4, kSeed);
  const ProtocolOutput out = run_shift_protocol(data, protocol(kSeed));
  const EvalReport& e = out.report;
  std::string others;
  for (std::uint64_t s : {7, 11}) {
    const EvalReport o = run_shift_protocol(make_two_clusters(1000, 4, s), protocol(s)).report;
    others += fmt(" seed%zu:vm2=%.0f,delta_e=%.2f", static_cast<std::size_t>(s), o.vm2, o.delta_e);
  }
  return {e.generated == 50 && e.vm1 == 100.0 && e.vm2 >= 90.0,
          fmt("generated=%zu/50 vm1=%.0f vm2=%.0f delta_e=%.3f l1=%.3f lof=%.2f |%s", e.generated, e.vm1, e.vm2,
              e.delta_e, e.mean_l1, e.mean_lof, others.c_str())};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::size_t> known_red;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) != "--known-red") continue;
    std::stringstream ss(argv[i + 1]);
    std::string item;
    while (std::getline(ss, item, ',')) known_red.insert(std::stoul(item));
  }
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"wilks-sizing", wilks_sizing},         {"lemma3-witness", lemma3_witness},
      {"fig5-apds", fig5_apds},               {"fig5-enumeration", fig5_enumeration},
      {"closed-form-oracle", one_weight},     {"prop1-ordering", prop1_ordering},
      {"wilks-coverage", wilks_coverage},     {"enumeration-vs-mc", enumeration_vs_mc},
      {"reduction-suite", reduction_suite},   {"lof-oracle", lof_oracle_check},
      {"end-to-end-generation", end_to_end},
  };
  int failed = 0, unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %-22s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
    unexpected += (!o.pass && !known_red.count(i + 1)) ? 1 : 0;
  }
  std::printf("%d/%zu criteria passed", static_cast<int>(criteria.size()) - failed, criteria.size());
  if (!known_red.empty()) std::printf(", %d unexpected failure(s)", unexpected);
  std::printf("\n");
  return unexpected == 0 ? 0 : 1;
}
