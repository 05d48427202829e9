#include "shiftcert/experiments.hpp"

#include <cstdlib>
#include <fstream>

#include "shiftcert/apds.hpp"
#include "shiftcert/enumeration.hpp"
#include "shiftcert/error.hpp"
#include "shiftcert/examples.hpp"
#include "shiftcert/reduction.hpp"
#include "shiftcert/sampling.hpp"
#include "shiftcert/stats.hpp"

#ifndef SHIFTCERT_SOURCE_CONFIG
#define SHIFTCERT_SOURCE_CONFIG "config/reproduce.json"
#endif

namespace shiftcert {
namespace {

const nlohmann::json& section(const nlohmann::json& cfg, std::string_view id) {
  const auto it = cfg.find(std::string(id));
  if (it == cfg.end() || !it->is_object()) {
    throw DomainError("reproduce config has no section '" + std::string(id) + "'");
  }
  return *it;
}

template <typename T>
T get(const nlohmann::json& sec, const char* key) {
  const auto it = sec.find(key);
  if (it == sec.end()) throw DomainError(std::string("reproduce config is missing '") + key + "'");
  return it->get<T>();
}

ExperimentResult fig5_apds(const nlohmann::json& c, const ReproduceOptions& o) {
  ExperimentResult res{"fig5-apds", false, Report("reproduce")};
  const Network net = fig5_network();
  const std::vector<double> x = fig5_input();
  const Confidence conf = Confidence::from_risk(get<double>(c, "risk"), get<double>(c, "r"));
  ApdsOptions opts;
  opts.n_override = get<std::size_t>(c, "n");
  opts.rule = acceptance_rule_from_string(get<std::string>(c, "rule"));
  opts.sampling.threads = o.threads;
  const double lo = get<double>(c, "delta_lo"), hi = get<double>(c, "delta_hi");
  const int seeds = get<int>(c, "seeds");

  std::vector<double> deltas;
  int inside = 0;
  for (int s = 0; s < seeds; ++s) {
    const double d = apds(net, x, conf, o.seed + static_cast<std::uint64_t>(s), opts).delta_max;
    deltas.push_back(d);
    inside += (d >= lo && d <= hi) ? 1 : 0;
  }
  ApdsOptions strict = opts;
  strict.rule = AcceptanceRule::AllRobust;
  const double strict_delta = apds(net, x, conf, o.seed, strict).delta_max;

  res.pass = inside >= get<int>(c, "min_passing");
  res.report.set("params", c).set("seed", o.seed);
  res.report.set("delta_max", deltas).set("runs_in_range", inside);
  res.report.set("all_robust_delta_max", strict_delta);
  return res;
}

ExperimentResult fig5_enumeration(const nlohmann::json& c, const ReproduceOptions&) {
  ExperimentResult res{"fig5-enumeration", false, Report("reproduce")};
  const Network net = fig5_network();
  EnumerationBudget budget;
  budget.max_depth = get<int>(c, "max_depth");
  const EnumerationReport rep =
      enumerate(net, fig5_input(), ShiftSpec::for_model(net, get<double>(c, "delta")), budget);
  res.pass = rep.robust_fraction >= get<double>(c, "min_robust") &&
             rep.nonrobust_fraction + rep.unknown_fraction <= get<double>(c, "max_other");
  res.report.set("params", c);
  res.report.set("robust_fraction", rep.robust_fraction)
      .set("nonrobust_fraction", rep.nonrobust_fraction)
      .set("unknown_fraction", rep.unknown_fraction)
      .set("branches_evaluated", rep.branches_evaluated)
      .set("budget_exhausted", rep.budget_exhausted);
  return res;
}

ExperimentResult prop1_ordering(const nlohmann::json& c, const ReproduceOptions& o) {
  ExperimentResult res{"prop1-ordering", false, Report("reproduce")};
  struct Case {
    std::string name;
    Network net;
    std::vector<double> x;
  };
  std::vector<Case> cases = {{"fig2", fig2_network(), fig2_counterfactual()},
                             {"fig5", fig5_network(), fig5_input()},
                             {"one-weight", one_weight_network(), one_weight_input()}};
  const int random_nets = get<int>(c, "random_nets");
  for (int i = 0; i < random_nets; ++i) {
    RandomInstance inst = random_instance(derive_seed(o.seed, static_cast<std::uint64_t>(i)));
    cases.push_back({"random-" + std::to_string(i), std::move(inst.net), std::move(inst.x)});
  }
  const Confidence conf = Confidence::from_alpha(get<double>(c, "alpha"), get<double>(c, "r"));
  ApdsOptions aopts;
  aopts.sampling.threads = o.threads;
  ProvableDeltaOptions popts;
  popts.decide.budget.max_depth = get<int>(c, "max_depth");
  popts.decide.budget.max_leaves = get<std::size_t>(c, "max_leaves");
  popts.decide.stop_at_unknown = true;
  popts.decide.seed = o.seed;

  bool all = true;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const Case& cs : cases) {
    const ShiftSpec shift = ShiftSpec::for_model(cs.net, 0.0);
    const double a = apds(cs.net, cs.x, shift, conf, o.seed, aopts).delta_max;
    const ProvableDeltaResult p = provable_delta(cs.net, cs.x, shift, popts);
    const bool ok = p.delta_star <= a;
    all = all && ok;
    rows.push_back({{"case", cs.name}, {"provable", p.delta_star}, {"apds", a}, {"ok", ok}});
  }
  res.pass = all;
  res.report.set("params", c).set("seed", o.seed).set("cases", rows);
  return res;
}

ExperimentResult lemma3_witness(const nlohmann::json& c, const ReproduceOptions& o) {
  ExperimentResult res{"lemma3-witness", false, Report("reproduce")};
  const Network net = fig2_network();
  const std::vector<double> x = fig2_counterfactual();
  const std::size_t n = get<std::size_t>(c, "n");
  SamplingOptions sopts;
  sopts.threads = o.threads;
  const SampleStats s = sample_outputs(net, x, ShiftSpec::for_model(net, get<double>(c, "delta")), n, o.seed, sopts);
  const double baseline = get<double>(c, "baseline");
  const TTestResult t = one_sample_t_test(n, s.mean(), sample_sd(n, s.sum, s.sum_sq), baseline, Tail::Greater);
  res.pass = s.mean() > baseline && t.p_value < get<double>(c, "p_max");
  res.report.set("params", c).set("seed", o.seed);
  res.report.set("center_output", forward(net, x)).set("mean", s.mean()).set("t", t.t).set("p_value", t.p_value);
  return res;
}

ExperimentResult reduction_suite(const nlohmann::json& c, const ReproduceOptions& o) {
  ExperimentResult res{"reduction-suite", false, Report("reproduce")};
  const double delta = get<double>(c, "delta");
  std::vector<Cnf> formulas =
      canonical_formulas(get<int>(c, "canonical_max_vars"), get<std::size_t>(c, "canonical_max_clauses"));
  const std::size_t canonical = formulas.size();
  const int max_vars = get<int>(c, "random_max_vars");
  const std::size_t max_clauses = get<std::size_t>(c, "random_max_clauses");
  for (int i = 0; i < get<int>(c, "random_formulas"); ++i) {
    Rng rng(o.seed, 0xf0u + static_cast<std::uint64_t>(i));
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_vars)));
    const std::size_t m = 1 + static_cast<std::size_t>(rng.below(max_clauses));
    formulas.push_back(random_cnf(rng.next_u64(), n, m));
  }
  std::size_t agree = 0, satisfiable = 0;
  for (const Cnf& f : formulas) {
    const EquivalenceReport r = check_equivalence_report(f, delta);
    agree += r.agree() ? 1 : 0;
    satisfiable += r.satisfiable ? 1 : 0;
  }
  bool lemmas = true;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const LemmaCheck& l : lemma_checks(delta)) {
    lemmas = lemmas && l.pass;
    checks.push_back({{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
  }
  res.pass = agree == formulas.size() && lemmas;
  res.report.set("params", c).set("seed", o.seed);
  res.report.set("formulas", formulas.size())
      .set("canonical", canonical)
      .set("satisfiable", satisfiable)
      .set("agreeing", agree)
      .set("lemmas", checks);
  return res;
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {"fig5-apds", "fig5-enumeration", "prop1-ordering", "lemma3-witness",
                                               "reduction-suite"};
  return ids;
}

nlohmann::json load_reproduce_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open reproduce config '" + path.string() + "'");
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), 0, path.string());
  }
  if (!cfg.is_object() || cfg.value("version", 0) != kReproduceConfigVersion) {
    throw ParseError("unsupported reproduce config version", 0, "version");
  }
  return cfg;
}

std::filesystem::path default_reproduce_config_path() {
  if (const char* env = std::getenv("SHIFTCERT_REPRODUCE_CONFIG"); env && *env) return env;
  return SHIFTCERT_SOURCE_CONFIG;
}

ExperimentResult reproduce(std::string_view id, const nlohmann::json& config, const ReproduceOptions& opts) {
  ExperimentResult res;
  if (id == "fig5-apds") {
    res = fig5_apds(section(config, id), opts);
  } else if (id == "fig5-enumeration") {
    res = fig5_enumeration(section(config, id), opts);
  } else if (id == "prop1-ordering") {
    res = prop1_ordering(section(config, id), opts);
  } else if (id == "lemma3-witness") {
    res = lemma3_witness(section(config, id), opts);
  } else if (id == "reduction-suite") {
    res = reduction_suite(section(config, id), opts);
  } else {
    throw DomainError("unknown experiment '" + std::string(id) + "'");
  }
  Report full("reproduce");
  full.set("experiment", res.id).set("result", res.pass ? "PASS" : "FAIL");
  for (const auto& [k, v] : res.report.data().items()) {
    if (k != "command") full.data()[k] = v;
  }
  res.report = std::move(full);
  return res;
}

}  // namespace shiftcert
