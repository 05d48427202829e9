#include "shiftcert/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "shiftcert/apds.hpp"
#include "shiftcert/cfx.hpp"
#include "shiftcert/dataset.hpp"
#include "shiftcert/enumeration.hpp"
#include "shiftcert/error.hpp"
#include "shiftcert/evaluation.hpp"
#include "shiftcert/experiments.hpp"
#include "shiftcert/model_io.hpp"
#include "shiftcert/reduction.hpp"
#include "shiftcert/report.hpp"

namespace shiftcert {
namespace {

// A failed acceptance bound or an invalid counterfactual: report written,
// exit code 1.
struct DomainOutcome {
  std::string message;
};

struct Common {
  std::string format = "human";
  unsigned threads = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string output;
};

struct Target {
  std::string model;
  std::string input;
  std::vector<double> x;
  std::string perturb = "model";
};

void add_target(CLI::App* cmd, Target& t) {
  cmd->add_option("--model", t.model, "model file (JSON)")->required()->check(CLI::ExistingFile);
  auto* in = cmd->add_option("--input", t.input, "CSV file holding the counterfactual x'")->check(CLI::ExistingFile);
  auto* x = cmd->add_option("--x", t.x, "counterfactual given inline")->delimiter(',');
  in->excludes(x);
  cmd->add_option("--perturb", t.perturb, "parameters a shift may move")
      ->check(CLI::IsMember({"model", "all", "weights"}))
      ->capture_default_str();
}

std::vector<double> target_input(const Target& t) {
  if (!t.x.empty()) return t.x;
  if (t.input.empty()) throw CLI::RequiredError("--input or --x");
  return load_input_vector(t.input);
}

ShiftSpec target_shift(const Network& net, const Target& t, double delta) {
  if (t.perturb == "all") return ShiftSpec::all(net, delta);
  if (t.perturb == "weights") return ShiftSpec::weights_only(net, delta);
  return ShiftSpec::for_model(net, delta);
}

nlohmann::ordered_json common_params(const Common& c) {
  return {{"seed", c.seed}, {"threads", c.threads}};
}

nlohmann::ordered_json target_params(const Target& t, std::span<const double> x) {
  return {{"model", t.model}, {"input", std::vector<double>(x.begin(), x.end())}, {"perturb", t.perturb}};
}

template <typename T>
std::vector<T> parse_list(const std::string& s, const char* what) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !(is >> std::ws).eof()) throw DomainError(std::string("bad value in ") + what + ": '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw DomainError(std::string(what) + " must not be empty");
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certify and generate counterfactuals that stay valid under plausible model shifts."};
  app.name("shiftcert");
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  if (const char* env = std::getenv(kSeedEnv); env && *env) {
    try {
      common.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: " << kSeedEnv << " is not an unsigned integer\n";
      return kExitUsage;
    }
  }
  app.add_option("--format", common.format, "report format")
      ->check(CLI::IsMember({"human", "structured"}))
      ->capture_default_str();
  app.add_option("--threads", common.threads, "worker threads for sampling")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  app.add_option("--seed", common.seed, std::string("random seed (default from ") + kSeedEnv + ", else 42)")
      ->capture_default_str();
  app.add_option("--output", common.output, "write the report to this file instead of stdout");

  std::optional<Report> report;
  std::optional<DomainOutcome> outcome;

  // apds
  Target apds_t;
  double alpha = 0.999, r_frac = 0.995, delta_init = 1e-4;
  std::optional<double> risk;
  std::optional<std::size_t> n_override;
  std::string rule = "all-robust";
  auto* apds_cmd = app.add_subcommand("apds", "largest delta with an (alpha, R) sampling guarantee");
  add_target(apds_cmd, apds_t);
  auto* alpha_opt = apds_cmd->add_option("--alpha", alpha, "confidence")->capture_default_str();
  apds_cmd->add_option("--risk", risk, "1 - alpha, for confidences too close to 1 for a double")->excludes(alpha_opt);
  apds_cmd->add_option("--r", r_frac, "fraction R of shifts that must keep the decision")->capture_default_str();
  apds_cmd->add_option("--n", n_override, "realizations per step (at least the Wilks size)");
  apds_cmd->add_option("--rule", rule, "batch acceptance rule")
      ->check(CLI::IsMember({"all-robust", "at-least-r"}))
      ->capture_default_str();
  apds_cmd->add_option("--delta-init", delta_init, "gate delta and search resolution")->capture_default_str();
  apds_cmd->callback([&] {
    const Network net = load_model(apds_t.model);
    const std::vector<double> x = target_input(apds_t);
    const Confidence conf = risk ? Confidence::from_risk(*risk, r_frac) : Confidence::from_alpha(alpha, r_frac);
    ApdsOptions o;
    o.delta_init = delta_init;
    o.n_override = n_override;
    o.rule = acceptance_rule_from_string(rule);
    o.sampling.threads = common.threads;
    const ApdsResult res = apds(net, x, target_shift(net, apds_t, 0.0), conf, common.seed, o);
    Report rep("apds");
    nlohmann::ordered_json params = target_params(apds_t, x);
    params["alpha"] = conf.alpha();
    params["risk"] = conf.risk();
    params["r"] = conf.r();
    params["rule"] = rule;
    params["delta_init"] = delta_init;
    params.update(common_params(common));
    rep.set("params", params);
    rep.set("output", forward(net, x));
    rep.set("delta_max", res.delta_max).set("n", res.n).set("achieved_alpha", res.achieved_alpha);
    rep.set("iterations", res.iterations).set("samples_used", res.samples_used);
    report = std::move(rep);
    if (!is_positive(forward(net, x))) outcome = DomainOutcome{"input is not a valid counterfactual (output < 0.5)"};
  });

  // enumerate
  Target enum_t;
  double enum_delta = 0.0;
  EnumerationBudget enum_budget;
  auto* enum_cmd = app.add_subcommand("enumerate", "exact robust / non-robust / unknown volume fractions");
  add_target(enum_cmd, enum_t);
  enum_cmd->add_option("--delta", enum_delta, "shift half-width")->required();
  enum_cmd->add_option("--max-depth", enum_budget.max_depth, "splits per branch")->capture_default_str();
  enum_cmd->add_option("--max-leaves", enum_budget.max_leaves, "branch evaluations")->capture_default_str();
  enum_cmd->callback([&] {
    if (!(enum_delta > 0.0)) throw DomainError("--delta must be positive");
    const Network net = load_model(enum_t.model);
    const std::vector<double> x = target_input(enum_t);
    const EnumerationReport res = enumerate(net, x, target_shift(net, enum_t, enum_delta), enum_budget);
    Report rep("enumerate");
    nlohmann::ordered_json params = target_params(enum_t, x);
    params["delta"] = enum_delta;
    params["max_depth"] = enum_budget.max_depth;
    params["max_leaves"] = enum_budget.max_leaves;
    rep.set("params", params);
    rep.set("robust_fraction", res.robust_fraction)
        .set("nonrobust_fraction", res.nonrobust_fraction)
        .set("unknown_fraction", res.unknown_fraction);
    rep.set("leaves", nlohmann::ordered_json{{"robust", res.robust_leaves},
                                             {"nonrobust", res.nonrobust_leaves},
                                             {"unknown", res.unknown_leaves}});
    rep.set("branches_evaluated", res.branches_evaluated)
        .set("depth_reached", res.depth_reached)
        .set("budget_exhausted", res.budget_exhausted);
    report = std::move(rep);
  });

  // provable-delta
  Target prov_t;
  ProvableDeltaOptions prov;
  auto* prov_cmd = app.add_subcommand("provable-delta", "largest delta with a robustness proof");
  add_target(prov_cmd, prov_t);
  prov_cmd->add_option("--max-depth", prov.decide.budget.max_depth, "splits per branch")->capture_default_str();
  prov_cmd->add_option("--max-leaves", prov.decide.budget.max_leaves, "branch evaluations per decision")
      ->capture_default_str();
  prov_cmd->add_option("--samples", prov.decide.counterexample_samples, "random counterexample tries per decision")
      ->capture_default_str();
  prov_cmd->add_option("--delta-init", prov.delta_init, "gate delta and search resolution")->capture_default_str();
  prov_cmd->callback([&] {
    const Network net = load_model(prov_t.model);
    const std::vector<double> x = target_input(prov_t);
    prov.decide.seed = common.seed;
    const ProvableDeltaResult res = provable_delta(net, x, target_shift(net, prov_t, 0.0), prov);
    Report rep("provable-delta");
    nlohmann::ordered_json params = target_params(prov_t, x);
    params["max_depth"] = prov.decide.budget.max_depth;
    params["max_leaves"] = prov.decide.budget.max_leaves;
    params["samples"] = prov.decide.counterexample_samples;
    params["delta_init"] = prov.delta_init;
    params.update(common_params(common));
    rep.set("params", params);
    rep.set("output", forward(net, x));
    rep.set("delta_star", res.delta_star).set("decisions", res.decisions).set("any_unknown", res.any_unknown);
    report = std::move(rep);
    if (!is_positive(forward(net, x))) outcome = DomainOutcome{"input is not a valid counterfactual (output < 0.5)"};
  });

  // generate
  std::string gen_model, gen_dataset, gen_input;
  std::optional<std::size_t> gen_row;
  CfxRequest req;
  double gen_alpha = 0.999, gen_r = 0.995;
  std::string gen_metric = "l1";
  auto* gen_cmd = app.add_subcommand("generate", "robust counterfactual by generate-test-relax");
  gen_cmd->add_option("--model", gen_model, "model file (JSON)")->required()->check(CLI::ExistingFile);
  gen_cmd->add_option("--dataset", gen_dataset, "dataset CSV (anchors and feature bounds)")
      ->required()
      ->check(CLI::ExistingFile);
  auto* row_opt = gen_cmd->add_option("--input-row", gen_row, "0-based dataset row to explain");
  gen_cmd->add_option("--input", gen_input, "CSV file holding x")->check(CLI::ExistingFile)->excludes(row_opt);
  gen_cmd->add_option("--delta", req.delta, "shift half-width for the robustness test")->capture_default_str();
  gen_cmd->add_option("--alpha", gen_alpha, "confidence")->capture_default_str();
  gen_cmd->add_option("--r", gen_r, "fraction R")->capture_default_str();
  gen_cmd->add_option("--tau", req.tau, "maximum iterations")->capture_default_str();
  gen_cmd->add_option("--relax", req.relaxation, "budget growth factor per failure")->capture_default_str();
  gen_cmd->add_option("--budget", req.initial_budget, "initial l1 budget (default 1.05 x minimal distance)");
  gen_cmd->add_option("--margin", req.search.margin, "output margin above 0.5")->capture_default_str();
  gen_cmd->add_option("--metric", gen_metric, "reported distance")
      ->check(CLI::IsMember({"l1", "l2", "inf"}))
      ->capture_default_str();
  gen_cmd->callback([&] {
    const Network net = load_model(gen_model);
    Dataset data = load_dataset_csv(gen_dataset);
    std::vector<double> x;
    if (gen_row) {
      if (*gen_row >= data.size()) throw DomainError("--input-row is past the end of the dataset");
      x.assign(data.row(*gen_row).begin(), data.row(*gen_row).end());
    } else if (!gen_input.empty()) {
      x = load_input_vector(gen_input);
    } else {
      throw CLI::RequiredError("--input-row or --input");
    }
    // Models trained by `train` work on min-max scaled features.
    const std::optional<Normalization>& norm = net.metadata().normalization;
    if (norm) {
      data = normalize(data, *norm);
      x = normalize(x, *norm);
    }
    req.x = x;
    req.metric = norm_from_string(gen_metric);
    req.confidence = Confidence::from_alpha(gen_alpha, gen_r);
    req.seed = common.seed;
    req.sampling.threads = common.threads;
    const CfxResult res = generate_robust_cfx(req, net, data);

    Report rep("generate");
    nlohmann::ordered_json params{{"model", gen_model}, {"dataset", gen_dataset}, {"x", x},     {"delta", req.delta},
                                  {"alpha", gen_alpha}, {"r", gen_r},             {"tau", req.tau},
                                  {"relax", req.relaxation}, {"margin", req.search.margin}, {"metric", gen_metric}};
    if (gen_row) params["input_row"] = *gen_row;
    params["normalized"] = norm.has_value();
    params.update(common_params(common));
    rep.set("params", params);
    rep.set("found", res.found).set("valid", res.valid).set("robust", res.robust);
    rep.set("x_prime", res.x_prime).set("output", res.output);
    rep.set("distance_l1", res.distance_l1).set("distance", res.distance);
    rep.set("iterations_used", res.iterations_used).set("budgets", res.budgets);
    if (!res.found) rep.set("failure", res.failure);
    report = std::move(rep);
    if (!res.found) outcome = DomainOutcome{res.failure};
  });

  // train
  std::string train_dataset, train_out, hidden = "20,10";
  TrainConfig tcfg;
  auto* train_cmd = app.add_subcommand("train", "fit a ReLU classifier with a sigmoid output");
  train_cmd->add_option("--dataset", train_dataset, "dataset CSV")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--out", train_out, "where to write the model")->required();
  train_cmd->add_option("--hidden", hidden, "hidden layer widths")->capture_default_str();
  train_cmd->add_option("--epochs", tcfg.epochs, "passes over the data")->capture_default_str();
  train_cmd->add_option("--lr", tcfg.learning_rate, "learning rate")->capture_default_str();
  train_cmd->add_option("--batch", tcfg.batch_size, "mini-batch size")->capture_default_str();
  train_cmd->callback([&] {
    Dataset data = load_dataset_csv(train_dataset);
    const Normalization norm = fit_normalization(data);
    data = normalize(data, norm);
    tcfg.hidden = parse_list<std::size_t>(hidden, "--hidden");
    tcfg.seed = common.seed;
    TrainResult res = train(data, tcfg);
    res.net.metadata().dataset = train_dataset;
    res.net.metadata().normalization = norm;
    save_model(res.net, train_out);
    Report rep("train");
    rep.set("params", nlohmann::ordered_json{{"dataset", train_dataset},
                                             {"out", train_out},
                                             {"hidden", tcfg.hidden},
                                             {"epochs", tcfg.epochs},
                                             {"lr", tcfg.learning_rate},
                                             {"batch", tcfg.batch_size},
                                             {"seed", common.seed}});
    rep.set("rows", data.size()).set("accuracy", res.accuracy).set("final_loss", res.final_loss);
    rep.set("param_count", res.net.param_count());
    report = std::move(rep);
  });

  // evaluate
  std::string eval_dataset, eval_hidden = "20,10", shifted_mode = "retrain", save_base, save_shifted;
  std::size_t synth_n = 1000, synth_dim = 4;
  double eval_alpha = 0.999, eval_r = 0.995;
  ProtocolConfig pcfg;
  pcfg.request.delta = 0.02;
  auto* eval_cmd = app.add_subcommand("evaluate", "base / shifted model protocol: VM1, VM2, l1, lof, delta_e");
  auto* ds_opt = eval_cmd->add_option("--dataset", eval_dataset, "dataset CSV")->check(CLI::ExistingFile);
  eval_cmd->add_option("--synthetic", synth_n, "rows of the built-in two-cluster set when no dataset is given")
      ->excludes(ds_opt)
      ->capture_default_str();
  eval_cmd->add_option("--dim", synth_dim, "features of the two-cluster set")->capture_default_str();
  eval_cmd->add_option("--delta", pcfg.request.delta, "shift half-width for generation")->capture_default_str();
  eval_cmd->add_option("--alpha", eval_alpha, "confidence")->capture_default_str();
  eval_cmd->add_option("--r", eval_r, "fraction R")->capture_default_str();
  eval_cmd->add_option("--n-cfx", pcfg.n_cfx, "counterfactuals to generate")->capture_default_str();
  eval_cmd->add_option("--hidden", eval_hidden, "hidden layer widths")->capture_default_str();
  eval_cmd->add_option("--epochs", pcfg.train.epochs, "training epochs")->capture_default_str();
  eval_cmd->add_option("--lr", pcfg.train.learning_rate, "learning rate")->capture_default_str();
  eval_cmd->add_option("--batch", pcfg.train.batch_size, "mini-batch size")->capture_default_str();
  eval_cmd->add_option("--shifted", shifted_mode, "how the shifted model is trained")
      ->check(CLI::IsMember({"retrain", "finetune"}))
      ->capture_default_str();
  eval_cmd->add_option("--finetune-epochs", pcfg.finetune_epochs, "epochs for --shifted finetune")
      ->capture_default_str();
  eval_cmd->add_option("--lof-k", pcfg.lof_k, "LOF neighbors")->capture_default_str();
  eval_cmd->add_option("--lof-threshold", pcfg.lof_threshold, "LOF inlier threshold")->capture_default_str();
  eval_cmd->add_option("--save-base", save_base, "write the base model here");
  eval_cmd->add_option("--save-shifted", save_shifted, "write the shifted model here");
  eval_cmd->callback([&] {
    Dataset data = eval_dataset.empty() ? make_two_clusters(synth_n, synth_dim, common.seed)
                                        : load_dataset_csv(eval_dataset);
    data = normalize(data, fit_normalization(data));
    pcfg.train.hidden = parse_list<std::size_t>(eval_hidden, "--hidden");
    pcfg.train.seed = common.seed;
    pcfg.shifted = shifted_training_from_string(shifted_mode);
    pcfg.request.confidence = Confidence::from_alpha(eval_alpha, eval_r);
    pcfg.request.seed = common.seed;
    pcfg.request.sampling.threads = common.threads;
    const ProtocolOutput res = run_shift_protocol(data, pcfg);
    if (!save_base.empty()) save_model(res.base, save_base);
    if (!save_shifted.empty()) save_model(res.shifted, save_shifted);
    Report rep("evaluate");
    nlohmann::ordered_json params{{"dataset", eval_dataset.empty() ? "two-clusters" : eval_dataset},
                                  {"rows", data.size()},
                                  {"delta", pcfg.request.delta},
                                  {"alpha", eval_alpha},
                                  {"r", eval_r},
                                  {"n_cfx", pcfg.n_cfx},
                                  {"hidden", pcfg.train.hidden},
                                  {"epochs", pcfg.train.epochs},
                                  {"lr", pcfg.train.learning_rate},
                                  {"batch", pcfg.train.batch_size},
                                  {"shifted", shifted_mode},
                                  {"lof_k", pcfg.lof_k},
                                  {"lof_threshold", pcfg.lof_threshold}};
    params.update(common_params(common));
    rep.set("params", params);
    const EvalReport& e = res.report;
    rep.set("requested", e.requested).set("generated", e.generated);
    rep.set("vm1", e.vm1).set("vm2", e.vm2).set("mean_l1", e.mean_l1).set("mean_lof", e.mean_lof);
    rep.set("delta_e", e.delta_e).set("base_accuracy", e.base_accuracy).set("shifted_accuracy", e.shifted_accuracy);
    report = std::move(rep);
  });

  // noms-compare
  Target noms_t;
  std::string deltas_s = "0.05,0.1,0.2,0.3", ns_s = "1000,10000";
  NomsOptions nopts;
  auto* noms_cmd = app.add_subcommand("noms-compare", "average output change and t-test rejections under shifts");
  noms_cmd->add_option("--model", noms_t.model, "model file (JSON)")->required()->check(CLI::ExistingFile);
  auto* nin = noms_cmd->add_option("--input", noms_t.input, "CSV with one counterfactual per row")
                  ->check(CLI::ExistingFile);
  noms_cmd->add_option("--x", noms_t.x, "single counterfactual given inline")->delimiter(',')->excludes(nin);
  noms_cmd->add_option("--deltas", deltas_s, "shift half-widths")->capture_default_str();
  noms_cmd->add_option("--n", ns_s, "realizations per counterfactual")->capture_default_str();
  noms_cmd->add_option("--significance", nopts.significance, "t-test level")->capture_default_str();
  noms_cmd->add_flag("--two-sided", nopts.two_sided, "two-sided instead of one-sided t-test");
  noms_cmd->callback([&] {
    const Network net = load_model(noms_t.model);
    std::vector<std::vector<double>> cfxs;
    if (!noms_t.x.empty()) {
      cfxs.push_back(noms_t.x);
    } else if (!noms_t.input.empty()) {
      cfxs = load_input_rows(noms_t.input);
    } else {
      throw CLI::RequiredError("--input or --x");
    }
    nopts.sampling.threads = common.threads;
    const std::vector<double> deltas = parse_list<double>(deltas_s, "--deltas");
    const std::vector<std::size_t> ns = parse_list<std::size_t>(ns_s, "--n");
    const std::vector<NomsRow> rows = noms_compare(net, cfxs, deltas, ns, common.seed, nopts);
    Report rep("noms-compare");
    nlohmann::ordered_json params{{"model", noms_t.model},   {"cfx_count", cfxs.size()},
                                  {"deltas", deltas},        {"n", ns},
                                  {"significance", nopts.significance}, {"two_sided", nopts.two_sided}};
    params.update(common_params(common));
    rep.set("params", params);
    nlohmann::ordered_json table = nlohmann::ordered_json::array();
    for (const NomsRow& r : rows) {
      table.push_back({{"delta", r.delta}, {"n", r.n}, {"avg_diff", r.avg_diff}, {"rejection_pct", r.rejection_pct}});
    }
    rep.set("rows", table);
    report = std::move(rep);
  });

  // reduce
  std::string cnf_path, reduce_out;
  double reduce_delta = 0.05;
  bool reduce_check = false;
  auto* red_cmd = app.add_subcommand("reduce", "3-CNF to gadget network, optional equivalence check");
  red_cmd->add_option("--cnf", cnf_path, "DIMACS file")->required()->check(CLI::ExistingFile);
  red_cmd->add_option("--delta", reduce_delta, "interval half-width, in (0, 2/25)")->capture_default_str();
  red_cmd->add_flag("--check", reduce_check, "compare brute-force SAT with the realization search");
  red_cmd->add_option("--out", reduce_out, "write the gadget network (model format)");
  red_cmd->callback([&] {
    std::ifstream in(cnf_path);
    std::stringstream buf;
    buf << in.rdbuf();
    const Cnf cnf = parse_dimacs(buf.str());
    const GadgetNetwork g = build_reduction(cnf, reduce_delta);
    if (!reduce_out.empty()) save_model(gadget_to_model(g), reduce_out);
    Report rep("reduce");
    rep.set("params", nlohmann::ordered_json{{"cnf", cnf_path}, {"delta", reduce_delta}, {"check", reduce_check}});
    rep.set("n_vars", cnf.n_vars).set("n_clauses", cnf.clauses.size());
    rep.set("layers", g.net.layers().size()).set("param_count", g.net.param_count());
    rep.set("perturbed", g.shift.perturbed_count());
    if (reduce_check) {
      const EquivalenceReport e = check_equivalence_report(cnf, reduce_delta);
      rep.set("satisfiable", e.satisfiable).set("realizable", e.realizable).set("equivalent", e.agree());
      if (e.sat_assignment) rep.set("assignment", *e.sat_assignment);
      if (!e.agree()) outcome = DomainOutcome{"satisfiability and realizability disagree"};
    }
    report = std::move(rep);
  });

  // reproduce
  std::string exp_id, config_path;
  auto* rep_cmd = app.add_subcommand("reproduce", "run a canned experiment and check its acceptance bound");
  rep_cmd->add_option("experiment", exp_id, "experiment id or 'all'")->required();
  rep_cmd->add_option("--config", config_path, "tolerance config (JSON)")->check(CLI::ExistingFile);
  std::vector<Report> extra_reports;
  rep_cmd->callback([&] {
    const nlohmann::json cfg =
        load_reproduce_config(config_path.empty() ? default_reproduce_config_path() : std::filesystem::path(config_path));
    std::vector<std::string> ids;
    if (exp_id == "all") {
      ids = experiment_ids();
    } else {
      ids.push_back(exp_id);
    }
    bool all_pass = true;
    for (const std::string& id : ids) {
      ExperimentResult r = reproduce(id, cfg, ReproduceOptions{common.seed, common.threads});
      all_pass = all_pass && r.pass;
      extra_reports.push_back(std::move(r.report));
    }
    if (!all_pass) outcome = DomainOutcome{"acceptance bound not met"};
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }

  if (report) extra_reports.insert(extra_reports.begin(), std::move(*report));
  const ReportFormat fmt = report_format_from_string(common.format);
  std::ofstream file;
  if (!common.output.empty()) {
    file.open(common.output);
    if (!file) {
      err << "error: cannot write '" << common.output << "'\n";
      return kExitDomain;
    }
  }
  std::ostream& sink = common.output.empty() ? out : file;
  for (std::size_t i = 0; i < extra_reports.size(); ++i) {
    if (i > 0 && fmt == ReportFormat::Human) sink << '\n';
    extra_reports[i].write(sink, fmt);
  }
  if (outcome) {
    err << "error: " << outcome->message << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace shiftcert
