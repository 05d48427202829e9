#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shiftcert/apds.hpp"
#include "shiftcert/cfx.hpp"
#include "shiftcert/dataset.hpp"
#include "shiftcert/enumeration.hpp"
#include "shiftcert/error.hpp"
#include "shiftcert/examples.hpp"
#include "shiftcert/lof.hpp"
#include "shiftcert/model_io.hpp"
#include "shiftcert/reduction.hpp"
#include "shiftcert/sampling.hpp"

namespace py = pybind11;
using namespace shiftcert;

namespace {

ShiftSpec shift_for(const Network& net, const std::string& perturb, double delta) {
  if (perturb == "all") return ShiftSpec::all(net, delta);
  if (perturb == "weights") return ShiftSpec::weights_only(net, delta);
  if (perturb == "model") return ShiftSpec::for_model(net, delta);
  throw DomainError("perturb must be model, all or weights");
}

Dataset make_dataset(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels) {
  if (rows.empty() || rows.size() != labels.size()) throw DimensionError("rows and labels must be non-empty and equal in length");
  Dataset d;
  d.dim = rows.front().size();
  for (std::size_t j = 0; j < d.dim; ++j) d.feature_names.push_back("f" + std::to_string(j));
  for (std::size_t i = 0; i < rows.size(); ++i) d.add(rows[i], labels[i]);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Robustness of counterfactual explanations under plausible model shifts";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<Network>(m, "Network")
      .def_property_readonly("input_dim", &Network::input_dim)
      .def_property_readonly("param_count", &Network::param_count)
      .def("flatten", [](const Network& n) { return n.flatten().values; })
      .def("with_params", [](const Network& n, const std::vector<double>& p) { return n.with_params(p); })
      .def("forward", [](const Network& n, const std::vector<double>& x) { return forward(n, x); }, py::arg("x"))
      .def("to_json", [](const Network& n) { return serialize_model(n); })
      .def_static("from_json", [](const std::string& s) { return parse_model(s); })
      .def_static("load", [](const std::string& path) { return load_model(path); })
      .def("save", [](const Network& n, const std::string& path) { save_model(n, path); });

  m.def("fig2_network", &fig2_network);
  m.def("fig5_network", &fig5_network);
  m.def("one_weight_network", &one_weight_network);
  m.attr("DECISION_THRESHOLD") = kDecisionThreshold;

  m.def("sample_size", &sample_size, py::arg("alpha"), py::arg("r"));
  m.def("confidence_of", &confidence_of, py::arg("n"), py::arg("r"));

  m.def(
      "realizations",
      [](const Network& net, const std::vector<double>& x, double delta, std::size_t n, std::uint64_t seed,
         const std::string& perturb) { return realizations(net, x, shift_for(net, perturb, delta), n, seed); },
      py::arg("net"), py::arg("x"), py::arg("delta"), py::arg("n"), py::arg("seed") = 42,
      py::arg("perturb") = "model");

  m.def(
      "apds",
      [](const Network& net, const std::vector<double>& x, double alpha, double r, std::uint64_t seed,
         std::optional<std::size_t> n, const std::string& rule, double delta_init, const std::string& perturb) {
        ApdsOptions o;
        o.n_override = n;
        o.rule = acceptance_rule_from_string(rule);
        o.delta_init = delta_init;
        const ApdsResult res = apds(net, x, shift_for(net, perturb, 0.0), Confidence::from_alpha(alpha, r), seed, o);
        py::dict d;
        d["delta_max"] = res.delta_max;
        d["n"] = res.n;
        d["achieved_alpha"] = res.achieved_alpha;
        d["iterations"] = res.iterations;
        d["samples_used"] = res.samples_used;
        d["seed"] = seed;
        return d;
      },
      py::arg("net"), py::arg("x"), py::arg("alpha") = 0.999, py::arg("r") = 0.995, py::arg("seed") = 42,
      py::arg("n") = py::none(), py::arg("rule") = "all-robust", py::arg("delta_init") = 1e-4,
      py::arg("perturb") = "model");

  m.def(
      "enumerate",
      [](const Network& net, const std::vector<double>& x, double delta, int max_depth, std::size_t max_leaves,
         const std::string& perturb) {
        const EnumerationReport r = enumerate(net, x, shift_for(net, perturb, delta), {max_depth, max_leaves});
        py::dict d;
        d["robust_fraction"] = r.robust_fraction;
        d["nonrobust_fraction"] = r.nonrobust_fraction;
        d["unknown_fraction"] = r.unknown_fraction;
        d["branches_evaluated"] = r.branches_evaluated;
        d["budget_exhausted"] = r.budget_exhausted;
        return d;
      },
      py::arg("net"), py::arg("x"), py::arg("delta"), py::arg("max_depth") = 24, py::arg("max_leaves") = 1'000'000,
      py::arg("perturb") = "model");

  m.def(
      "provable_delta",
      [](const Network& net, const std::vector<double>& x, int max_depth, std::size_t max_leaves, std::uint64_t seed,
         const std::string& perturb) {
        ProvableDeltaOptions o;
        o.decide.budget = {max_depth, max_leaves};
        o.decide.seed = seed;
        return provable_delta(net, x, shift_for(net, perturb, 0.0), o).delta_star;
      },
      py::arg("net"), py::arg("x"), py::arg("max_depth") = 24, py::arg("max_leaves") = 1'000'000,
      py::arg("seed") = 42, py::arg("perturb") = "model");

  m.def(
      "generate_robust_cfx",
      [](const Network& net, const std::vector<double>& x, const std::vector<std::vector<double>>& rows,
         const std::vector<int>& labels, double delta, double alpha, double r, int tau, double relax,
         std::uint64_t seed) {
        CfxRequest req;
        req.x = x;
        req.delta = delta;
        req.confidence = Confidence::from_alpha(alpha, r);
        req.tau = tau;
        req.relaxation = relax;
        req.seed = seed;
        const CfxResult res = generate_robust_cfx(req, net, make_dataset(rows, labels));
        py::dict d;
        d["found"] = res.found;
        d["valid"] = res.valid;
        d["robust"] = res.robust;
        d["x_prime"] = res.x_prime;
        d["output"] = res.output;
        d["distance_l1"] = res.distance_l1;
        d["iterations_used"] = res.iterations_used;
        d["failure"] = res.failure;
        return d;
      },
      py::arg("net"), py::arg("x"), py::arg("rows"), py::arg("labels"), py::arg("delta") = 0.05,
      py::arg("alpha") = 0.999, py::arg("r") = 0.995, py::arg("tau") = 50, py::arg("relax") = 1.1,
      py::arg("seed") = 42);

  m.def(
      "lof_score",
      [](const std::vector<double>& x, const std::vector<std::vector<double>>& rows, std::size_t k) {
        return lof_score(x, make_dataset(rows, std::vector<int>(rows.size(), 0)), k);
      },
      py::arg("x"), py::arg("rows"), py::arg("k") = kDefaultLofNeighbors);

  m.def(
      "check_equivalence",
      [](const std::string& dimacs, double delta) {
        const EquivalenceReport r = check_equivalence_report(parse_dimacs(dimacs), delta);
        py::dict d;
        d["satisfiable"] = r.satisfiable;
        d["realizable"] = r.realizable;
        d["agree"] = r.agree();
        return d;
      },
      py::arg("dimacs"), py::arg("delta") = 0.05);
}
