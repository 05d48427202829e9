#include <doctest.h>

#include "shiftcert/error.hpp"
#include "shiftcert/model_io.hpp"
#include "shiftcert/reduction.hpp"

using namespace shiftcert;

namespace {

constexpr double kDelta = 0.05;

const char* kFig10 = "c three variables, two clauses\np cnf 3 2\n1 2 -3 0\n-1 3 3 0\n";

}  // namespace

TEST_CASE("dimacs parsing") {
  const Cnf one = parse_dimacs("p cnf 1 1 \n 1 1 1 0");
  CHECK(one.n_vars == 1);
  REQUIRE(one.clauses.size() == 1);
  CHECK(one.clauses[0] == std::array<int, 3>{1, 1, 1});

  const Cnf f10 = parse_dimacs(kFig10);
  CHECK(f10.n_vars == 3);
  REQUIRE(f10.clauses.size() == 2);
  CHECK(f10.clauses[0] == std::array<int, 3>{1, 2, -3});
  CHECK(parse_dimacs(to_dimacs(f10)).clauses == f10.clauses);

  CHECK(parse_dimacs("p cnf 2 1\n1\n-2 2 0\n").clauses.size() == 1);  // clause over two lines
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 3 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 2 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("1 2 2 0\n"), ParseError);
}

TEST_CASE("brute force sat") {
  const Cnf f10 = parse_dimacs(kFig10);
  const auto a = brute_force_sat(f10);
  REQUIRE(a.has_value());
  CHECK(satisfies(f10, *a));
  CHECK_FALSE(brute_force_sat(parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n")).has_value());
}

TEST_CASE("fig10 topology") {
  const GadgetNetwork g = build_reduction(parse_dimacs(kFig10), kDelta);
  CHECK(g.n_vars == 3);
  CHECK(g.n_clauses == 2);
  CHECK(g.cfx_input == std::vector<double>{1.0});
  CHECK(g.main_a.size() == 3);
  CHECK(g.main_b.size() == 3);
  // Perturbed parameters span [v - 2 delta, v]; with nominal weight 1 that is [1 - 2 delta, 1].
  std::size_t unit = 0;
  for (std::size_t i = 0; i < g.net.param_count(); ++i) {
    if (!g.shift.mask[i]) continue;
    CHECK(g.net.flatten()[i] == doctest::Approx(g.nominal[i] - kDelta));
    if (g.nominal[i] == 1.0) ++unit;
  }
  CHECK(unit > 0);
  CHECK(g.shift.delta == kDelta);
}

TEST_CASE("smallest instance") {
  const GadgetNetwork g = build_reduction(parse_dimacs("p cnf 1 1\n1 1 1 0\n"), kDelta);
  CHECK(g.net.layers().back().rows == 1);
  CHECK(g.output_for({true}) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(g.output_for({false}) != doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("equivalence on named formulas") {
  CHECK(check_equivalence(parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n"), kDelta));
  const EquivalenceReport unsat = check_equivalence_report(parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n"), kDelta);
  CHECK_FALSE(unsat.satisfiable);
  CHECK_FALSE(unsat.realizable);
  const EquivalenceReport sat = check_equivalence_report(parse_dimacs("p cnf 3 1\n1 2 3 0\n"), kDelta);
  CHECK(sat.satisfiable);
  CHECK(sat.realizable);
  REQUIRE(sat.realizing_assignment.has_value());
  const GadgetNetwork g = build_reduction(parse_dimacs("p cnf 3 1\n1 2 3 0\n"), kDelta);
  CHECK(std::abs(g.output_for(*sat.realizing_assignment) - 0.5) <= kEndTolerance);
  CHECK(check_equivalence(parse_dimacs(kFig10), kDelta));
}

TEST_CASE("realizations lie inside the shift box") {
  const GadgetNetwork g = build_reduction(parse_dimacs(kFig10), kDelta);
  const ParamVector p = g.realization_for({true, false, true});
  const ParamVector theta = g.net.flatten();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (g.shift.mask[i]) {
      CHECK(std::abs(p[i] - theta[i]) <= kDelta + 1e-12);
    } else {
      CHECK(p[i] == theta[i]);
    }
  }
}

TEST_CASE("gadget lemma checks") {
  for (const LemmaCheck& c : lemma_checks(kDelta)) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.pass);
  }
  CHECK(clause_low_bound_stated(kDelta) < clause_high_bound(kDelta));
  CHECK(clause_low_bound_tight(kDelta) < clause_high_bound(kDelta));
  CHECK(clause_separation_limit() == doctest::Approx(0.0757).epsilon(1e-3));
}

TEST_CASE("delta outside the reduction range") {
  const Cnf f = parse_dimacs(kFig10);
  CHECK_THROWS_AS(build_reduction(f, 0.0), DomainError);
  CHECK_THROWS_AS(build_reduction(f, kReductionDeltaLimit), DomainError);
}

TEST_CASE("gadget network serializes with its mask") {
  const GadgetNetwork g = build_reduction(parse_dimacs(kFig10), kDelta);
  const Network m = parse_model(serialize_model(gadget_to_model(g)));
  CHECK(m.flatten() == g.net.flatten());
  REQUIRE(m.metadata().perturbation_mask.has_value());
  CHECK(*m.metadata().perturbation_mask == g.shift.mask);
  CHECK(m.metadata().extra.at("n_vars") == 3);
}

TEST_CASE("canonical family size") {
  CHECK(canonical_formulas(3, 3).size() == 34312);
  const Cnf r = random_cnf(5, 6, 10);
  CHECK(r.n_vars == 6);
  CHECK(r.clauses.size() == 10);
}
