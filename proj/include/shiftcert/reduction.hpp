#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shiftcert/model.hpp"
#include "shiftcert/shift.hpp"

namespace shiftcert {

// 3-CNF formula; literals are signed 1-based variable indices.
struct Cnf {
  int n_vars = 0;
  std::vector<std::array<int, 3>> clauses;
};

// DIMACS "p cnf V C" with exactly three literals per clause. Clauses may span
// lines; 'c' comment lines and a trailing '%' line are ignored.
Cnf parse_dimacs(std::string_view text);
std::string to_dimacs(const Cnf& cnf);

bool satisfies(const Cnf& cnf, const std::vector<bool>& assignment);  // assignment[i] = x_{i+1}
// First satisfying assignment by enumeration of all 2^n.
std::optional<std::vector<bool>> brute_force_sat(const Cnf& cnf);

// Largest delta the tight clause bounds separate: 8d + 12d^2 < 1 - 4d - 4d^2.
double clause_separation_limit();
inline constexpr double kReductionDeltaLimit = 2.0 / 25.0;

// Network whose perturbed parameters range over [v - 2 delta, v]: `net` holds
// the interval centers v - delta and `shift` (half-width delta, mask) spans
// the intervals. `nominal` is the realization at the upper endpoints v.
// Unperturbed entries are pass-through edges (weight 1) and absent edges (0).
struct GadgetNetwork {
  Network net;
  ShiftSpec shift;
  ParamVector nominal;
  double delta = 0.0;
  std::vector<double> cfx_input;  // the fixed input the reduction asks about

  // Flat indices of the per-variable main inputs: a_i in [0, 2 delta] and
  // b_i in [1/delta - 2 delta, 1/delta].
  std::vector<std::size_t> main_a;
  std::vector<std::size_t> main_b;

  std::size_t n_vars = 0;
  std::size_t n_clauses = 0;

  // Nominal realization with a_i = delta for true variables, 0 for false.
  ParamVector realization_for(const std::vector<bool>& assignment) const;
  double output_for(const std::vector<bool>& assignment) const;
};

// Full construction for `cnf`: generating gadgets (one chi-hat and one
// chi-tilde per occurrence per variable), discretizers, negations, clause
// gadgets, conjunction and the end gadget
// z = n~ + c~ + 1/2 - (n + m). Requires 0 < delta < 2/25.
GadgetNetwork build_reduction(const Cnf& cnf, double delta);

// Stand-alone gadgets, built from the same neuron recipes as the full network
// but reading their inputs from the network input.
GadgetNetwork generating_gadget(double delta);             // x = [1] -> chi
GadgetNetwork discretizer_gadget(double delta);            // x = [chi-hat] -> y-hat
GadgetNetwork negation_gadget(double delta);               // x = [chi-tilde] -> 1 - chi-tilde
GadgetNetwork clause_gadget(double delta);                 // x = [l1, l2, l3] -> c
GadgetNetwork conjunction_gadget(std::size_t m, double delta);  // x = [c_1..c_m] -> c~
GadgetNetwork end_gadget(std::size_t n, std::size_t m, double delta);  // x = [n~, c~] -> z

// Clause output bounds when every literal lies in [0, 2d] U [1 - 2d, 1].
double clause_low_bound_stated(double delta);  // 8d + 2d^2, holds at nominal weights
double clause_low_bound_tight(double delta);   // 8d + 12d^2, holds for every realization
double clause_high_bound(double delta);        // 1 - 4d - 4d^2

struct EquivalenceReport {
  bool satisfiable = false;
  bool realizable = false;  // some assignment-driven realization gives z = 1/2
  std::optional<std::vector<bool>> sat_assignment;
  std::optional<std::vector<bool>> realizing_assignment;
  bool agree() const { return satisfiable == realizable; }
};

inline constexpr int kMaxEquivalenceVars = 6;
inline constexpr double kEndTolerance = 1e-9;

// Brute-force SAT against the constructive realization search (n_vars <= 6).
EquivalenceReport check_equivalence_report(const Cnf& cnf, double delta);
bool check_equivalence(const Cnf& cnf, double delta);

// All 3-CNFs over exactly `n_vars` variables with 1..max_clauses clauses,
// clauses taken as multisets of literals and formulas as multisets of
// clauses, for n_vars = 1..max_vars.
std::vector<Cnf> canonical_formulas(int max_vars, std::size_t max_clauses);
Cnf random_cnf(std::uint64_t seed, int n_vars, std::size_t n_clauses);

// Numeric checks of the gadget contracts at `delta`. Nominal checks evaluate
// the upper-endpoint realization; "all realizations" checks use interval
// propagation over the gadget's parameter box.
struct LemmaCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};
std::vector<LemmaCheck> lemma_checks(double delta);

// Model document for a gadget network: the center network, with the mask and
// {delta, halfwidths, nominal, main_inputs, cfx_input} in the metadata.
Network gadget_to_model(const GadgetNetwork& g);

}  // namespace shiftcert
