#include "shiftcert/reduction.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "shiftcert/error.hpp"
#include "shiftcert/interval.hpp"
#include "shiftcert/rng.hpp"

namespace shiftcert {

Cnf parse_dimacs(std::string_view text) {
  Cnf cnf;
  bool have_header = false;
  std::size_t declared = 0;
  std::vector<int> pending;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c") continue;
    if (tok == "%") break;
    if (tok == "p") {
      std::string fmt;
      long v = -1, c = -1;
      if (have_header || !(ls >> fmt >> v >> c) || fmt != "cnf" || v < 1 || c < 0 || (ls >> tok)) {
        throw ParseError("malformed problem line, expected 'p cnf <vars> <clauses>'", line_no, "header");
      }
      have_header = true;
      cnf.n_vars = static_cast<int>(v);
      declared = static_cast<std::size_t>(c);
      continue;
    }
    if (!have_header) throw ParseError("clause before the problem line", line_no, "");
    do {
      char* end = nullptr;
      const long lit = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0' || end == tok.c_str()) throw ParseError("bad literal '" + tok + "'", line_no, "");
      if (lit == 0) {
        if (pending.size() != 3) {
          throw ParseError("clause " + std::to_string(cnf.clauses.size() + 1) + " has " +
                               std::to_string(pending.size()) + " literals, expected 3",
                           line_no, "");
        }
        cnf.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      if (std::labs(lit) > cnf.n_vars) {
        throw ParseError("literal " + tok + " out of range for " + std::to_string(cnf.n_vars) + " variables", line_no,
                         "");
      }
      pending.push_back(static_cast<int>(lit));
    } while (ls >> tok);
  }
  if (!have_header) throw ParseError("missing problem line", 0, "header");
  if (!pending.empty()) throw ParseError("last clause is not terminated by 0", line_no, "");
  if (cnf.clauses.size() != declared) {
    throw ParseError("header declares " + std::to_string(declared) + " clauses, found " +
                         std::to_string(cnf.clauses.size()),
                     0, "header");
  }
  return cnf;
}

std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.n_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
  return out.str();
}

bool satisfies(const Cnf& cnf, const std::vector<bool>& assignment) {
  for (const auto& clause : cnf.clauses) {
    bool sat = false;
    for (int lit : clause) sat = sat || assignment[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0);
    if (!sat) return false;
  }
  return true;
}

std::optional<std::vector<bool>> brute_force_sat(const Cnf& cnf) {
  if (cnf.n_vars > 30) throw DomainError("brute-force SAT limited to 30 variables");
  std::vector<bool> a(static_cast<std::size_t>(cnf.n_vars));
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cnf.n_vars); ++bits) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = (bits >> i) & 1;
    if (satisfies(cnf, a)) return a;
  }
  return std::nullopt;
}

double clause_separation_limit() { return (-12.0 + std::sqrt(144.0 + 64.0)) / 32.0; }

double clause_low_bound_stated(double d) { return 8.0 * d + 2.0 * d * d; }
double clause_low_bound_tight(double d) { return 8.0 * d + 12.0 * d * d; }
double clause_high_bound(double d) { return 1.0 - 4.0 * d - 4.0 * d * d; }

namespace {

// A parameter of the gadget network: perturbed ones range over [v - 2d, v].
struct Param {
  double v = 0.0;
  bool perturbed = false;
};

Param P(double v) { return {v, true}; }
Param F(double v) { return {v, false}; }

enum class Tag { None, MainA, MainB };

struct Edge {
  std::size_t src;
  Param w;
  Tag tag = Tag::None;
  std::size_t var = 0;
};

struct Neuron {
  std::vector<Edge> in;
  Param bias = F(0.0);
};

// Collects neurons layer by layer and lays them out as dense layers.
class Builder {
 public:
  Builder(std::size_t input_dim, double delta) : input_dim_(input_dim), delta_(delta) {}

  void layer(Activation act) {
    layers_.emplace_back();
    acts_.push_back(act);
  }
  std::size_t add(Neuron n) {
    layers_.back().push_back(std::move(n));
    return layers_.back().size() - 1;
  }

  GadgetNetwork finish(std::size_t n_vars, std::size_t n_clauses, std::vector<double> cfx_input) const {
    std::vector<DenseLayer> dense;
    std::vector<double> center, nominal;
    std::vector<bool> mask;
    std::vector<std::size_t> main_a(n_vars), main_b(n_vars);
    std::size_t in = input_dim_;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      DenseLayer L;
      L.rows = layers_[l].size();
      L.cols = in;
      L.activation = acts_[l];
      std::vector<Param> w(L.rows * L.cols, F(0.0));
      std::vector<Param> b(L.rows);
      const std::size_t base = center.size();
      for (std::size_t r = 0; r < L.rows; ++r) {
        const Neuron& nr = layers_[l][r];
        for (const Edge& e : nr.in) {
          if (e.src >= in) throw Error("gadget edge refers to a missing source neuron");
          w[r * in + e.src] = e.w;
          if (e.tag == Tag::MainA) main_a[e.var] = base + r * in + e.src;
          if (e.tag == Tag::MainB) main_b[e.var] = base + r * in + e.src;
        }
        b[r] = nr.bias;
      }
      auto emit = [&](const std::vector<Param>& ps, std::vector<double>& dst) {
        for (const Param& p : ps) {
          const double c = p.perturbed ? p.v - delta_ : p.v;
          dst.push_back(c);
          center.push_back(c);
          nominal.push_back(p.v);
          mask.push_back(p.perturbed);
        }
      };
      emit(w, L.weights);
      emit(b, L.biases);
      dense.push_back(std::move(L));
      in = dense.back().rows;
    }
    GadgetNetwork g{Network(input_dim_, std::move(dense)), ShiftSpec{delta_, std::move(mask)},
                    ParamVector{std::move(nominal)}, delta_, std::move(cfx_input), std::move(main_a),
                    std::move(main_b), n_vars, n_clauses};
    return g;
  }

 private:
  std::size_t input_dim_;
  double delta_;
  std::vector<std::vector<Neuron>> layers_;
  std::vector<Activation> acts_;
};

// Neuron recipes shared by the full construction and the stand-alone gadgets.

Neuron carry(std::size_t src) { return {{Edge{src, F(1.0)}}, F(0.0)}; }

Neuron main_a(std::size_t src, std::size_t var, double d) { return {{Edge{src, P(2.0 * d), Tag::MainA, var}}, F(0.0)}; }
Neuron main_b(std::size_t src, std::size_t var, double d) { return {{Edge{src, P(1.0 / d), Tag::MainB, var}}, F(0.0)}; }

// r = ReLU(g - 1); chi = ReLU(p - r) = min(g, 1) at nominal weights.
Neuron gen_excess(std::size_t g) { return {{Edge{g, P(1.0)}}, P(-1.0)}; }
Neuron gen_chi(std::size_t p, std::size_t r) { return {{Edge{p, P(1.0)}, Edge{r, P(-1.0)}}, F(0.0)}; }

Neuron scaled_copy(std::size_t src) { return {{Edge{src, P(1.0)}}, F(0.0)}; }

// Discretizer: y = ReLU(1 - chi + 2 ReLU(chi - 1/2)) is 1 exactly on {0, 1}.
Neuron disc_half(std::size_t chi) { return {{Edge{chi, P(1.0)}}, P(-0.5)}; }
Neuron disc_out(std::size_t dc, std::size_t s1, std::size_t s2) {
  return {{Edge{dc, P(-1.0)}, Edge{s1, P(1.0)}, Edge{s2, P(1.0)}}, P(1.0)};
}

Neuron negation(std::size_t src) { return {{Edge{src, P(-1.0)}}, P(1.0)}; }

// q = ReLU(1 - sum of literals); c = ReLU(1 - q).
Neuron clause_q(std::array<std::size_t, 3> lits) {
  return {{Edge{lits[0], P(-1.0)}, Edge{lits[1], P(-1.0)}, Edge{lits[2], P(-1.0)}}, P(1.0)};
}
Neuron clause_c(std::size_t q) { return {{Edge{q, P(-1.0)}}, P(1.0)}; }

Neuron sum_of(const std::vector<std::size_t>& srcs) {
  Neuron n;
  for (std::size_t s : srcs) n.in.push_back(Edge{s, P(1.0)});
  return n;
}

Neuron end_z(std::size_t nt, std::size_t ct, std::size_t n, std::size_t m) {
  return {{Edge{nt, P(1.0)}, Edge{ct, P(1.0)}}, P(0.5 - static_cast<double>(n + m))};
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < kReductionDeltaLimit)) {
    throw DomainError("reduction delta must lie in (0, 2/25)");
  }
}

}  // namespace

ParamVector GadgetNetwork::realization_for(const std::vector<bool>& assignment) const {
  if (assignment.size() != n_vars) throw DimensionError("assignment size differs from the variable count");
  ParamVector p = nominal;
  for (std::size_t i = 0; i < n_vars; ++i) p[main_a[i]] = assignment[i] ? delta : 0.0;
  return p;
}

double GadgetNetwork::output_for(const std::vector<bool>& assignment) const {
  ForwardWorkspace ws;
  return forward_with_params(net, realization_for(assignment).values, cfx_input, ws);
}

GadgetNetwork build_reduction(const Cnf& cnf, double delta) {
  check_delta(delta);
  if (cnf.n_vars < 1 || cnf.clauses.empty()) throw DomainError("reduction needs at least one variable and clause");
  const std::size_t n = static_cast<std::size_t>(cnf.n_vars);
  const std::size_t m = cnf.clauses.size();
  Builder b(1, delta);

  std::vector<std::size_t> g1(n), g2(n), p(n), r(n), chi(n), hat(n), dc(n), s1(n), s2(n), yhat(n);
  b.layer(Activation::Relu);
  for (std::size_t i = 0; i < n; ++i) g1[i] = b.add(main_a(0, i, delta));
  b.layer(Activation::Relu);
  for (std::size_t i = 0; i < n; ++i) g2[i] = b.add(main_b(g1[i], i, delta));
  b.layer(Activation::Relu);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = b.add(carry(g2[i]));
    r[i] = b.add(gen_excess(g2[i]));
  }
  b.layer(Activation::Relu);
  for (std::size_t i = 0; i < n; ++i) chi[i] = b.add(gen_chi(p[i], r[i]));

  // chi-hat per variable, chi-tilde per literal occurrence.
  std::vector<std::array<std::size_t, 3>> tilde(m), lit(m);
  b.layer(Activation::Relu);
  for (std::size_t i = 0; i < n; ++i) hat[i] = b.add(scaled_copy(chi[i]));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < 3; ++k) {
      tilde[j][k] = b.add(scaled_copy(chi[static_cast<std::size_t>(std::abs(cnf.clauses[j][k]) - 1)]));
    }
  }
  b.layer(Activation::Relu);
  for (std::size_t i = 0; i < n; ++i) {
    dc[i] = b.add(carry(hat[i]));
    s1[i] = b.add(disc_half(hat[i]));
    s2[i] = b.add(disc_half(hat[i]));
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < 3; ++k) {
      lit[j][k] = b.add(cnf.clauses[j][k] > 0 ? carry(tilde[j][k]) : negation(tilde[j][k]));
    }
  }
  std::vector<std::size_t> q(m), c(m);
  b.layer(Activation::Relu);
  for (std::size_t i = 0; i < n; ++i) yhat[i] = b.add(disc_out(dc[i], s1[i], s2[i]));
  for (std::size_t j = 0; j < m; ++j) q[j] = b.add(clause_q(lit[j]));
  b.layer(Activation::Relu);
  const std::size_t ntilde = b.add(sum_of(yhat));
  for (std::size_t j = 0; j < m; ++j) c[j] = b.add(clause_c(q[j]));
  b.layer(Activation::Relu);
  const std::size_t ntilde2 = b.add(carry(ntilde));
  const std::size_t ctilde = b.add(sum_of(c));
  b.layer(Activation::Identity);
  b.add(end_z(ntilde2, ctilde, n, m));
  return b.finish(n, m, {1.0});
}

GadgetNetwork generating_gadget(double delta) {
  check_delta(delta);
  Builder b(1, delta);
  b.layer(Activation::Relu);
  b.add(main_a(0, 0, delta));
  b.layer(Activation::Relu);
  b.add(main_b(0, 0, delta));
  b.layer(Activation::Relu);
  const std::size_t p = b.add(carry(0));
  const std::size_t r = b.add(gen_excess(0));
  b.layer(Activation::Relu);
  b.add(gen_chi(p, r));
  return b.finish(1, 0, {1.0});
}

GadgetNetwork discretizer_gadget(double delta) {
  check_delta(delta);
  Builder b(1, delta);
  b.layer(Activation::Relu);
  const std::size_t dc = b.add(carry(0));
  const std::size_t s1 = b.add(disc_half(0));
  const std::size_t s2 = b.add(disc_half(0));
  b.layer(Activation::Relu);
  b.add(disc_out(dc, s1, s2));
  return b.finish(0, 0, {});
}

GadgetNetwork negation_gadget(double delta) {
  check_delta(delta);
  Builder b(1, delta);
  b.layer(Activation::Relu);
  b.add(negation(0));
  return b.finish(0, 0, {});
}

GadgetNetwork clause_gadget(double delta) {
  check_delta(delta);
  Builder b(3, delta);
  b.layer(Activation::Relu);
  const std::size_t q = b.add(clause_q({0, 1, 2}));
  b.layer(Activation::Relu);
  b.add(clause_c(q));
  return b.finish(0, 1, {});
}

GadgetNetwork conjunction_gadget(std::size_t m, double delta) {
  check_delta(delta);
  if (m == 0) throw DomainError("conjunction needs at least one clause");
  Builder b(m, delta);
  std::vector<std::size_t> srcs(m);
  for (std::size_t j = 0; j < m; ++j) srcs[j] = j;
  b.layer(Activation::Relu);
  b.add(sum_of(srcs));
  return b.finish(0, m, {});
}

GadgetNetwork end_gadget(std::size_t n, std::size_t m, double delta) {
  check_delta(delta);
  Builder b(2, delta);
  b.layer(Activation::Identity);
  b.add(end_z(0, 1, n, m));
  return b.finish(0, m, {});
}

EquivalenceReport check_equivalence_report(const Cnf& cnf, double delta) {
  if (cnf.n_vars > kMaxEquivalenceVars) {
    throw DomainError("equivalence check limited to " + std::to_string(kMaxEquivalenceVars) + " variables");
  }
  EquivalenceReport rep;
  rep.sat_assignment = brute_force_sat(cnf);
  rep.satisfiable = rep.sat_assignment.has_value();

  const GadgetNetwork g = build_reduction(cnf, delta);
  const std::size_t n = static_cast<std::size_t>(cnf.n_vars);
  std::vector<bool> a(n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    for (std::size_t i = 0; i < n; ++i) a[i] = (bits >> i) & 1;
    if (std::abs(g.output_for(a) - 0.5) <= kEndTolerance) {
      rep.realizable = true;
      rep.realizing_assignment = a;
      break;
    }
  }
  return rep;
}

bool check_equivalence(const Cnf& cnf, double delta) { return check_equivalence_report(cnf, delta).agree(); }

std::vector<Cnf> canonical_formulas(int max_vars, std::size_t max_clauses) {
  std::vector<Cnf> out;
  for (int n = 1; n <= max_vars; ++n) {
    std::vector<int> lits;
    for (int v = 1; v <= n; ++v) {
      lits.push_back(v);
      lits.push_back(-v);
    }
    std::vector<std::array<int, 3>> clauses;
    for (std::size_t a = 0; a < lits.size(); ++a)
      for (std::size_t b = a; b < lits.size(); ++b)
        for (std::size_t c = b; c < lits.size(); ++c) clauses.push_back({lits[a], lits[b], lits[c]});
    // Non-decreasing index sequences enumerate multisets of clauses.
    for (std::size_t m = 1; m <= max_clauses; ++m) {
      std::vector<std::size_t> idx(m, 0);
      while (true) {
        Cnf f{n, {}};
        for (std::size_t i : idx) f.clauses.push_back(clauses[i]);
        out.push_back(std::move(f));
        std::size_t k = m;
        while (k > 0 && idx[k - 1] == clauses.size() - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < m; ++j) idx[j] = idx[k - 1];
      }
    }
  }
  return out;
}

Cnf random_cnf(std::uint64_t seed, int n_vars, std::size_t n_clauses) {
  if (n_vars < 1) throw DomainError("random formula needs at least one variable");
  Rng rng(seed, 0xc7u);
  Cnf f{n_vars, {}};
  for (std::size_t j = 0; j < n_clauses; ++j) {
    std::array<int, 3> c{};
    for (int& lit : c) {
      lit = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_vars)));
      if (rng.below(2) == 1) lit = -lit;
    }
    f.clauses.push_back(c);
  }
  return f;
}

namespace {

double nominal_out(const GadgetNetwork& g, std::vector<double> x) {
  ForwardWorkspace ws;
  return forward_with_params(g.net, g.nominal.values, x, ws);
}

Interval range_out(const GadgetNetwork& g, std::vector<double> x) {
  IntervalWorkspace ws;
  return propagate_box(g.net, shift_box(g.net, g.shift), x, ws);
}

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(10);
  o << v;
  return o.str();
}

}  // namespace

std::vector<LemmaCheck> lemma_checks(double d) {
  constexpr double eps = 1e-12;
  std::vector<LemmaCheck> out;

  {
    const GadgetNetwork g = generating_gadget(d);
    ForwardWorkspace ws;
    ParamVector on = g.nominal, off = g.nominal;
    on[g.main_a[0]] = d;
    off[g.main_a[0]] = 0.0;
    const double t = forward_with_params(g.net, on.values, g.cfx_input, ws);
    const double f = forward_with_params(g.net, off.values, g.cfx_input, ws);
    out.push_back({"generating: main inputs (d, 1/d) -> 1, (0, 1/d) -> 0",
                   std::abs(t - 1.0) <= 1e-9 && f == 0.0, "true=" + fmt(t) + " false=" + fmt(f)});
  }
  {
    const GadgetNetwork g = discretizer_gadget(d);
    const double y0 = nominal_out(g, {0.0}), y1 = nominal_out(g, {1.0});
    double worst = 0.0;
    for (int i = 1; i <= 100; ++i) worst = std::max(worst, nominal_out(g, {i / 101.0}));
    out.push_back({"discretizer: y = 1 on {0, 1}, y < 1 on 100 interior points",
                   std::abs(y0 - 1.0) <= eps && std::abs(y1 - 1.0) <= eps && worst < 1.0,
                   "y(0)=" + fmt(y0) + " y(1)=" + fmt(y1) + " max interior=" + fmt(worst)});
  }
  {
    const GadgetNetwork g = negation_gadget(d);
    bool ok = true;
    std::string detail;
    const Interval z = range_out(g, {0.0});
    ok = ok && z.lo >= 1.0 - 2.0 * d - eps && z.hi <= 1.0 + eps;
    detail = "in=0 -> [" + fmt(z.lo) + ", " + fmt(z.hi) + "]";
    for (int i = 0; i <= 20; ++i) {
      const double in = 1.0 - 2.0 * d + 2.0 * d * i / 20.0;
      const Interval r = range_out(g, {in});
      ok = ok && r.lo >= -eps && r.hi <= 2.0 * d + eps;
    }
    out.push_back({"negation: 0 -> [1-2d, 1], [1-2d, 1] -> [0, 2d] (all realizations)", ok, detail});
  }
  {
    const GadgetNetwork g = clause_gadget(d);
    const std::array<double, 3> low{0.0, d, 2.0 * d}, high{1.0 - 2.0 * d, 1.0 - d, 1.0};
    double low_nominal = 0.0, low_range = 0.0, high_lo = 1.0, high_hi = 0.0;
    for (int pattern = 0; pattern < 8; ++pattern) {
      for (int combo = 0; combo < 27; ++combo) {
        std::vector<double> x(3);
        int c = combo;
        for (int k = 0; k < 3; ++k, c /= 3) x[k] = ((pattern >> k) & 1) ? high[c % 3] : low[c % 3];
        const Interval r = range_out(g, x);
        if (pattern == 0) {
          low_nominal = std::max(low_nominal, nominal_out(g, x));
          low_range = std::max(low_range, r.hi);
        } else {
          high_lo = std::min(high_lo, std::max(r.lo, 0.0));
          high_hi = std::max(high_hi, r.hi);
        }
      }
    }
    out.push_back({"clause: all literals low -> c <= 8d + 2d^2 (nominal weights)",
                   low_nominal <= clause_low_bound_stated(d) + eps,
                   "max=" + fmt(low_nominal) + " bound=" + fmt(clause_low_bound_stated(d))});
    out.push_back({"clause: all literals low -> c <= 8d + 12d^2 (all realizations)",
                   low_range <= clause_low_bound_tight(d) + eps,
                   "max=" + fmt(low_range) + " bound=" + fmt(clause_low_bound_tight(d))});
    out.push_back({"clause: some literal high -> c in [1 - 4d - 4d^2, 1] (all realizations)",
                   high_lo >= clause_high_bound(d) - eps && high_hi <= 1.0 + eps,
                   "range=[" + fmt(high_lo) + ", " + fmt(high_hi) + "] bound=" + fmt(clause_high_bound(d))});
  }
  {
    const double g79 = 0.079;
    out.push_back({"conjunction: separation 8d + 2d^2 < 1 - 4d - 4d^2 at d = 0.079",
                   clause_low_bound_stated(g79) < clause_high_bound(g79),
                   fmt(clause_low_bound_stated(g79)) + " < " + fmt(clause_high_bound(g79))});
    out.push_back({"conjunction: separation 8d + 12d^2 < 1 - 4d - 4d^2 at d",
                   clause_low_bound_tight(d) < clause_high_bound(d),
                   fmt(clause_low_bound_tight(d)) + " < " + fmt(clause_high_bound(d))});
    bool ok = true;
    for (std::size_t m = 1; m <= 4; ++m) {
      const GadgetNetwork g = conjunction_gadget(m, d);
      for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
        std::vector<double> x(m);
        for (std::size_t j = 0; j < m; ++j) x[j] = (bits >> j) & 1;
        const bool all = bits == (1u << m) - 1;
        ok = ok && (std::abs(nominal_out(g, x) - static_cast<double>(m)) <= eps) == all;
      }
    }
    out.push_back({"conjunction: c~ = m iff every clause output is 1 (m <= 4)", ok, ""});
  }
  {
    bool ok = true;
    for (std::size_t n = 1; n <= 4; ++n) {
      for (std::size_t m = 1; m <= 4; ++m) {
        const GadgetNetwork g = end_gadget(n, m, d);
        for (std::size_t a = 0; a <= n; ++a) {
          for (std::size_t c = 0; c <= m; ++c) {
            const double z = nominal_out(g, {static_cast<double>(a), static_cast<double>(c)});
            ok = ok && (std::abs(z - 0.5) <= eps) == (a == n && c == m);
          }
        }
      }
    }
    out.push_back({"end: z = 1/2 iff n~ = n and c~ = m (n, m <= 4)", ok, ""});
  }
  return out;
}

Network gadget_to_model(const GadgetNetwork& g) {
  Network net = g.net;
  ModelMetadata& md = net.metadata();
  md.name = "sat-reduction";
  md.perturbation_mask = g.shift.mask;
  std::vector<double> halfwidths(g.shift.mask.size());
  for (std::size_t i = 0; i < halfwidths.size(); ++i) halfwidths[i] = g.shift.mask[i] ? g.delta : 0.0;
  md.extra = {
      {"delta", g.delta},
      {"halfwidths", halfwidths},
      {"nominal", g.nominal.values},
      {"main_inputs", {{"a", g.main_a}, {"b", g.main_b}}},
      {"cfx_input", g.cfx_input},
      {"n_vars", g.n_vars},
      {"n_clauses", g.n_clauses},
  };
  return net;
}

}  // namespace shiftcert
