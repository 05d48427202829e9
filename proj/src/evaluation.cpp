#include "shiftcert/evaluation.hpp"

#include <cmath>
#include <numeric>

#include "shiftcert/error.hpp"
#include "shiftcert/rng.hpp"
#include "shiftcert/sampling.hpp"

namespace shiftcert {
namespace {

// Per-example forward pass keeping every layer's post-activation values.
void forward_trace(const Network& net, std::span<const double> x, std::vector<std::vector<double>>& acts) {
  const auto& layers = net.layers();
  acts.resize(layers.size() + 1);
  acts[0].assign(x.begin(), x.end());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const DenseLayer& L = layers[l];
    acts[l + 1].resize(L.rows);
    for (std::size_t r = 0; r < L.rows; ++r) {
      double s = L.biases[r];
      for (std::size_t c = 0; c < L.cols; ++c) s += L.weight(r, c) * acts[l][c];
      acts[l + 1][r] = activate(L.activation, s);
    }
  }
}

}  // namespace

std::string_view to_string(ShiftedTraining t) { return t == ShiftedTraining::Retrain ? "retrain" : "finetune"; }

ShiftedTraining shifted_training_from_string(std::string_view s) {
  if (s == "retrain") return ShiftedTraining::Retrain;
  if (s == "finetune") return ShiftedTraining::FineTune;
  throw DomainError("unknown shifted-training mode '" + std::string(s) + "' (expected retrain or finetune)");
}

Network init_network(std::size_t input_dim, const TrainConfig& cfg) {
  if (input_dim == 0) throw DimensionError("input dimension must be positive");
  Rng rng(cfg.seed, 0x7au);
  std::vector<DenseLayer> layers;
  std::size_t in = input_dim;
  std::vector<std::size_t> sizes = cfg.hidden;
  sizes.push_back(1);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    DenseLayer L;
    L.rows = sizes[i];
    L.cols = in;
    const bool last = i + 1 == sizes.size();
    L.activation = last ? Activation::Sigmoid : Activation::Relu;
    const double limit = last ? std::sqrt(6.0 / static_cast<double>(in + L.rows)) : std::sqrt(6.0 / static_cast<double>(in));
    L.weights.resize(L.rows * L.cols);
    for (double& w : L.weights) w = rng.uniform(-limit, limit);
    L.biases.assign(L.rows, 0.0);
    layers.push_back(std::move(L));
    in = sizes[i];
  }
  return Network(input_dim, std::move(layers));
}

double accuracy(const Network& net, const Dataset& data) {
  if (data.size() == 0) return 0.0;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < data.size(); ++i) ok += (is_positive(forward(net, data.row(i))) ? 1 : 0) == data.labels[i];
  return static_cast<double>(ok) / static_cast<double>(data.size());
}

TrainResult train(const Dataset& data, const TrainConfig& cfg) {
  if (data.size() == 0) throw DomainError("cannot train on an empty dataset");
  if (cfg.batch_size == 0) throw DomainError("batch size must be positive");
  Network net = cfg.warm_start ? *cfg.warm_start : init_network(data.dim, cfg);
  if (net.input_dim() != data.dim) throw DimensionError("warm-start model does not match the dataset dimension");
  std::vector<DenseLayer> layers = net.layers();
  const std::size_t L = layers.size();

  std::vector<std::vector<double>> gw(L), gb(L), acts, deltas(L);
  for (std::size_t l = 0; l < L; ++l) {
    gw[l].assign(layers[l].weights.size(), 0.0);
    gb[l].assign(layers[l].biases.size(), 0.0);
  }
  std::vector<std::size_t> order(data.size());
  double epoch_loss = 0.0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(epoch)), 0x5bu);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      for (std::size_t l = 0; l < L; ++l) {
        std::fill(gw[l].begin(), gw[l].end(), 0.0);
        std::fill(gb[l].begin(), gb[l].end(), 0.0);
      }
      const Network cur(data.dim, layers);
      for (std::size_t b = start; b < end; ++b) {
        const std::size_t i = order[b];
        forward_trace(cur, data.row(i), acts);
        const double p = acts[L][0];
        const double y = static_cast<double>(data.labels[i]);
        const double pc = std::min(std::max(p, 1e-12), 1.0 - 1e-12);
        epoch_loss -= y * std::log(pc) + (1.0 - y) * std::log(1.0 - pc);

        deltas[L - 1].assign(1, p - y);  // sigmoid + logistic loss
        for (std::size_t l = L; l-- > 0;) {
          const DenseLayer& D = layers[l];
          for (std::size_t r = 0; r < D.rows; ++r) {
            const double d = deltas[l][r];
            gb[l][r] += d;
            for (std::size_t c = 0; c < D.cols; ++c) gw[l][r * D.cols + c] += d * acts[l][c];
          }
          if (l == 0) break;
          deltas[l - 1].assign(D.cols, 0.0);
          for (std::size_t c = 0; c < D.cols; ++c) {
            if (acts[l][c] <= 0.0) continue;  // ReLU derivative
            double s = 0.0;
            for (std::size_t r = 0; r < D.rows; ++r) s += D.weight(r, c) * deltas[l][r];
            deltas[l - 1][c] = s;
          }
        }
      }
      const double scale = cfg.learning_rate / static_cast<double>(end - start);
      for (std::size_t l = 0; l < L; ++l) {
        for (std::size_t j = 0; j < gw[l].size(); ++j) layers[l].weights[j] -= scale * gw[l][j];
        for (std::size_t j = 0; j < gb[l].size(); ++j) layers[l].biases[j] -= scale * gb[l][j];
      }
    }
    epoch_loss /= static_cast<double>(data.size());
    if (!std::isfinite(epoch_loss)) {
      throw DomainError("training diverged at epoch " + std::to_string(epoch) + " (non-finite loss)");
    }
  }

  TrainResult res{Network(data.dim, std::move(layers)), 0.0, epoch_loss, cfg.epochs};
  res.net.metadata() = net.metadata();
  res.net.metadata().feature_names = data.feature_names;
  res.accuracy = accuracy(res.net, data);
  return res;
}

std::pair<double, double> vm_metrics(const std::vector<std::vector<double>>& cfxs, const Network& base,
                                     const Network& shifted) {
  if (cfxs.empty()) return {0.0, 0.0};
  std::size_t v1 = 0, v2 = 0;
  for (const auto& c : cfxs) {
    v1 += is_positive(forward(base, c)) ? 1 : 0;
    v2 += is_positive(forward(shifted, c)) ? 1 : 0;
  }
  const double n = static_cast<double>(cfxs.size());
  return {100.0 * static_cast<double>(v1) / n, 100.0 * static_cast<double>(v2) / n};
}

double delta_e(const Network& base, const Network& shifted) {
  return param_distance(base.flatten(), shifted.flatten(), NormOrder::Inf);
}

EvalReport evaluate_cfxs(const std::vector<std::vector<double>>& inputs, const std::vector<std::vector<double>>& cfxs,
                         const Network& base, const Network& shifted, const Dataset& reference, std::size_t lof_k,
                         double lof_threshold) {
  if (inputs.size() != cfxs.size()) throw DimensionError("inputs and counterfactuals differ in count");
  EvalReport rep;
  rep.requested = inputs.size();
  rep.delta_e = delta_e(base, shifted);
  std::vector<std::vector<double>> present;
  double l1_sum = 0.0;
  for (std::size_t i = 0; i < cfxs.size(); ++i) {
    if (cfxs[i].empty()) continue;
    present.push_back(cfxs[i]);
    l1_sum += vector_distance(inputs[i], cfxs[i], NormOrder::L1);
  }
  rep.generated = present.size();
  if (present.empty()) return rep;
  std::tie(rep.vm1, rep.vm2) = vm_metrics(present, base, shifted);
  rep.mean_l1 = l1_sum / static_cast<double>(present.size());
  const LocalOutlierFactor lof(reference, lof_k);
  double lof_sum = 0.0;
  for (const auto& c : present) lof_sum += lof_label(lof.score(c), lof_threshold);
  rep.mean_lof = lof_sum / static_cast<double>(present.size());
  return rep;
}

ProtocolOutput run_shift_protocol(const Dataset& data, const ProtocolConfig& cfg) {
  auto [d1, d2] = split_halves(data, cfg.train.seed);
  TrainResult base = train(d1, cfg.train);
  TrainConfig shifted_cfg = cfg.train;
  if (cfg.shifted == ShiftedTraining::FineTune) {
    shifted_cfg.warm_start = base.net;
    shifted_cfg.epochs = cfg.finetune_epochs;
  }
  TrainResult shifted = train(concat(d1, d2), shifted_cfg);

  ProtocolOutput out{{}, base.net, shifted.net, {}, {}};
  std::vector<std::vector<double>> cfxs;
  for (std::size_t i = 0; i < d1.size() && out.inputs.size() < cfg.n_cfx; ++i) {
    if (is_positive(forward(base.net, d1.row(i)))) continue;
    CfxRequest req = cfg.request;
    req.x.assign(d1.row(i).begin(), d1.row(i).end());
    req.seed = derive_seed(cfg.request.seed, i);
    CfxResult r = generate_robust_cfx(req, base.net, d1);
    out.inputs.push_back(req.x);
    cfxs.push_back(r.found ? r.x_prime : std::vector<double>{});
    out.results.push_back(std::move(r));
  }
  out.report = evaluate_cfxs(out.inputs, cfxs, base.net, shifted.net, d1, cfg.lof_k, cfg.lof_threshold);
  out.report.base_accuracy = base.accuracy;
  out.report.shifted_accuracy = shifted.accuracy;
  return out;
}

std::vector<NomsRow> noms_compare(const Network& base, const std::vector<std::vector<double>>& cfxs,
                                  const std::vector<double>& deltas, const std::vector<std::size_t>& n_list,
                                  std::uint64_t seed, const NomsOptions& opts) {
  if (cfxs.empty()) throw DomainError("noms-compare needs at least one counterfactual");
  std::vector<NomsRow> rows;
  std::uint64_t call = 0;
  for (double delta : deltas) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw DomainError("deltas must be finite and >= 0");
    const ShiftSpec shift = ShiftSpec::for_model(base, delta);
    for (std::size_t n : n_list) {
      if (n < 2) throw DomainError("noms-compare needs n >= 2 realizations");
      NomsRow row{delta, n, 0.0, 0.0};
      std::size_t rejected = 0;
      for (const auto& x : cfxs) {
        const double y0 = forward(base, x);
        const SampleStats s = sample_outputs(base, x, shift, n, derive_seed(seed, call++), opts.sampling);
        row.avg_diff += s.sum_abs_dev / static_cast<double>(n);
        // Constant outputs: use the exact value, not the rounded running sums.
        const bool constant = s.min == s.max;
        const double mean = constant ? s.min : s.mean();
        const double sd = constant ? 0.0 : sample_sd(n, s.sum, s.sum_sq);
        const TTestResult t = opts.two_sided ? one_sample_t_test(n, mean, sd, y0, Tail::TwoSided)
                                             : directional_t_test(n, mean, sd, y0);
        rejected += t.p_value < opts.significance ? 1 : 0;
      }
      row.avg_diff /= static_cast<double>(cfxs.size());
      row.rejection_pct = 100.0 * static_cast<double>(rejected) / static_cast<double>(cfxs.size());
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace shiftcert
