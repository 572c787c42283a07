#include "mimohi/robust_train.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace mimohi::robust {

using Eigen::Index;

void DnnHyper::validate() const {
  if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
  if (warmup < 0) throw std::invalid_argument("warmup must be non-negative");
  if (batches < 1) throw std::invalid_argument("batches must be at least 1");
  if (!(tau >= 0.0 && tau < 1.0)) throw std::invalid_argument("tau must lie in [0, 1)");
  if (!(ema_alpha >= 0.0 && ema_alpha <= 1.0)) {
    throw std::invalid_argument("ema_alpha must lie in [0, 1]");
  }
  if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("dnn eps must lie in [0, 1)");
  if (!(lr0 > 0.0)) throw std::invalid_argument("lr0 must be positive");
  if (hidden < 1 || hidden_layers < 0) throw std::invalid_argument("bad hidden layer sizes");
}

RealMatrix one_hot(const Labels& labels, std::size_t k_classes) {
  RealMatrix t = RealMatrix::Zero(static_cast<Index>(k_classes), static_cast<Index>(labels.size()));
  for (std::size_t n = 0; n < labels.size(); ++n) {
    if (labels[n] >= k_classes) throw std::invalid_argument("one_hot: label out of range");
    t(static_cast<Index>(labels[n]), static_cast<Index>(n)) = 1.0;
  }
  return t;
}

MdDataset build_md_dataset(const emnl::NoisyDataset& coarse,
                           const emnl::GaussianModelParams& md_params) {
  Labels labels = emnl::md_detect_all(coarse.y, md_params);
  RealMatrix targets = one_hot(labels, md_params.classes());
  return {std::move(labels), std::move(targets)};
}

double TargetStore::blend(std::size_t n, const RealVector& prediction, double alpha) {
  auto col = targets_.col(static_cast<Index>(n));
  col = alpha * prediction + (1.0 - alpha) * col;
  return col.maxCoeff();
}

std::vector<std::vector<std::size_t>> random_partition(std::size_t t, int count, RngStream& rng) {
  if (count < 1) throw std::invalid_argument("random_partition: need at least one batch");
  std::vector<std::size_t> order(t);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = t; i > 1; --i) {
    std::swap(order[i - 1], order[rng.uniform_index(i)]);
  }
  const auto parts = static_cast<std::size_t>(count);
  std::vector<std::vector<std::size_t>> out(parts);
  std::size_t pos = 0;
  for (std::size_t b = 0; b < parts; ++b) {
    const std::size_t len = t / parts + (b < t % parts ? 1 : 0);
    out[b].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                  order.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return out;
}

namespace {

RealMatrix gather(const RealMatrix& m, std::span<const std::size_t> idx) {
  RealMatrix out(m.rows(), static_cast<Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.col(static_cast<Index>(i)) = m.col(static_cast<Index>(idx[i]));
  }
  return out;
}

Labels column_argmax(const RealMatrix& probs) {
  Labels out(static_cast<std::size_t>(probs.cols()));
  for (Index c = 0; c < probs.cols(); ++c) {
    Index best = 0;
    for (Index k = 1; k < probs.rows(); ++k) {
      if (probs(k, c) > probs(best, c)) best = k;
    }
    out[static_cast<std::size_t>(c)] = static_cast<std::size_t>(best);
  }
  return out;
}

double agreement(const mlp::MlpState& state, const RealMatrix& features, const Labels& ref) {
  const Labels got = dd_detect_all(state, features);
  std::size_t same = 0;
  for (std::size_t n = 0; n < got.size(); ++n) same += got[n] == ref[n] ? 1 : 0;
  return got.empty() ? 0.0 : static_cast<double>(same) / static_cast<double>(got.size());
}

void finish_epoch(TrainLog* log, EpochStats stats, double loss_sum, std::size_t batches,
                  const mlp::MlpState& state, const RealMatrix& features) {
  if (log == nullptr) return;
  stats.mean_loss = batches == 0 ? 0.0 : loss_sum / static_cast<double>(batches);
  if (log->reference) stats.agreement = agreement(state, features, *log->reference);
  log->epochs.push_back(stats);
}

}  // namespace

BatchPartition select_samples(const mlp::MlpState& state, TargetStore& targets,
                              std::span<const std::size_t> batch, const RealMatrix& features,
                              double tau, double ema_alpha, double eps) {
  if (!(tau >= 0.0 && tau < 1.0)) throw std::invalid_argument("select_samples: tau in [0, 1)");
  BatchPartition part;
  part.batch.assign(batch.begin(), batch.end());
  if (batch.empty()) return part;

  const RealMatrix probs = mlp::forward_batch(state, gather(features, batch));
  std::vector<double> losses(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    losses[i] = mlp::loss_ce(targets.column(batch[i]), probs.col(static_cast<Index>(i)));
  }
  part.mean_loss = std::accumulate(losses.begin(), losses.end(), 0.0) /
                   static_cast<double>(batch.size());

  const auto n_false = static_cast<std::size_t>(
      std::floor(static_cast<double>(batch.size()) * tau));
  std::vector<std::size_t> rank(batch.size());
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  std::sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
    if (losses[a] != losses[b]) return losses[a] > losses[b];
    return batch[a] < batch[b];
  });
  std::vector<bool> is_false(batch.size(), false);
  for (std::size_t r = 0; r < n_false; ++r) is_false[rank[r]] = true;

  for (std::size_t i = 0; i < batch.size(); ++i) {
    const std::size_t n = batch[i];
    if (is_false[i]) {
      part.false_samples.push_back(n);
      continue;
    }
    const double omega = targets.blend(n, probs.col(static_cast<Index>(i)), ema_alpha);
    if (omega > 1.0 - eps) {
      part.clean.push_back(n);
    } else {
      part.reassignable.push_back(n);
      part.confidence.push_back(omega);
    }
  }
  return part;
}

bool corrected_update(mlp::MlpState& state, const BatchPartition& partition,
                      const TargetStore& targets, const RealMatrix& features, double lr) {
  std::vector<std::size_t> used = partition.clean;
  used.insert(used.end(), partition.reassignable.begin(), partition.reassignable.end());
  RealVector weights(static_cast<Index>(used.size()));
  const auto n_clean = static_cast<Index>(partition.clean.size());
  weights.head(n_clean).setOnes();
  for (std::size_t r = 0; r < partition.confidence.size(); ++r) {
    weights[n_clean + static_cast<Index>(r)] = partition.confidence[r];
  }
  if (used.empty() || !(weights.sum() > 0.0)) return false;
  const mlp::BatchEval eval = mlp::weighted_gradient(state, gather(features, used),
                                                     gather(targets.targets(), used), weights);
  mlp::adam_step(state, eval.gradient, lr);
  return true;
}

double uniform_update(mlp::MlpState& state, std::span<const std::size_t> batch,
                      const RealMatrix& targets, const RealMatrix& features, double lr) {
  if (batch.empty()) return 0.0;
  const mlp::BatchEval eval =
      mlp::weighted_gradient(state, gather(features, batch), gather(targets, batch), RealVector());
  mlp::adam_step(state, eval.gradient, lr);
  return eval.losses.mean();
}

void warmup_epochs(mlp::MlpState& state, const RealMatrix& targets, const RealMatrix& features,
                   const DnnHyper& hyper, int count, RngStream& rng, int first_epoch,
                   TrainLog* log) {
  const auto t = static_cast<std::size_t>(features.cols());
  for (int e = 0; e < count; ++e) {
    const int epoch = first_epoch + e;
    const double lr = mlp::lr_schedule(epoch, hyper.epochs, hyper.lr0);
    double loss_sum = 0.0;
    const auto parts = random_partition(t, hyper.batches, rng);
    for (const auto& batch : parts) {
      loss_sum += uniform_update(state, batch, targets, features, lr);
    }
    finish_epoch(log, EpochStats{epoch, lr}, loss_sum, parts.size(), state, features);
  }
}

mlp::MlpState make_detector_net(std::size_t features, std::size_t k_classes,
                                const DnnHyper& hyper, RngStream& rng) {
  std::vector<std::size_t> dims{features};
  for (int l = 0; l < hyper.hidden_layers; ++l) dims.push_back(static_cast<std::size_t>(hyper.hidden));
  dims.push_back(k_classes);
  return mlp::make_mlp(dims, rng);
}

mlp::MlpState train_dd(const MdDataset& data, const RealMatrix& features, const DnnHyper& hyper,
                       RngStream rng, TrainLog* log) {
  hyper.validate();
  if (static_cast<Index>(data.labels.size()) != features.cols() ||
      data.targets.cols() != features.cols()) {
    throw std::invalid_argument("train_dd: labels, targets and features disagree on T");
  }
  RngStream init_rng = rng.fork(1);
  RngStream shuffle_rng = rng.fork(2);
  mlp::MlpState state = make_detector_net(static_cast<std::size_t>(features.rows()),
                                          static_cast<std::size_t>(data.targets.rows()), hyper,
                                          init_rng);

  const int warm = std::min(hyper.warmup, hyper.epochs);
  warmup_epochs(state, data.targets, features, hyper, warm, shuffle_rng, 1, log);

  TargetStore targets(data.targets);
  const auto t = static_cast<std::size_t>(features.cols());
  for (int epoch = warm + 1; epoch <= hyper.epochs; ++epoch) {
    EpochStats stats{epoch, mlp::lr_schedule(epoch, hyper.epochs, hyper.lr0)};
    double loss_sum = 0.0;
    const auto parts = random_partition(t, hyper.batches, shuffle_rng);
    for (const auto& batch : parts) {
      const BatchPartition part = select_samples(state, targets, batch, features, hyper.tau,
                                                 hyper.ema_alpha, hyper.eps);
      corrected_update(state, part, targets, features, stats.lr);
      loss_sum += part.mean_loss;
      stats.false_count += part.false_samples.size();
      stats.clean_count += part.clean.size();
      stats.reassignable_count += part.reassignable.size();
    }
    finish_epoch(log, stats, loss_sum, parts.size(), state, features);
  }
  return state;
}

mlp::MlpState naive_train(const MdDataset& data, const RealMatrix& features,
                          const DnnHyper& hyper, RngStream rng, TrainLog* log) {
  DnnHyper plain = hyper;
  plain.warmup = hyper.epochs;
  return train_dd(data, features, plain, rng, log);
}

std::size_t dd_detect(const mlp::MlpState& state, const ComplexVector& y,
                      const ComplexMatrix& h_hat) {
  return column_argmax(mlp::forward_batch(state, mlp::encode_input(y, h_hat))).front();
}

Labels dd_detect_all(const mlp::MlpState& state, const RealMatrix& features) {
  return column_argmax(mlp::forward_batch(state, features));
}

void write_log_csv(const TrainLog& log, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "epoch,lr,mean_loss,false,clean,reassignable,agreement\n";
  out.precision(10);
  for (const EpochStats& s : log.epochs) {
    out << s.epoch << ',' << s.lr << ',' << s.mean_loss << ',' << s.false_count << ','
        << s.clean_count << ',' << s.reassignable_count << ',' << s.agreement << '\n';
  }
}

}  // namespace mimohi::robust
