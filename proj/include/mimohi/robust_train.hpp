#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mimohi/constellation.hpp"
#include "mimohi/core.hpp"
#include "mimohi/emnl.hpp"
#include "mimohi/mlp.hpp"

namespace mimohi::robust {

using Labels = kernels::Labels;

struct DnnHyper {
  int epochs = 100;
  int warmup = 40;
  int batches = 4;       // mini-batches per epoch
  double tau = 0.1;      // fraction of each batch discarded as false
  double ema_alpha = 0.1;
  double eps = 1e-8;     // clean if max target > 1 - eps
  double lr0 = 0.01;
  int hidden = 100;
  int hidden_layers = 2;

  void validate() const;
};

/// Labels from the model-driven detector and their one-hot targets (K x T).
struct MdDataset {
  Labels labels;
  RealMatrix targets;
};

MdDataset build_md_dataset(const emnl::NoisyDataset& coarse,
                           const emnl::GaussianModelParams& md_params);

RealMatrix one_hot(const Labels& labels, std::size_t k_classes);

/// Soft per-sample targets t[n] (columns, K x T), updated by EMA.
class TargetStore {
 public:
  explicit TargetStore(RealMatrix initial) : targets_(std::move(initial)) {}

  const RealMatrix& targets() const { return targets_; }
  auto column(std::size_t n) const { return targets_.col(static_cast<Eigen::Index>(n)); }

  /// t[n] <- alpha p + (1 - alpha) t[n]; returns max_k t_k[n].
  double blend(std::size_t n, const RealVector& prediction, double alpha);

 private:
  RealMatrix targets_;
};

/// Mini-batch split into false (F), clean (C) and reassignable (R) samples.
struct BatchPartition {
  std::vector<std::size_t> batch;
  std::vector<std::size_t> false_samples;
  std::vector<std::size_t> clean;
  std::vector<std::size_t> reassignable;
  std::vector<double> confidence;  // omega[n] for each entry of `reassignable`
  double mean_loss = 0.0;          // over the whole batch, before any update
};

/// Random split of {0..T-1} into `count` nearly equal batches.
std::vector<std::vector<std::size_t>> random_partition(std::size_t t, int count, RngStream& rng);

/// Ranks the batch by loss against the current targets, marks the
/// floor(|B| tau) largest (ties: lower index first) as false, blends the
/// network prediction into the targets of the rest and splits them by
/// confidence.
BatchPartition select_samples(const mlp::MlpState& state, TargetStore& targets,
                              std::span<const std::size_t> batch, const RealMatrix& features,
                              double tau, double ema_alpha, double eps);

/// Adam step on the confidence-weighted loss over C and R. Returns false and
/// leaves the state untouched when |C| + sum omega is zero.
bool corrected_update(mlp::MlpState& state, const BatchPartition& partition,
                      const TargetStore& targets, const RealMatrix& features, double lr);

/// Plain mini-batch step on the uniform mean loss over `batch`; returns the
/// mean loss before the step.
double uniform_update(mlp::MlpState& state, std::span<const std::size_t> batch,
                      const RealMatrix& targets, const RealMatrix& features, double lr);

/// Per-epoch training record.
struct EpochStats {
  int epoch = 0;
  double lr = 0.0;
  double mean_loss = 0.0;
  std::size_t false_count = 0;
  std::size_t clean_count = 0;
  std::size_t reassignable_count = 0;
  double agreement = -1.0;  // with the reference labels, when given
};

struct TrainLog {
  std::vector<EpochStats> epochs;
  /// Labels to measure agreement against each epoch (costs a forward pass).
  std::optional<Labels> reference;
};

/// Runs `count` warm-up epochs (plain updates against the one-hot targets).
/// `first_epoch` positions them in the learning-rate schedule.
void warmup_epochs(mlp::MlpState& state, const RealMatrix& targets, const RealMatrix& features,
                   const DnnHyper& hyper, int count, RngStream& rng, int first_epoch = 1,
                   TrainLog* log = nullptr);

/// Fresh network sized for the features and K classes.
mlp::MlpState make_detector_net(std::size_t features, std::size_t k_classes,
                                const DnnHyper& hyper, RngStream& rng);

/// Warm-up, then per batch sample selection and corrected updates.
mlp::MlpState train_dd(const MdDataset& data, const RealMatrix& features, const DnnHyper& hyper,
                       RngStream rng, TrainLog* log = nullptr);

/// Plain training for all epochs; equals train_dd with warmup = epochs.
mlp::MlpState naive_train(const MdDataset& data, const RealMatrix& features,
                          const DnnHyper& hyper, RngStream rng, TrainLog* log = nullptr);

/// MAP detection: argmax of the network output, ties to the lowest index.
std::size_t dd_detect(const mlp::MlpState& state, const ComplexVector& y,
                      const ComplexMatrix& h_hat);
Labels dd_detect_all(const mlp::MlpState& state, const RealMatrix& features);

void write_log_csv(const TrainLog& log, const std::string& path);

}  // namespace mimohi::robust
