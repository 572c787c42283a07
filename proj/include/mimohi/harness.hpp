#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mimohi/channel.hpp"
#include "mimohi/config.hpp"
#include "mimohi/constellation.hpp"
#include "mimohi/emnl.hpp"
#include "mimohi/robust_train.hpp"

namespace mimohi {

using Labels = kernels::Labels;

/// Everything the receiver sees in one frame, plus the ground truth.
struct FrameSignals {
  ChannelTrace trace;
  ComplexMatrix pilots_tx;  // Nt x Tp
  ComplexMatrix pilots_rx;  // Nr x Tp
  ComplexMatrix y;          // Nr x T
  Labels truth;
  ComplexMatrix h_hat;
  double sigma2 = 0.0;
};

/// Channel, symbols, pilots and data through the scenario pipeline, then the
/// LS estimate. Sub-streams: fork(1) channel, fork(2) symbols, fork(3) noise.
FrameSignals simulate_frame(const ExperimentConfig& cfg, const SymbolBook& book, double snr_db,
                            const RngStream& frame_rng);

/// Per-frame state shared by detectors; intermediate products are computed
/// once on first use so every detector sees the same coarse labels.
class FrameContext {
 public:
  FrameContext(const ExperimentConfig& cfg, const SymbolBook& book, FrameSignals signals,
               RngStream frame_rng, std::string dump_prefix = {});

  const ExperimentConfig& config() const { return cfg_; }
  const SymbolBook& book() const { return book_; }
  const FrameSignals& signals() const { return signals_; }
  /// Fresh copy of the detector-training stream (fork(4) of the frame stream).
  RngStream dnn_rng() const { return frame_rng_.fork(4); }
  /// Empty unless debug dumps are enabled for this frame.
  const std::string& dump_prefix() const { return dump_prefix_; }

  const emnl::NoisyDataset& coarse();
  const emnl::GaussianModelParams& md_params();
  const robust::MdDataset& md_dataset();
  const RealMatrix& features();

 private:
  const ExperimentConfig& cfg_;
  const SymbolBook& book_;
  FrameSignals signals_;
  RngStream frame_rng_;
  std::string dump_prefix_;
  std::optional<emnl::NoisyDataset> coarse_;
  std::optional<emnl::GaussianModelParams> md_params_;
  std::optional<robust::MdDataset> md_dataset_;
  std::optional<RealMatrix> features_;
};

using DetectorFn = std::function<Labels(FrameContext&)>;

/// Named detectors. The built-in set is coarse_ml, model_driven, data_driven
/// and naive_dnn; others can be added under new names.
class DetectorRegistry {
 public:
  static DetectorRegistry builtin();

  void add(const std::string& name, DetectorFn fn);
  bool contains(const std::string& name) const;
  const DetectorFn& at(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::vector<std::pair<std::string, DetectorFn>> entries_;
};

struct DetectorCounts {
  std::uint64_t symbols = 0;
  std::uint64_t symbol_errors = 0;
  std::uint64_t vectors = 0;
  std::uint64_t vector_errors = 0;
  double seconds = 0.0;
};

/// counts[a * D + b]: symbol decisions detector a got wrong and detector b got right.
struct DiscordanceTable {
  std::size_t detectors = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t at(std::size_t a, std::size_t b) const { return counts[a * detectors + b]; }
};

struct FrameOutcome {
  std::vector<std::string> detectors;
  std::vector<Labels> decisions;
  std::vector<DetectorCounts> counts;
  DiscordanceTable discordance;
  Labels truth;
};

/// Stream of frame `frame` at SNR point `snr_index`, independent of scheduling.
RngStream frame_stream(std::uint64_t seed, std::size_t snr_index, std::size_t frame);

FrameOutcome run_frame(const ExperimentConfig& cfg, double snr_db, const RngStream& frame_rng,
                       const DetectorRegistry& registry = DetectorRegistry::builtin(),
                       const std::string& dump_prefix = {});

struct SerRecord {
  std::string detector;
  double snr_db = 0.0;
  std::uint64_t symbols = 0;
  std::uint64_t symbol_errors = 0;
  std::uint64_t vectors = 0;
  std::uint64_t vector_errors = 0;
  double seconds = 0.0;

  double ser() const;
  double ver() const;
  bool operator==(const SerRecord&) const = default;
};

struct SerResult {
  ExperimentConfig config;
  std::vector<SerRecord> records;              // snr-major, detectors in config order
  std::vector<DiscordanceTable> discordance;   // one per SNR point

  const SerRecord& record(const std::string& detector, double snr_db) const;
};

/// Validates cfg, then runs every (SNR point, frame) pair; frames run in
/// parallel and are summed in frame order.
SerResult run_experiment(const ExperimentConfig& cfg,
                         const DetectorRegistry& registry = DetectorRegistry::builtin());

}  // namespace mimohi
