#include "mimohi/harness.hpp"

#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>

#include <omp.h>

#include "mimohi/estimation.hpp"
#include "mimohi/impairments.hpp"

namespace mimohi {

FrameSignals simulate_frame(const ExperimentConfig& cfg, const SymbolBook& book, double snr_db,
                            const RngStream& frame_rng) {
  RngStream channel_rng = frame_rng.fork(1);
  RngStream symbol_rng = frame_rng.fork(2);
  RngStream noise_rng = frame_rng.fork(3);
  const ScenarioConfig scenario = cfg.scenario_config();

  FrameSignals s;
  s.sigma2 = snr_to_sigma2(snr_db, cfg.nt);
  const std::size_t tp = cfg.pilots;
  const std::size_t t = cfg.data_slots;
  const std::size_t offset = cfg.freeze_pilot_channel ? 0 : tp;
  s.trace = generate_trace(channel_rng, cfg.nt, cfg.nr, offset + t, cfg.zeta);

  s.pilots_tx = make_pilots(book, tp);
  s.pilots_rx.resize(static_cast<Eigen::Index>(cfg.nr), static_cast<Eigen::Index>(tp));
  for (std::size_t p = 0; p < tp; ++p) {
    const ComplexMatrix& h = s.trace[cfg.freeze_pilot_channel ? 0 : p];
    const auto col = static_cast<Eigen::Index>(p);
    s.pilots_rx.col(col) = apply_scenario(noise_rng, scenario, s.pilots_tx.col(col), h, s.sigma2);
  }

  s.truth.resize(t);
  for (auto& k : s.truth) k = symbol_rng.uniform_index(book.size());
  s.y.resize(static_cast<Eigen::Index>(cfg.nr), static_cast<Eigen::Index>(t));
  for (std::size_t n = 0; n < t; ++n) {
    s.y.col(static_cast<Eigen::Index>(n)) =
        apply_scenario(noise_rng, scenario, book.vector(s.truth[n]), s.trace[offset + n], s.sigma2);
  }

  s.h_hat = ls_estimate(PilotBlock{s.pilots_tx, s.pilots_rx});
  return s;
}

FrameContext::FrameContext(const ExperimentConfig& cfg, const SymbolBook& book,
                           FrameSignals signals, RngStream frame_rng, std::string dump_prefix)
    : cfg_(cfg),
      book_(book),
      signals_(std::move(signals)),
      frame_rng_(std::move(frame_rng)),
      dump_prefix_(std::move(dump_prefix)) {}

const emnl::NoisyDataset& FrameContext::coarse() {
  if (!coarse_) coarse_ = emnl::make_coarse_dataset(signals_.y, signals_.h_hat, book_);
  return *coarse_;
}

const emnl::GaussianModelParams& FrameContext::md_params() {
  if (!md_params_) {
    if (dump_prefix_.empty()) {
      md_params_ = emnl::run_emnl(coarse(), signals_.h_hat, signals_.sigma2, book_, cfg_.emnl);
    } else {
      emnl::EmnlTrace trace;
      trace.keep_theta = true;
      md_params_ =
          emnl::run_emnl(coarse(), signals_.h_hat, signals_.sigma2, book_, cfg_.emnl, &trace);
      const std::filesystem::path prefix(dump_prefix_);
      emnl::write_trace_csv(trace, prefix.parent_path().string(),
                            prefix.filename().string() + "_emnl");
    }
  }
  return *md_params_;
}

const robust::MdDataset& FrameContext::md_dataset() {
  if (!md_dataset_) md_dataset_ = robust::build_md_dataset(coarse(), md_params());
  return *md_dataset_;
}

const RealMatrix& FrameContext::features() {
  if (!features_) features_ = mlp::encode_inputs(signals_.y, signals_.h_hat);
  return *features_;
}

namespace {

Labels run_dnn(FrameContext& ctx, bool robust_training, const char* dump_name) {
  const auto& cfg = ctx.config();
  robust::TrainLog log;
  robust::TrainLog* log_ptr = nullptr;
  if (!ctx.dump_prefix().empty()) {
    log.reference = ctx.signals().truth;
    log_ptr = &log;
  }
  const mlp::MlpState net =
      robust_training
          ? robust::train_dd(ctx.md_dataset(), ctx.features(), cfg.dnn, ctx.dnn_rng(), log_ptr)
          : robust::naive_train(ctx.md_dataset(), ctx.features(), cfg.dnn, ctx.dnn_rng(), log_ptr);
  if (log_ptr) robust::write_log_csv(log, ctx.dump_prefix() + dump_name);
  return robust::dd_detect_all(net, ctx.features());
}

void write_samples_csv(FrameContext& ctx) {
  const std::string path = ctx.dump_prefix() + "_samples.csv";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  const auto& truth = ctx.signals().truth;
  const auto& coarse = ctx.coarse().labels;
  out << "n,true,coarse\n";
  for (std::size_t n = 0; n < truth.size(); ++n) {
    out << n << ',' << truth[n] << ',' << coarse[n] << '\n';
  }
}

}  // namespace

DetectorRegistry DetectorRegistry::builtin() {
  DetectorRegistry r;
  r.add("coarse_ml", [](FrameContext& ctx) { return ctx.coarse().labels; });
  r.add("model_driven", [](FrameContext& ctx) {
    return emnl::md_detect_all(ctx.signals().y, ctx.md_params());
  });
  r.add("data_driven", [](FrameContext& ctx) { return run_dnn(ctx, true, "_dd_epochs.csv"); });
  r.add("naive_dnn", [](FrameContext& ctx) { return run_dnn(ctx, false, "_naive_epochs.csv"); });
  return r;
}

void DetectorRegistry::add(const std::string& name, DetectorFn fn) {
  if (name.empty()) throw std::invalid_argument("detector name must not be empty");
  if (contains(name)) throw std::invalid_argument("detector '" + name + "' already registered");
  entries_.emplace_back(name, std::move(fn));
}

bool DetectorRegistry::contains(const std::string& name) const {
  for (const auto& e : entries_) {
    if (e.first == name) return true;
  }
  return false;
}

const DetectorFn& DetectorRegistry::at(const std::string& name) const {
  for (const auto& e : entries_) {
    if (e.first == name) return e.second;
  }
  throw ConfigError("unknown detector '" + name + "'");
}

std::vector<std::string> DetectorRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) out.push_back(e.first);
  return out;
}

RngStream frame_stream(std::uint64_t seed, std::size_t snr_index, std::size_t frame) {
  return RngStream(seed, mix64(mix64(seed, snr_index), frame));
}

FrameOutcome run_frame(const ExperimentConfig& cfg, double snr_db, const RngStream& frame_rng,
                       const DetectorRegistry& registry, const std::string& dump_prefix) {
  const SymbolBook book = SymbolBook::qam4(cfg.nt);
  FrameContext ctx(cfg, book, simulate_frame(cfg, book, snr_db, frame_rng), frame_rng,
                   dump_prefix);
  if (!dump_prefix.empty()) write_samples_csv(ctx);

  FrameOutcome out;
  out.truth = ctx.signals().truth;
  const std::size_t d = cfg.detectors.size();
  const std::size_t t = out.truth.size();
  out.detectors = cfg.detectors;
  for (const auto& name : cfg.detectors) {
    const DetectorFn& fn = registry.at(name);
    const auto start = std::chrono::steady_clock::now();
    Labels decisions = fn(ctx);
    const auto stop = std::chrono::steady_clock::now();
    if (decisions.size() != t) {
      throw std::runtime_error("detector '" + name + "' returned " +
                               std::to_string(decisions.size()) + " decisions for " +
                               std::to_string(t) + " slots");
    }
    DetectorCounts c;
    c.symbols = static_cast<std::uint64_t>(t * cfg.nt);
    c.vectors = t;
    for (std::size_t n = 0; n < t; ++n) {
      const std::size_t e = symbol_errors(book, out.truth[n], decisions[n]);
      c.symbol_errors += e;
      c.vector_errors += e > 0 ? 1 : 0;
    }
    if (cfg.timing) c.seconds = std::chrono::duration<double>(stop - start).count();
    out.counts.push_back(c);
    out.decisions.push_back(std::move(decisions));
  }

  out.discordance.detectors = d;
  out.discordance.counts.assign(d * d, 0);
  std::vector<char> wrong(d);
  for (std::size_t n = 0; n < t; ++n) {
    for (std::size_t ant = 0; ant < cfg.nt; ++ant) {
      const std::size_t sent = book.digit(out.truth[n], ant);
      for (std::size_t a = 0; a < d; ++a) wrong[a] = book.digit(out.decisions[a][n], ant) != sent;
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
          if (wrong[a] && !wrong[b]) ++out.discordance.counts[a * d + b];
        }
      }
    }
  }
  return out;
}

double SerRecord::ser() const {
  return symbols == 0 ? 0.0 : static_cast<double>(symbol_errors) / static_cast<double>(symbols);
}

double SerRecord::ver() const {
  return vectors == 0 ? 0.0 : static_cast<double>(vector_errors) / static_cast<double>(vectors);
}

const SerRecord& SerResult::record(const std::string& detector, double snr_db) const {
  for (const auto& r : records) {
    if (r.detector == detector && r.snr_db == snr_db) return r;
  }
  throw std::out_of_range("no result for detector '" + detector + "' at " +
                          std::to_string(snr_db) + " dB");
}

SerResult run_experiment(const ExperimentConfig& cfg, const DetectorRegistry& registry) {
  cfg.validate();
  for (const auto& name : cfg.detectors) registry.at(name);

  SerResult result;
  result.config = cfg;
  const std::size_t d = cfg.detectors.size();
  const auto frames = static_cast<long>(cfg.frames);
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();

  for (std::size_t s = 0; s < cfg.snr_db.size(); ++s) {
    const double snr = cfg.snr_db[s];
    std::vector<FrameOutcome> outcomes(cfg.frames);
    std::exception_ptr error;
    std::string dump_prefix;
    if (!cfg.debug_dumps.empty()) {
      std::filesystem::create_directories(cfg.debug_dumps);
      dump_prefix = (std::filesystem::path(cfg.debug_dumps) / ("snr" + std::to_string(s) +
                                                               "_frame0")).string();
    }

#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long f = 0; f < frames; ++f) {
      try {
        const auto frame = static_cast<std::size_t>(f);
        outcomes[frame] = run_frame(cfg, snr, frame_stream(cfg.seed, s, frame), registry,
                                    frame == 0 ? dump_prefix : std::string{});
      } catch (...) {
#pragma omp critical(mimohi_frame_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);

    DiscordanceTable table{d, std::vector<std::uint64_t>(d * d, 0)};
    std::vector<SerRecord> records(d);
    for (std::size_t a = 0; a < d; ++a) {
      records[a].detector = cfg.detectors[a];
      records[a].snr_db = snr;
    }
    for (const auto& o : outcomes) {
      for (std::size_t a = 0; a < d; ++a) {
        records[a].symbols += o.counts[a].symbols;
        records[a].symbol_errors += o.counts[a].symbol_errors;
        records[a].vectors += o.counts[a].vectors;
        records[a].vector_errors += o.counts[a].vector_errors;
        records[a].seconds += o.counts[a].seconds;
      }
      for (std::size_t i = 0; i < d * d; ++i) table.counts[i] += o.discordance.counts[i];
    }
    for (auto& r : records) result.records.push_back(std::move(r));
    result.discordance.push_back(std::move(table));
  }
  return result;
}

}  // namespace mimohi
