#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mimohi/emnl.hpp"
#include "mimohi/impairments.hpp"
#include "mimohi/robust_train.hpp"

namespace mimohi {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::size_t nt = 2;
  std::size_t nr = 8;
  std::vector<double> snr_db{0.0, 4.0, 8.0, 12.0};
  Scenario scenario = Scenario::additive;
  double zeta = 1.0;
  std::size_t data_slots = 500;
  std::size_t pilots = 4;
  std::size_t frames = 10;
  std::uint64_t seed = 1;
  std::vector<std::string> detectors{"coarse_ml", "model_driven", "data_driven"};

  AdditiveImpairment additive{};
  SalehPa pa{};
  int adc_bits = 3;
  double adc_step = 0.5;
  double adc_scale = 1.0;
  /// Pilots see the first data-slot channel instead of their own evolving slots.
  bool freeze_pilot_channel = false;

  emnl::EmnlOptions emnl{};
  robust::DnnHyper dnn{};

  bool timing = false;  // wall-clock seconds in the results (breaks byte-identical output)
  int threads = 0;      // OpenMP threads for the frame loop; 0 = runtime default
  std::string debug_dumps;
  std::string out;
  std::string format = "csv";

  /// Throws ConfigError on the first violated constraint.
  void validate() const;
  ScenarioConfig scenario_config() const;
};

/// Every settable key, in a stable order.
const std::vector<std::string>& config_keys();

/// Sets one key from its text form; throws ConfigError for unknown keys or bad values.
void set_key(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Text form of every key, in config_keys() order.
std::vector<std::pair<std::string, std::string>> to_key_values(const ExperimentConfig& cfg);

/// Parses "key = value" lines; '#' starts a comment, blank lines are skipped.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);

/// Reads and applies a config file on top of `cfg`.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

/// Applies <prefix><KEY> environment variables (key upper-cased) on top of `cfg`.
using EnvLookup = std::function<const char*(const char*)>;
void apply_env(ExperimentConfig& cfg, const std::string& prefix = "MIMOHI_",
               const EnvLookup& lookup = {});

}  // namespace mimohi
