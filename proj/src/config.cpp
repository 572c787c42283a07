#include "mimohi/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mimohi {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto end = s.find(',', start);
    const std::string item = trim(s.substr(start, end == std::string_view::npos ? s.npos : end - start));
    if (!item.empty()) out.push_back(item);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ConfigError("config key '" + std::string(key) + "': '" + t + "' is not a number");
  }
  return v;
}

std::uint64_t parse_uint(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ConfigError("config key '" + std::string(key) + "': '" + t +
                      "' is not a non-negative integer");
  }
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  int v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ConfigError("config key '" + std::string(key) + "': '" + t + "' is not an integer");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw ConfigError("config key '" + std::string(key) + "': '" + t + "' is not a boolean");
}

template <class T>
std::string join(const std::vector<T>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<T, double>) out += format_double(items[i]);
    else out += items[i];
  }
  return out;
}

struct KeyDef {
  std::string name;
  std::function<void(ExperimentConfig&, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

#define MIMOHI_KEY(NAME, FIELD, PARSE, FORMAT)                                               \
  KeyDef {                                                                                 \
    NAME, [](ExperimentConfig& c, std::string_view v) { c.FIELD = PARSE(NAME, v); },         \
        [](const ExperimentConfig& c) { return FORMAT(c.FIELD); }                            \
  }

std::string fmt_size(std::size_t v) { return std::to_string(v); }
std::string fmt_int(int v) { return std::to_string(v); }
std::string fmt_u64(std::uint64_t v) { return std::to_string(v); }
std::string fmt_bool(bool v) { return v ? "true" : "false"; }
std::string fmt_str(const std::string& v) { return v; }
std::size_t parse_size(std::string_view k, std::string_view v) {
  return static_cast<std::size_t>(parse_uint(k, v));
}
std::string parse_str(std::string_view, std::string_view v) { return trim(v); }

const std::vector<KeyDef>& key_defs() {
  static const std::vector<KeyDef> defs = {
      MIMOHI_KEY("nt", nt, parse_size, fmt_size),
      MIMOHI_KEY("nr", nr, parse_size, fmt_size),
      KeyDef{"snr_db",
              [](ExperimentConfig& c, std::string_view v) {
                c.snr_db.clear();
                for (const auto& item : split_list(v)) c.snr_db.push_back(parse_double("snr_db", item));
              },
              [](const ExperimentConfig& c) { return join(c.snr_db); }},
      KeyDef{"scenario",
              [](ExperimentConfig& c, std::string_view v) {
                try {
                  c.scenario = parse_scenario(trim(v));
                } catch (const std::invalid_argument& e) {
                  throw ConfigError(e.what());
                }
              },
              [](const ExperimentConfig& c) { return to_string(c.scenario); }},
      MIMOHI_KEY("zeta", zeta, parse_double, format_double),
      MIMOHI_KEY("data_slots", data_slots, parse_size, fmt_size),
      MIMOHI_KEY("pilots", pilots, parse_size, fmt_size),
      MIMOHI_KEY("frames", frames, parse_size, fmt_size),
      MIMOHI_KEY("seed", seed, parse_uint, fmt_u64),
      KeyDef{"detectors",
              [](ExperimentConfig& c, std::string_view v) { c.detectors = split_list(v); },
              [](const ExperimentConfig& c) { return join(c.detectors); }},
      MIMOHI_KEY("kappa_tx", additive.kappa_tx, parse_double, format_double),
      MIMOHI_KEY("kappa_rx", additive.kappa_rx, parse_double, format_double),
      MIMOHI_KEY("pa_alpha_a", pa.alpha_a, parse_double, format_double),
      MIMOHI_KEY("pa_eps_a", pa.eps_a, parse_double, format_double),
      MIMOHI_KEY("pa_alpha_phi", pa.alpha_phi, parse_double, format_double),
      MIMOHI_KEY("pa_eps_phi", pa.eps_phi, parse_double, format_double),
      MIMOHI_KEY("adc_bits", adc_bits, parse_int, fmt_int),
      MIMOHI_KEY("adc_step", adc_step, parse_double, format_double),
      MIMOHI_KEY("adc_scale", adc_scale, parse_double, format_double),
      MIMOHI_KEY("freeze_pilot_channel", freeze_pilot_channel, parse_bool, fmt_bool),
      MIMOHI_KEY("emnl_iterations", emnl.iterations, parse_int, fmt_int),
      MIMOHI_KEY("emnl_eps", emnl.eps, parse_double, format_double),
      MIMOHI_KEY("epochs", dnn.epochs, parse_int, fmt_int),
      MIMOHI_KEY("warmup", dnn.warmup, parse_int, fmt_int),
      MIMOHI_KEY("batches", dnn.batches, parse_int, fmt_int),
      MIMOHI_KEY("tau", dnn.tau, parse_double, format_double),
      MIMOHI_KEY("ema_alpha", dnn.ema_alpha, parse_double, format_double),
      MIMOHI_KEY("dnn_eps", dnn.eps, parse_double, format_double),
      MIMOHI_KEY("lr0", dnn.lr0, parse_double, format_double),
      MIMOHI_KEY("hidden", dnn.hidden, parse_int, fmt_int),
      MIMOHI_KEY("hidden_layers", dnn.hidden_layers, parse_int, fmt_int),
      MIMOHI_KEY("timing", timing, parse_bool, fmt_bool),
      MIMOHI_KEY("threads", threads, parse_int, fmt_int),
      MIMOHI_KEY("debug_dumps", debug_dumps, parse_str, fmt_str),
      MIMOHI_KEY("out", out, parse_str, fmt_str),
      MIMOHI_KEY("format", format, parse_str, fmt_str),
  };
  return defs;
}

#undef MIMOHI_KEY

}  // namespace

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (nt < 1 || nt > 4) fail("nt must be in [1, 4]");
  if (nr < 1 || nr > 64) fail("nr must be in [1, 64]");
  if (snr_db.empty()) fail("snr_db must list at least one value");
  if (!(zeta >= 0.0 && zeta <= 1.0)) fail("zeta must lie in [0, 1]");
  if (data_slots < 1) fail("data_slots must be at least 1");
  if (pilots < nt) fail("pilots must be at least nt");
  if (frames < 1) fail("frames must be at least 1");
  if (detectors.empty()) fail("detectors must name at least one detector");
  if (additive.kappa_tx < 0.0 || additive.kappa_rx < 0.0) fail("kappa values must be >= 0");
  if (!(pa.alpha_a > 0.0)) fail("pa_alpha_a must be positive");
  if (pa.eps_a < 0.0 || pa.eps_phi < 0.0) fail("Saleh eps parameters must be >= 0");
  if (adc_bits < 1 || adc_bits > 16) fail("adc_bits must be in [1, 16]");
  if (!(adc_step > 0.0)) fail("adc_step must be positive");
  if (!(adc_scale > 0.0)) fail("adc_scale must be positive");
  if (emnl.iterations < 0) fail("emnl_iterations must be >= 0");
  if (!(emnl.eps >= 0.0 && emnl.eps < 1.0)) fail("emnl_eps must lie in [0, 1)");
  if (threads < 0) fail("threads must be >= 0");
  if (format != "csv" && format != "json") fail("format must be csv or json");
  try {
    dnn.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

ScenarioConfig ExperimentConfig::scenario_config() const {
  return ScenarioConfig{scenario, additive, pa, UniformAdc(adc_bits, adc_step), adc_scale};
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& def : key_defs()) k.push_back(def.name);
    return k;
  }();
  return keys;
}

void set_key(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  for (const auto& def : key_defs()) {
    if (def.name == key) {
      def.set(cfg, value);
      return;
    }
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

std::vector<std::pair<std::string, std::string>> to_key_values(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& def : key_defs()) out.emplace_back(def.name, def.get(cfg));
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(std::string_view(body).substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    out.emplace_back(std::move(key), trim(std::string_view(body).substr(eq + 1)));
  }
  return out;
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  for (const auto& [key, value] : parse_config_text(buf.str())) {
    try {
      set_key(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(path + ": " + e.what());
    }
  }
}

void apply_env(ExperimentConfig& cfg, const std::string& prefix, const EnvLookup& lookup) {
  for (const auto& key : config_keys()) {
    std::string name = prefix + key;
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    const char* value = lookup ? lookup(name.c_str()) : std::getenv(name.c_str());
    if (value != nullptr) {
      try {
        set_key(cfg, key, value);
      } catch (const ConfigError& e) {
        throw ConfigError(name + ": " + e.what());
      }
    }
  }
}

}  // namespace mimohi
