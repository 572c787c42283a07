#include "mimohi/results.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mimohi {
namespace {

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <class T>
T parse_field(const std::string& field, int line) {
  T v{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw std::runtime_error("results line " + std::to_string(line) + ": bad field '" + field +
                             "'");
  }
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read results file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::string results_csv(const SerResult& result) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : result.records) {
    out += r.detector + ',' + num(r.snr_db) + ',' + std::to_string(r.symbols) + ',' +
           std::to_string(r.symbol_errors) + ',' + num(r.ser()) + ',' + std::to_string(r.vectors) +
           ',' + std::to_string(r.vector_errors) + ',' + num(r.ver()) + ',' + num(r.seconds) +
           '\n';
  }
  return out;
}

std::string results_json(const SerResult& result) {
  nlohmann::ordered_json doc;
  doc["seed"] = result.config.seed;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : to_key_values(result.config)) config[key] = value;
  doc["config"] = config;
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& r : result.records) {
    records.push_back({{"detector", r.detector},
                       {"snr_db", r.snr_db},
                       {"symbols", r.symbols},
                       {"symbol_errors", r.symbol_errors},
                       {"ser", r.ser()},
                       {"vectors", r.vectors},
                       {"vector_errors", r.vector_errors},
                       {"ver", r.ver()},
                       {"seconds", r.seconds}});
  }
  doc["records"] = records;
  return doc.dump(2) + '\n';
}

void write_results(const SerResult& result, const std::string& path, const std::string& format) {
  std::string text;
  if (format == "csv") {
    text = results_csv(result);
  } else if (format == "json") {
    text = results_json(result);
  } else {
    throw std::invalid_argument("unknown results format '" + format + "'");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

ParsedResults parse_results_csv(std::string_view text) {
  ParsedResults parsed;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != kCsvHeader) throw std::runtime_error("results csv: unexpected header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string item;
    while (std::getline(ls, item, ',')) f.push_back(item);
    if (f.size() != 9) {
      throw std::runtime_error("results line " + std::to_string(line_no) + ": expected 9 fields");
    }
    SerRecord r;
    r.detector = f[0];
    r.snr_db = parse_field<double>(f[1], line_no);
    r.symbols = parse_field<std::uint64_t>(f[2], line_no);
    r.symbol_errors = parse_field<std::uint64_t>(f[3], line_no);
    r.vectors = parse_field<std::uint64_t>(f[5], line_no);
    r.vector_errors = parse_field<std::uint64_t>(f[6], line_no);
    r.seconds = parse_field<double>(f[8], line_no);
    parsed.records.push_back(std::move(r));
  }
  return parsed;
}

ParsedResults parse_results_json(std::string_view text) {
  ParsedResults parsed;
  try {
    const auto doc = nlohmann::ordered_json::parse(text);
    for (const auto& [key, value] : doc.at("config").items()) {
      parsed.config.emplace_back(key, value.get<std::string>());
    }
    for (const auto& j : doc.at("records")) {
      SerRecord r;
      r.detector = j.at("detector").get<std::string>();
      r.snr_db = j.at("snr_db").get<double>();
      r.symbols = j.at("symbols").get<std::uint64_t>();
      r.symbol_errors = j.at("symbol_errors").get<std::uint64_t>();
      r.vectors = j.at("vectors").get<std::uint64_t>();
      r.vector_errors = j.at("vector_errors").get<std::uint64_t>();
      r.seconds = j.at("seconds").get<double>();
      parsed.records.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("results json: ") + e.what());
  }
  return parsed;
}

ParsedResults read_results(const std::string& path, const std::string& format) {
  const std::string text = slurp(path);
  try {
    if (format == "csv") return parse_results_csv(text);
    if (format == "json") return parse_results_json(text);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  throw std::invalid_argument("unknown results format '" + format + "'");
}

}  // namespace mimohi
