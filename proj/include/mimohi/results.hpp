#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mimohi/harness.hpp"

namespace mimohi {

inline constexpr std::string_view kCsvHeader =
    "detector,snr_db,symbols,symbol_errors,ser,vectors,vector_errors,ver,seconds";

std::string results_csv(const SerResult& result);
/// Records plus the resolved config (every key, seed included).
std::string results_json(const SerResult& result);

/// Writes csv or json to `path`; throws std::runtime_error naming the path on failure.
void write_results(const SerResult& result, const std::string& path, const std::string& format);

struct ParsedResults {
  std::vector<SerRecord> records;
  std::vector<std::pair<std::string, std::string>> config;  // json only
};

ParsedResults parse_results_csv(std::string_view text);
ParsedResults parse_results_json(std::string_view text);
ParsedResults read_results(const std::string& path, const std::string& format);

}  // namespace mimohi
