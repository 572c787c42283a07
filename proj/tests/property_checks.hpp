#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace props {

struct Outcome {
  std::string name;
  bool ok = true;
  std::string detail;  // first counterexample when !ok
  int cases = 0;
};

Outcome theta_column_stochastic(std::uint64_t seed, int cases);
Outcome alpha_rows_normalized(std::uint64_t seed, int cases);
Outcome nu_positive(std::uint64_t seed, int cases);
Outcome target_vectors_valid(std::uint64_t seed, int cases);
Outcome adc_idempotent_monotone(std::uint64_t seed, int cases);
Outcome quantizer_table(std::uint64_t seed, int cases);
Outcome csv_deterministic(std::uint64_t seed, int cases);
Outcome partition_invariants(std::uint64_t seed, int cases);

std::vector<Outcome> run_all(std::uint64_t seed);

}  // namespace props
