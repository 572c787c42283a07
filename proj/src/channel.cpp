#include "mimohi/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mimohi {

ChannelTrace generate_trace(RngStream& rng, std::size_t nt, std::size_t nr,
                            std::size_t slots, double zeta) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) {
    throw std::invalid_argument("generate_trace: zeta must lie in [0, 1], got " +
                                std::to_string(zeta));
  }
  if (nt == 0 || nr == 0) {
    throw std::invalid_argument("generate_trace: antenna counts must be positive");
  }
  ChannelTrace trace;
  trace.zeta = zeta;
  trace.matrices.reserve(slots);
  if (slots == 0) {
    return trace;
  }
  trace.matrices.push_back(sample_complex_gaussian(rng, nr, nt, 1.0));
  const double innovation = std::sqrt(1.0 - zeta * zeta);
  for (std::size_t n = 1; n < slots; ++n) {
    if (zeta == 1.0) {
      trace.matrices.push_back(trace.matrices.back());
      continue;
    }
    const ComplexMatrix g = sample_complex_gaussian(rng, nr, nt, 1.0);
    trace.matrices.push_back(zeta * trace.matrices.back() + innovation * g);
  }
  return trace;
}

double snr_to_sigma2(double snr_db, std::size_t nt) {
  return static_cast<double>(nt) / std::pow(10.0, snr_db / 10.0);
}

}  // namespace mimohi
