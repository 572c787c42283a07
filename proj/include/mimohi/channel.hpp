#pragma once

#include <cstddef>
#include <vector>

#include "mimohi/core.hpp"

namespace mimohi {

/// Per-slot channel matrices of one frame.
struct ChannelTrace {
  std::vector<ComplexMatrix> matrices;
  double zeta = 1.0;

  std::size_t size() const { return matrices.size(); }
  const ComplexMatrix& operator[](std::size_t n) const { return matrices[n]; }
};

/// Rayleigh H[1] followed by first-order Gauss-Markov evolution
/// H[n] = zeta H[n-1] + sqrt(1 - zeta^2) G[n]. zeta = 1 repeats H[1].
ChannelTrace generate_trace(RngStream& rng, std::size_t nt, std::size_t nr,
                            std::size_t slots, double zeta);

/// Per-entry complex noise variance for SNR = Nt / sigma^2.
double snr_to_sigma2(double snr_db, std::size_t nt);

}  // namespace mimohi
