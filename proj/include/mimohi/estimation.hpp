#pragma once

#include <cstddef>

#include "mimohi/constellation.hpp"
#include "mimohi/core.hpp"

namespace mimohi {

struct PilotBlock {
  ComplexMatrix xp;  // Nt x Tp, transmitted pilots
  ComplexMatrix yp;  // Nr x Tp, received pilots
};

/// Orthogonal pilot matrix with X_p X_p^H = Tp I and every entry in the
/// book's alphabet (a Hadamard sign pattern on one alphabet point).
/// Needs Tp >= Nt, and either Tp a power of two or Tp a multiple of a
/// power-of-two Nt.
ComplexMatrix make_pilots(const SymbolBook& book, std::size_t tp);

/// Least-squares channel estimate Y_p X_p^H (X_p X_p^H)^{-1}.
ComplexMatrix ls_estimate(const PilotBlock& block);

}  // namespace mimohi
