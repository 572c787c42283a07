#pragma once

#include <cstddef>
#include <vector>

#include "mimohi/core.hpp"

namespace mimohi {

/// Modulation alphabet plus the enumerated symbol-vector set x_0 .. x_{K-1},
/// K = M^Nt. Vector k is the base-M expansion of k with antenna 0 as the most
/// significant digit. Indices are 0-based.
class SymbolBook {
 public:
  SymbolBook(std::vector<Complex> alphabet, std::size_t nt);

  /// 4-QAM {(+-1 +- j)/sqrt 2}, ordered (-1-j), (-1+j), (1-j), (1+j).
  static SymbolBook qam4(std::size_t nt);

  std::size_t nt() const { return nt_; }
  std::size_t order() const { return alphabet_.size(); }
  std::size_t size() const { return static_cast<std::size_t>(vectors_.cols()); }
  const std::vector<Complex>& alphabet() const { return alphabet_; }

  /// Nt x K matrix whose column k is x_k.
  const ComplexMatrix& vectors() const { return vectors_; }
  ComplexVector vector(std::size_t k) const;

  /// Alphabet index sent on `antenna` by symbol vector k.
  std::size_t digit(std::size_t k, std::size_t antenna) const;

  /// Inverse of vector(); throws std::invalid_argument for non-alphabet entries.
  std::size_t index_of(const ComplexVector& x) const;

 private:
  std::vector<Complex> alphabet_;
  std::size_t nt_;
  ComplexMatrix vectors_;
};

/// Antenna positions at which the two symbol vectors differ, in [0, Nt].
std::size_t symbol_errors(const SymbolBook& book, std::size_t k_true, std::size_t k_hat);

}  // namespace mimohi
