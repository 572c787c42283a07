#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace mimohi {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Raised when a Gram matrix is numerically singular.
class RankDeficientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// splitmix64-style mixing of two words; used to derive stream ids.
std::uint64_t mix64(std::uint64_t a, std::uint64_t b);

/// A seeded random stream. Two streams with the same (seed, stream id) produce
/// the same draws; distinct stream ids seed the engine through distinct
/// seed_seq material and are treated as independent.
///
/// Single owner: copy it to replay, fork() it to branch.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Child stream, independent of this one and of forks with other tags.
  /// Does not advance this stream.
  RngStream fork(std::uint64_t tag) const;

  double normal();
  double uniform();
  std::size_t uniform_index(std::size_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// n i.i.d. CN(0, variance) entries: real and imaginary parts each
/// N(0, variance / 2).
ComplexVector sample_complex_gaussian(RngStream& rng, std::size_t n, double variance);

/// Same, filling a rows x cols matrix column by column.
ComplexMatrix sample_complex_gaussian(RngStream& rng, std::size_t rows, std::size_t cols,
                                      double variance);

/// Least-squares right solve: returns B * A^H * (A * A^H)^{-1}.
/// Throws RankDeficientError when A * A^H is singular.
ComplexMatrix ls_solve(const ComplexMatrix& a, const ComplexMatrix& b);

bool all_finite(const ComplexMatrix& m);

}  // namespace mimohi
