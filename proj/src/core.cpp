#include "mimohi/core.hpp"

#include <cmath>
#include <string>

namespace mimohi {

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32), 0x6d696d6fU};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(seeded_engine(seed, stream_id)) {}

RngStream RngStream::fork(std::uint64_t tag) const {
  return RngStream(seed_, mix64(stream_id_, mix64(tag, 0x666f726bULL)));
}

double RngStream::normal() { return normal_(engine_); }

double RngStream::uniform() { return uniform_(engine_); }

std::size_t RngStream::uniform_index(std::size_t n) {
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(engine_);
}

ComplexVector sample_complex_gaussian(RngStream& rng, std::size_t n, double variance) {
  if (variance < 0.0 || std::isnan(variance)) {
    throw std::invalid_argument("sample_complex_gaussian: negative variance " +
                                std::to_string(variance));
  }
  const double sd = std::sqrt(variance / 2.0);
  ComplexVector out(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    out[static_cast<Eigen::Index>(i)] = Complex(sd * re, sd * im);
  }
  return out;
}

ComplexMatrix sample_complex_gaussian(RngStream& rng, std::size_t rows, std::size_t cols,
                                      double variance) {
  ComplexVector flat = sample_complex_gaussian(rng, rows * cols, variance);
  return Eigen::Map<ComplexMatrix>(flat.data(), static_cast<Eigen::Index>(rows),
                                   static_cast<Eigen::Index>(cols));
}

ComplexMatrix ls_solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) {
    throw std::invalid_argument("ls_solve: A and B must have the same number of columns");
  }
  const ComplexMatrix gram = a * a.adjoint();
  Eigen::FullPivLU<ComplexMatrix> lu(gram);
  if (!lu.isInvertible()) {
    throw RankDeficientError("ls_solve: Gram matrix A*A^H is singular (rank " +
                             std::to_string(lu.rank()) + " of " +
                             std::to_string(gram.rows()) + ")");
  }
  // X * G = B * A^H with G Hermitian, so G * X^H = A * B^H.
  return lu.solve(a * b.adjoint()).adjoint();
}

bool all_finite(const ComplexMatrix& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

}  // namespace mimohi
