#include "mimohi/estimation.hpp"

#include <stdexcept>
#include <string>

namespace mimohi {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Sylvester Hadamard entry (-1)^{popcount(i & j)}.
double hadamard(std::size_t i, std::size_t j) {
  return (__builtin_popcountll(i & j) % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

ComplexMatrix make_pilots(const SymbolBook& book, std::size_t tp) {
  const std::size_t nt = book.nt();
  if (tp < nt) {
    throw std::invalid_argument("make_pilots: need at least Nt = " + std::to_string(nt) +
                                " pilot slots, got " + std::to_string(tp));
  }
  // The +-1 pattern must keep entries inside the alphabet.
  const Complex base = book.alphabet().back();
  bool symmetric = false;
  for (const Complex& a : book.alphabet()) {
    symmetric = symmetric || std::abs(a + base) < 1e-12;
  }
  if (!symmetric) {
    throw std::invalid_argument("make_pilots: alphabet is not symmetric under negation");
  }

  ComplexMatrix xp(static_cast<Eigen::Index>(nt), static_cast<Eigen::Index>(tp));
  if (is_power_of_two(tp)) {
    for (std::size_t i = 0; i < nt; ++i)
      for (std::size_t j = 0; j < tp; ++j)
        xp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = hadamard(i, j) * base;
  } else if (tp % nt == 0 && is_power_of_two(nt)) {
    for (std::size_t i = 0; i < nt; ++i)
      for (std::size_t j = 0; j < tp; ++j)
        xp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            hadamard(i, j % nt) * base;
  } else {
    throw std::invalid_argument("make_pilots: no orthogonal pattern for Nt = " +
                                std::to_string(nt) + ", Tp = " + std::to_string(tp));
  }
  return xp;
}

ComplexMatrix ls_estimate(const PilotBlock& block) {
  if (block.xp.cols() != block.yp.cols()) {
    throw std::invalid_argument("ls_estimate: X_p and Y_p disagree on the pilot count");
  }
  return ls_solve(block.xp, block.yp);
}

}  // namespace mimohi
