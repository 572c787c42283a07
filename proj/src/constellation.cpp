#include "mimohi/constellation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mimohi {

SymbolBook::SymbolBook(std::vector<Complex> alphabet, std::size_t nt)
    : alphabet_(std::move(alphabet)), nt_(nt) {
  if (nt_ == 0) {
    throw std::invalid_argument("SymbolBook: Nt must be at least 1");
  }
  if (alphabet_.empty()) {
    throw std::invalid_argument("SymbolBook: empty alphabet");
  }
  const std::size_t m = alphabet_.size();
  std::size_t k_total = 1;
  for (std::size_t i = 0; i < nt_; ++i) {
    if (k_total > (std::size_t{1} << 20) / m) {
      throw std::invalid_argument("SymbolBook: M^Nt is too large to enumerate");
    }
    k_total *= m;
  }
  vectors_.resize(static_cast<Eigen::Index>(nt_), static_cast<Eigen::Index>(k_total));
  for (std::size_t k = 0; k < k_total; ++k) {
    std::size_t rest = k;
    for (std::size_t a = nt_; a-- > 0;) {
      vectors_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) = alphabet_[rest % m];
      rest /= m;
    }
  }
}

SymbolBook SymbolBook::qam4(std::size_t nt) {
  const double s = 1.0 / std::sqrt(2.0);
  return SymbolBook({Complex(-s, -s), Complex(-s, s), Complex(s, -s), Complex(s, s)}, nt);
}

ComplexVector SymbolBook::vector(std::size_t k) const {
  if (k >= size()) {
    throw std::invalid_argument("SymbolBook: index " + std::to_string(k) + " out of range [0, " +
                                std::to_string(size()) + ")");
  }
  return vectors_.col(static_cast<Eigen::Index>(k));
}

std::size_t SymbolBook::digit(std::size_t k, std::size_t antenna) const {
  std::size_t rest = k;
  for (std::size_t a = nt_ - 1; a > antenna; --a) {
    rest /= order();
  }
  return rest % order();
}

std::size_t SymbolBook::index_of(const ComplexVector& x) const {
  if (static_cast<std::size_t>(x.size()) != nt_) {
    throw std::invalid_argument("SymbolBook: vector has " + std::to_string(x.size()) +
                                " entries, expected " + std::to_string(nt_));
  }
  std::size_t k = 0;
  for (std::size_t a = 0; a < nt_; ++a) {
    std::size_t found = order();
    for (std::size_t i = 0; i < order(); ++i) {
      if (std::abs(x[static_cast<Eigen::Index>(a)] - alphabet_[i]) < 1e-9) {
        found = i;
        break;
      }
    }
    if (found == order()) {
      throw std::invalid_argument("SymbolBook: entry " + std::to_string(a) +
                                  " is not an alphabet point");
    }
    k = k * order() + found;
  }
  return k;
}

std::size_t symbol_errors(const SymbolBook& book, std::size_t k_true, std::size_t k_hat) {
  if (k_true == k_hat) {
    return 0;
  }
  std::size_t errors = 0;
  const std::size_t m = book.order();
  for (std::size_t a = 0; a < book.nt(); ++a) {
    errors += (k_true % m) != (k_hat % m) ? 1 : 0;
    k_true /= m;
    k_hat /= m;
  }
  return errors;
}

}  // namespace mimohi
