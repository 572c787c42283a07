#include "mimohi/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mimohi::kernels {
namespace detail {

using Index = Eigen::Index;

inline double squared_distance(const ComplexMatrix& ys, Index n, const ComplexMatrix& centers,
                               Index k) {
  double acc = 0.0;
  for (Index r = 0; r < ys.rows(); ++r) {
    acc += std::norm(ys(r, n) - centers(r, k));
  }
  return acc;
}

inline std::size_t nearest(const ComplexMatrix& ys, Index n, const ComplexMatrix& centers) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < centers.cols(); ++k) {
    const double d = squared_distance(ys, n, centers, k);
    if (d < best_d) {
      best_d = d;
      best = static_cast<std::size_t>(k);
    }
  }
  return best;
}

inline void loglik_row(const ComplexMatrix& ys, Index n, const ComplexMatrix& centers,
                       const RealVector& nu, RealMatrix& out) {
  const double nr = static_cast<double>(ys.rows());
  for (Index k = 0; k < centers.cols(); ++k) {
    out(n, k) = -nr * std::log(std::numbers::pi * nu[k]) -
                squared_distance(ys, n, centers, k) / nu[k];
  }
}

inline std::size_t argmax_row(const RealMatrix& table, Index n) {
  std::size_t best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (Index k = 0; k < table.cols(); ++k) {
    if (table(n, k) > best_v) {
      best_v = table(n, k);
      best = static_cast<std::size_t>(k);
    }
  }
  return best;
}

inline void responsibility_row(const RealMatrix& loglik, const RealMatrix& theta,
                               std::size_t label, double eps, Index n, RealMatrix& alpha) {
  const Index k_count = loglik.cols();
  const auto col = static_cast<Index>(label);
  double peak = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < k_count; ++i) {
    const double v = std::log(theta(i, col)) + loglik(n, i);
    alpha(n, i) = v;
    peak = std::max(peak, v);
  }
  double total = 0.0;
  for (Index i = 0; i < k_count; ++i) {
    alpha(n, i) = std::exp(alpha(n, i) - peak);
    total += alpha(n, i);
  }
  double floored = 0.0;
  for (Index i = 0; i < k_count; ++i) {
    alpha(n, i) = std::max(alpha(n, i) / total, eps);
    floored += alpha(n, i);
  }
  for (Index i = 0; i < k_count; ++i) {
    alpha(n, i) /= floored;
  }
}

inline double label_loglik_row(const RealMatrix& loglik, const RealMatrix& theta,
                               std::size_t label, Index n) {
  const auto col = static_cast<Index>(label);
  double peak = -std::numeric_limits<double>::infinity();
  for (Index j = 0; j < loglik.cols(); ++j) {
    if (theta(j, col) > 0.0) peak = std::max(peak, std::log(theta(j, col)) + loglik(n, j));
  }
  double total = 0.0;
  for (Index j = 0; j < loglik.cols(); ++j) {
    if (theta(j, col) > 0.0) total += std::exp(std::log(theta(j, col)) + loglik(n, j) - peak);
  }
  return peak + std::log(total);
}

inline void moments_column(const RealMatrix& alpha, const ComplexMatrix& ys, Index i,
                           Moments& out) {
  const Index t_count = ys.cols();
  const Index nr = ys.rows();
  double weight = 0.0;
  for (Index n = 0; n < t_count; ++n) weight += alpha(n, i);
  out.weight[i] = weight;
  if (!(weight > 0.0)) {
    out.mean.col(i).setZero();
    out.spread[i] = 0.0;
    return;
  }
  for (Index r = 0; r < nr; ++r) {
    Complex acc(0.0, 0.0);
    for (Index n = 0; n < t_count; ++n) acc += alpha(n, i) * ys(r, n);
    out.mean(r, i) = acc / weight;
  }
  double spread = 0.0;
  for (Index n = 0; n < t_count; ++n) {
    spread += alpha(n, i) * squared_distance(ys, n, out.mean, i);
  }
  out.spread[i] = spread / (static_cast<double>(nr) * weight);
}

void check_labels(const RealMatrix& table, const RealMatrix& theta, const Labels& labels) {
  if (static_cast<Index>(labels.size()) != table.rows()) {
    throw std::invalid_argument("kernels: " + std::to_string(labels.size()) +
                                " labels for " + std::to_string(table.rows()) + " rows");
  }
  if (theta.rows() != table.cols() || theta.cols() != table.cols()) {
    throw std::invalid_argument("kernels: transition matrix must be K x K");
  }
  for (std::size_t label : labels) {
    if (static_cast<Index>(label) >= table.cols()) {
      throw std::invalid_argument("kernels: label out of range");
    }
  }
}

Moments empty_moments(const RealMatrix& alpha, const ComplexMatrix& ys) {
  if (alpha.rows() != ys.cols()) {
    throw std::invalid_argument("kernels: responsibilities and samples disagree on T");
  }
  Moments m;
  m.mean.resize(ys.rows(), alpha.cols());
  m.spread.resize(alpha.cols());
  m.weight.resize(alpha.cols());
  return m;
}

}  // namespace detail

// The two namespaces below differ only in the pragmas.

namespace serial {

Labels nearest_center(const ComplexMatrix& ys, const ComplexMatrix& centers) {
  Labels out(static_cast<std::size_t>(ys.cols()));
  for (Eigen::Index n = 0; n < ys.cols(); ++n) {
    out[static_cast<std::size_t>(n)] = detail::nearest(ys, n, centers);
  }
  return out;
}

RealMatrix gaussian_loglik(const ComplexMatrix& ys, const ComplexMatrix& centers,
                           const RealVector& nu) {
  RealMatrix out(ys.cols(), centers.cols());
  for (Eigen::Index n = 0; n < ys.cols(); ++n) {
    detail::loglik_row(ys, n, centers, nu, out);
  }
  return out;
}

Labels row_argmax(const RealMatrix& table) {
  Labels out(static_cast<std::size_t>(table.rows()));
  for (Eigen::Index n = 0; n < table.rows(); ++n) {
    out[static_cast<std::size_t>(n)] = detail::argmax_row(table, n);
  }
  return out;
}

RealMatrix responsibilities(const RealMatrix& loglik, const RealMatrix& theta,
                            const Labels& labels, double eps) {
  detail::check_labels(loglik, theta, labels);
  RealMatrix alpha(loglik.rows(), loglik.cols());
  for (Eigen::Index n = 0; n < loglik.rows(); ++n) {
    detail::responsibility_row(loglik, theta, labels[static_cast<std::size_t>(n)], eps, n, alpha);
  }
  return alpha;
}

RealVector label_loglik(const RealMatrix& loglik, const RealMatrix& theta, const Labels& labels) {
  detail::check_labels(loglik, theta, labels);
  RealVector out(loglik.rows());
  for (Eigen::Index n = 0; n < loglik.rows(); ++n) {
    out[n] = detail::label_loglik_row(loglik, theta, labels[static_cast<std::size_t>(n)], n);
  }
  return out;
}

Moments weighted_moments(const RealMatrix& alpha, const ComplexMatrix& ys) {
  Moments m = detail::empty_moments(alpha, ys);
  for (Eigen::Index i = 0; i < alpha.cols(); ++i) {
    detail::moments_column(alpha, ys, i, m);
  }
  return m;
}

}  // namespace serial

namespace omp {

Labels nearest_center(const ComplexMatrix& ys, const ComplexMatrix& centers) {
  Labels out(static_cast<std::size_t>(ys.cols()));
#pragma omp parallel for schedule(static)
  for (Eigen::Index n = 0; n < ys.cols(); ++n) {
    out[static_cast<std::size_t>(n)] = detail::nearest(ys, n, centers);
  }
  return out;
}

RealMatrix gaussian_loglik(const ComplexMatrix& ys, const ComplexMatrix& centers,
                           const RealVector& nu) {
  RealMatrix out(ys.cols(), centers.cols());
#pragma omp parallel for schedule(static)
  for (Eigen::Index n = 0; n < ys.cols(); ++n) {
    detail::loglik_row(ys, n, centers, nu, out);
  }
  return out;
}

Labels row_argmax(const RealMatrix& table) {
  Labels out(static_cast<std::size_t>(table.rows()));
#pragma omp parallel for schedule(static)
  for (Eigen::Index n = 0; n < table.rows(); ++n) {
    out[static_cast<std::size_t>(n)] = detail::argmax_row(table, n);
  }
  return out;
}

RealMatrix responsibilities(const RealMatrix& loglik, const RealMatrix& theta,
                            const Labels& labels, double eps) {
  detail::check_labels(loglik, theta, labels);
  RealMatrix alpha(loglik.rows(), loglik.cols());
#pragma omp parallel for schedule(static)
  for (Eigen::Index n = 0; n < loglik.rows(); ++n) {
    detail::responsibility_row(loglik, theta, labels[static_cast<std::size_t>(n)], eps, n, alpha);
  }
  return alpha;
}

RealVector label_loglik(const RealMatrix& loglik, const RealMatrix& theta, const Labels& labels) {
  detail::check_labels(loglik, theta, labels);
  RealVector out(loglik.rows());
#pragma omp parallel for schedule(static)
  for (Eigen::Index n = 0; n < loglik.rows(); ++n) {
    out[n] = detail::label_loglik_row(loglik, theta, labels[static_cast<std::size_t>(n)], n);
  }
  return out;
}

Moments weighted_moments(const RealMatrix& alpha, const ComplexMatrix& ys) {
  Moments m = detail::empty_moments(alpha, ys);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < alpha.cols(); ++i) {
    detail::moments_column(alpha, ys, i, m);
  }
  return m;
}

}  // namespace omp

}  // namespace mimohi::kernels
