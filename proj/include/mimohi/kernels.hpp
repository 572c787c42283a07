#pragma once

// Batch kernels behind the per-sample detectors and the EM updates.
//
// Each kernel exists twice with identical signatures: `serial` is the plain
// reference loop, `omp` splits the independent outer loop across OpenMP
// threads. Both evaluate every output element with the same per-element
// routine in the same order, so their results are bitwise equal; tests hold
// them to that. Received signals are stored column-wise (Nr x T).

#include <cstddef>
#include <vector>

#include "mimohi/core.hpp"

namespace mimohi::kernels {

using Labels = std::vector<std::size_t>;

struct Moments {
  ComplexMatrix mean;  // Nr x K
  RealVector spread;   // K, per-complex-dimension variance around `mean`
  RealVector weight;   // K, column sums of the responsibilities
};

namespace serial {

/// argmin_k ||y_n - c_k||^2 for every column of ys; ties go to the lowest k.
Labels nearest_center(const ComplexMatrix& ys, const ComplexMatrix& centers);

/// T x K table of -Nr ln(pi nu_k) - ||y_n - c_k||^2 / nu_k.
RealMatrix gaussian_loglik(const ComplexMatrix& ys, const ComplexMatrix& centers,
                           const RealVector& nu);

/// argmax of each row; ties go to the lowest column.
Labels row_argmax(const RealMatrix& table);

/// alpha_{n,i} proportional to theta(i, label_n) exp(loglik_{n,i}), computed
/// with max subtraction, then floored at eps and renormalized.
RealMatrix responsibilities(const RealMatrix& loglik, const RealMatrix& theta,
                            const Labels& labels, double eps);

/// ln sum_j theta(j, label_n) exp(loglik_{n,j}) for every row n.
RealVector label_loglik(const RealMatrix& loglik, const RealMatrix& theta, const Labels& labels);

/// Responsibility-weighted class means, then spreads around the new means.
/// Classes with zero total weight get a zero mean and spread.
Moments weighted_moments(const RealMatrix& alpha, const ComplexMatrix& ys);

}  // namespace serial

namespace omp {

Labels nearest_center(const ComplexMatrix& ys, const ComplexMatrix& centers);
RealMatrix gaussian_loglik(const ComplexMatrix& ys, const ComplexMatrix& centers,
                           const RealVector& nu);
Labels row_argmax(const RealMatrix& table);
RealMatrix responsibilities(const RealMatrix& loglik, const RealMatrix& theta,
                            const Labels& labels, double eps);
RealVector label_loglik(const RealMatrix& loglik, const RealMatrix& theta, const Labels& labels);
Moments weighted_moments(const RealMatrix& alpha, const ComplexMatrix& ys);

}  // namespace omp

}  // namespace mimohi::kernels
