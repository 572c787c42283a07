#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mimohi/constellation.hpp"
#include "mimohi/core.hpp"
#include "mimohi/kernels.hpp"

namespace mimohi::emnl {

using Labels = kernels::Labels;

/// Received vectors (columns of y, Nr x T) paired with noisy class labels.
struct NoisyDataset {
  Labels labels;
  ComplexMatrix y;

  std::size_t size() const { return labels.size(); }
  void validate(std::size_t k_classes) const;
};

/// Per-class isotropic Gaussians (mu_k, nu_k) and the label-correcting
/// transition matrix theta(i, j) = P(true = i | noisy = j).
struct GaussianModelParams {
  ComplexMatrix mu;   // Nr x K
  RealVector nu;      // K, all > 0
  RealMatrix theta;   // K x K, column-stochastic

  std::size_t classes() const { return static_cast<std::size_t>(nu.size()); }
};

/// T x K posterior over the true label of each sample; rows sum to one.
struct Responsibilities {
  RealMatrix alpha;
};

struct EmnlOptions {
  int iterations = 20;
  double eps = 1e-8;
};

inline constexpr double kNuFloor = 1e-12;

/// Minimum-distance detection ignoring impairments: argmin_k ||y - H_hat x_k||^2.
std::size_t coarse_detect(const ComplexVector& y, const ComplexMatrix& h_hat,
                          const SymbolBook& book);
Labels coarse_detect_all(const ComplexMatrix& ys, const ComplexMatrix& h_hat,
                         const SymbolBook& book);

/// Labels every column of ys by coarse detection.
NoisyDataset make_coarse_dataset(const ComplexMatrix& ys, const ComplexMatrix& h_hat,
                                 const SymbolBook& book);

/// ln of the isotropic complex Gaussian density: -Nr ln(pi nu) - ||y - mu||^2 / nu.
double gauss_loglik(const ComplexVector& y, const ComplexVector& mu, double nu);

/// Posterior of the true label given (y, noisy label) under params, eps-floored.
Responsibilities e_step(const GaussianModelParams& params, const NoisyDataset& data, double eps);

/// Label-free posterior p(y; w_i) / sum_j p(y; w_j), eps-floored; used to seed
/// the transition matrix before the first E-step.
Responsibilities initial_responsibilities(const GaussianModelParams& params,
                                          const NoisyDataset& data, double eps);

struct ClassMoments {
  ComplexMatrix mu;
  RealVector nu;
  RealVector weight;  // sum_n alpha_{n,i}
};

/// Closed-form maximizer of the expected complete-data log-likelihood: means
/// first, then variances around the fresh means, floored at kNuFloor.
/// A class with zero weight is left undetermined (weight 0); run_emnl keeps
/// its previous parameters.
ClassMoments m_step(const Responsibilities& resp, const NoisyDataset& data);

/// Normalized soft counts per noisy label; unobserved labels keep e_j.
RealMatrix theta_step(const Responsibilities& resp, const NoisyDataset& data);

/// Observed-data log-likelihood sum_n ln sum_j theta(j, label_n) p(y_n; w_j).
double log_likelihood(const GaussianModelParams& params, const NoisyDataset& data);

/// mu_k = H_hat x_k, nu_k = sigma2, theta = I.
GaussianModelParams initial_params(const ComplexMatrix& h_hat, double sigma2,
                                   const SymbolBook& book);

/// Optional per-iteration record: entry 0 is the log-likelihood after
/// initialization, entry t after iteration t.
struct EmnlTrace {
  std::vector<double> log_likelihood;
  std::vector<RealMatrix> theta;
  bool keep_theta = false;
};

GaussianModelParams run_emnl(const NoisyDataset& data, const ComplexMatrix& h_hat, double sigma2,
                             const SymbolBook& book, const EmnlOptions& options,
                             EmnlTrace* trace = nullptr);

/// Maximum-likelihood detection under the learned model.
std::size_t md_detect(const ComplexVector& y, const GaussianModelParams& params);
Labels md_detect_all(const ComplexMatrix& ys, const GaussianModelParams& params);

/// Writes <dir>/<stem>_loglik.csv (iteration,log_likelihood) and, when the
/// trace kept them, <dir>/<stem>_theta.csv (iteration,i,j,value).
void write_trace_csv(const EmnlTrace& trace, const std::string& dir, const std::string& stem);

}  // namespace mimohi::emnl
