#include "mimohi/emnl.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace mimohi::emnl {

using Eigen::Index;

void NoisyDataset::validate(std::size_t k_classes) const {
  if (static_cast<Index>(labels.size()) != y.cols()) {
    throw std::invalid_argument("NoisyDataset: " + std::to_string(labels.size()) +
                                " labels for " + std::to_string(y.cols()) + " samples");
  }
  for (std::size_t label : labels) {
    if (label >= k_classes) {
      throw std::invalid_argument("NoisyDataset: label " + std::to_string(label) +
                                  " out of range for K = " + std::to_string(k_classes));
    }
  }
}

std::size_t coarse_detect(const ComplexVector& y, const ComplexMatrix& h_hat,
                          const SymbolBook& book) {
  return coarse_detect_all(y, h_hat, book).front();
}

Labels coarse_detect_all(const ComplexMatrix& ys, const ComplexMatrix& h_hat,
                         const SymbolBook& book) {
  if (h_hat.rows() != ys.rows() || static_cast<std::size_t>(h_hat.cols()) != book.nt()) {
    throw std::invalid_argument("coarse_detect: channel estimate is " +
                                std::to_string(h_hat.rows()) + "x" +
                                std::to_string(h_hat.cols()) + ", inconsistent with the data");
  }
  const ComplexMatrix centers = h_hat * book.vectors();
  return kernels::omp::nearest_center(ys, centers);
}

NoisyDataset make_coarse_dataset(const ComplexMatrix& ys, const ComplexMatrix& h_hat,
                                 const SymbolBook& book) {
  return NoisyDataset{coarse_detect_all(ys, h_hat, book), ys};
}

double gauss_loglik(const ComplexVector& y, const ComplexVector& mu, double nu) {
  if (!(nu > 0.0)) {
    throw std::invalid_argument("gauss_loglik: variance must be positive");
  }
  const double nr = static_cast<double>(y.size());
  return -nr * std::log(std::numbers::pi * nu) - (y - mu).squaredNorm() / nu;
}

Responsibilities e_step(const GaussianModelParams& params, const NoisyDataset& data, double eps) {
  data.validate(params.classes());
  const RealMatrix loglik = kernels::omp::gaussian_loglik(data.y, params.mu, params.nu);
  return {kernels::omp::responsibilities(loglik, params.theta, data.labels, eps)};
}

Responsibilities initial_responsibilities(const GaussianModelParams& params,
                                          const NoisyDataset& data, double eps) {
  data.validate(params.classes());
  const auto k = static_cast<Index>(params.classes());
  // A transition matrix with identical columns carries no label information.
  const RealMatrix flat = RealMatrix::Constant(k, k, 1.0 / static_cast<double>(k));
  const RealMatrix loglik = kernels::omp::gaussian_loglik(data.y, params.mu, params.nu);
  return {kernels::omp::responsibilities(loglik, flat, data.labels, eps)};
}

ClassMoments m_step(const Responsibilities& resp, const NoisyDataset& data) {
  kernels::Moments m = kernels::omp::weighted_moments(resp.alpha, data.y);
  ClassMoments out{std::move(m.mean), std::move(m.spread), std::move(m.weight)};
  for (Index i = 0; i < out.nu.size(); ++i) {
    out.nu[i] = std::max(out.nu[i], kNuFloor);
  }
  return out;
}

RealMatrix theta_step(const Responsibilities& resp, const NoisyDataset& data) {
  const Index k = resp.alpha.cols();
  RealMatrix sums = RealMatrix::Zero(k, k);
  RealVector counts = RealVector::Zero(k);
  for (std::size_t n = 0; n < data.labels.size(); ++n) {
    const auto j = static_cast<Index>(data.labels[n]);
    sums.col(j) += resp.alpha.row(static_cast<Index>(n)).transpose();
    counts[j] += 1.0;
  }
  for (Index j = 0; j < k; ++j) {
    if (counts[j] == 0.0) {
      sums.col(j).setZero();
      sums(j, j) = 1.0;
    } else {
      sums.col(j) /= counts[j];
    }
  }
  return sums;
}

double log_likelihood(const GaussianModelParams& params, const NoisyDataset& data) {
  data.validate(params.classes());
  const RealMatrix loglik = kernels::omp::gaussian_loglik(data.y, params.mu, params.nu);
  const RealVector per_sample = kernels::omp::label_loglik(loglik, params.theta, data.labels);
  double total = 0.0;
  for (Index n = 0; n < per_sample.size(); ++n) total += per_sample[n];
  return total;
}

GaussianModelParams initial_params(const ComplexMatrix& h_hat, double sigma2,
                                   const SymbolBook& book) {
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("initial_params: sigma2 must be positive");
  }
  const auto k = static_cast<Index>(book.size());
  return GaussianModelParams{h_hat * book.vectors(), RealVector::Constant(k, sigma2),
                             RealMatrix::Identity(k, k)};
}

GaussianModelParams run_emnl(const NoisyDataset& data, const ComplexMatrix& h_hat, double sigma2,
                             const SymbolBook& book, const EmnlOptions& options,
                             EmnlTrace* trace) {
  if (data.size() == 0) {
    throw std::invalid_argument("run_emnl: empty dataset");
  }
  if (options.iterations < 0) {
    throw std::invalid_argument("run_emnl: negative iteration count");
  }
  GaussianModelParams params = initial_params(h_hat, sigma2, book);
  data.validate(params.classes());
  params.theta = theta_step(initial_responsibilities(params, data, options.eps), data);

  auto record = [&] {
    if (trace == nullptr) return;
    trace->log_likelihood.push_back(log_likelihood(params, data));
    if (trace->keep_theta) trace->theta.push_back(params.theta);
  };
  record();
  for (int t = 0; t < options.iterations; ++t) {
    const Responsibilities resp = e_step(params, data, options.eps);
    const ClassMoments moments = m_step(resp, data);
    for (Index i = 0; i < moments.weight.size(); ++i) {
      if (moments.weight[i] > 0.0) {
        params.mu.col(i) = moments.mu.col(i);
        params.nu[i] = moments.nu[i];
      }
    }
    params.theta = theta_step(resp, data);
    record();
  }
  return params;
}

std::size_t md_detect(const ComplexVector& y, const GaussianModelParams& params) {
  return md_detect_all(y, params).front();
}

Labels md_detect_all(const ComplexMatrix& ys, const GaussianModelParams& params) {
  if (ys.rows() != params.mu.rows()) {
    throw std::invalid_argument("md_detect: received vectors and model disagree on Nr");
  }
  return kernels::omp::row_argmax(kernels::omp::gaussian_loglik(ys, params.mu, params.nu));
}

void write_trace_csv(const EmnlTrace& trace, const std::string& dir, const std::string& stem) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  {
    const auto path = base / (stem + "_loglik.csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "iteration,log_likelihood\n";
    out.precision(17);
    for (std::size_t t = 0; t < trace.log_likelihood.size(); ++t) {
      out << t << ',' << trace.log_likelihood[t] << '\n';
    }
  }
  if (trace.theta.empty()) return;
  const auto path = base / (stem + "_theta.csv");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "iteration,i,j,value\n";
  out.precision(17);
  for (std::size_t t = 0; t < trace.theta.size(); ++t) {
    const RealMatrix& th = trace.theta[t];
    for (Index j = 0; j < th.cols(); ++j)
      for (Index i = 0; i < th.rows(); ++i) out << t << ',' << i << ',' << j << ',' << th(i, j) << '\n';
  }
}

}  // namespace mimohi::emnl
