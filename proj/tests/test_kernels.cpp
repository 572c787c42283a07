#include "doctest.h"

#include <cstring>

#include "mimohi/kernels.hpp"
#include "oracles.hpp"

using namespace mimohi;
namespace ks = mimohi::kernels::serial;
namespace ko = mimohi::kernels::omp;

namespace {

struct Data {
  ComplexMatrix ys, centers;
  RealVector nu;
  RealMatrix theta;
  kernels::Labels labels;
};

Data make_data(std::uint64_t seed, Eigen::Index t, Eigen::Index nr, Eigen::Index k) {
  RngStream rng(seed, 0);
  Data d;
  d.ys = sample_complex_gaussian(rng, nr, t, 1.0);
  d.centers = sample_complex_gaussian(rng, nr, k, 1.0);
  d.nu = RealVector(k);
  for (Eigen::Index i = 0; i < k; ++i) d.nu(i) = 0.2 + rng.uniform();
  d.theta = RealMatrix(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) d.theta(i, j) = rng.uniform();
    d.theta.col(j) /= d.theta.col(j).sum();
  }
  d.labels.resize(static_cast<std::size_t>(t));
  for (auto& l : d.labels) l = rng.uniform_index(static_cast<std::size_t>(k));
  return d;
}

bool bitwise_equal(const RealMatrix& a, const RealMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * std::size_t(a.size())) == 0;
}

bool bitwise_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(Complex) * std::size_t(a.size())) == 0;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("serial and OpenMP kernels agree bitwise") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Data d = make_data(seed, 1000 + Eigen::Index(seed) * 37, 8, 16);
    CHECK(ks::nearest_center(d.ys, d.centers) == ko::nearest_center(d.ys, d.centers));
    const RealMatrix ll = ks::gaussian_loglik(d.ys, d.centers, d.nu);
    CHECK(bitwise_equal(ll, ko::gaussian_loglik(d.ys, d.centers, d.nu)));
    CHECK(ks::row_argmax(ll) == ko::row_argmax(ll));
    const RealMatrix a = ks::responsibilities(ll, d.theta, d.labels, 1e-8);
    CHECK(bitwise_equal(a, ko::responsibilities(ll, d.theta, d.labels, 1e-8)));
    CHECK(bitwise_equal(RealMatrix(ks::label_loglik(ll, d.theta, d.labels)),
                        RealMatrix(ko::label_loglik(ll, d.theta, d.labels))));
    const auto ms = ks::weighted_moments(a, d.ys);
    const auto mo = ko::weighted_moments(a, d.ys);
    CHECK(bitwise_equal(ms.mean, mo.mean));
    CHECK(bitwise_equal(RealMatrix(ms.spread), RealMatrix(mo.spread)));
    CHECK(bitwise_equal(RealMatrix(ms.weight), RealMatrix(mo.weight)));
  }
}

TEST_CASE("kernels against direct formulas") {
  const Data d = make_data(42, 60, 3, 4);
  const RealMatrix ll = ks::gaussian_loglik(d.ys, d.centers, d.nu);
  const RealMatrix alpha = ks::responsibilities(ll, d.theta, d.labels, 1e-8);
  const RealMatrix want = oracle::e_step(d.ys, d.labels, d.centers, d.nu, d.theta, 1e-8);
  CHECK((alpha - want).cwiseAbs().maxCoeff() < 1e-12);
  const RealVector lab = ks::label_loglik(ll, d.theta, d.labels);
  for (Eigen::Index n = 0; n < d.ys.cols(); ++n) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < 4; ++j) {
      s += d.theta(j, Eigen::Index(d.labels[std::size_t(n)])) *
           oracle::gauss_density(d.ys.col(n), d.centers.col(j), d.nu(j));
    }
    CHECK(lab(n) == doctest::Approx(std::log(s)).epsilon(1e-12));
    CHECK(ks::nearest_center(d.ys, d.centers)[std::size_t(n)] ==
          oracle::nearest(d.ys.col(n), ComplexMatrix::Identity(3, 3), d.centers));
  }
}

TEST_CASE("ties go to the lowest index") {
  ComplexMatrix centers = ComplexMatrix::Zero(1, 3);
  centers(0, 0) = 1.0;
  centers(0, 1) = -1.0;
  centers(0, 2) = 1.0;
  ComplexMatrix ys = ComplexMatrix::Zero(1, 2);
  ys(0, 1) = 1.0;
  CHECK(ks::nearest_center(ys, centers) == kernels::Labels{0, 0});
  RealMatrix table(1, 3);
  table << 2.0, 5.0, 5.0;
  CHECK(ks::row_argmax(table) == kernels::Labels{1});
}

}
