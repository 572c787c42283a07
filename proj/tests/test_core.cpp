#include "doctest.h"

#include <cmath>

#include "mimohi/core.hpp"
#include "oracles.hpp"

using namespace mimohi;

TEST_SUITE("core") {

TEST_CASE("zero variance gives the zero vector") {
  RngStream rng(1, 2);
  CHECK(sample_complex_gaussian(rng, 16, 0.0).isZero(0.0));
  CHECK_THROWS_AS(sample_complex_gaussian(rng, 4, -1.0), std::invalid_argument);
}

TEST_CASE("complex gaussian power and component balance") {
  RngStream rng(11, 0);
  const std::size_t n = 100000;
  const ComplexVector z = sample_complex_gaussian(rng, n, 1.0);
  double power = 0.0, re2 = 0.0, cross = 0.0;
  Complex mean = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    power += std::norm(z(i));
    re2 += z(i).real() * z(i).real();
    cross += z(i).real() * z(i).imag();
    mean += z(i);
  }
  power /= n;
  // E|z|^2 = 1 with Var|z|^2 = 1 for CN(0,1): 3 sigma band is 3/sqrt(n).
  CHECK(std::abs(power - 1.0) < 3.0 / std::sqrt(double(n)));
  CHECK(std::abs(re2 / n - 0.5) < 0.01);
  CHECK(std::abs(cross / n) < 0.01);
  CHECK(std::abs(mean / double(n)) < 0.01);
}

TEST_CASE("streams replay and differ") {
  RngStream a(5, 9), b(5, 9), c(5, 10);
  const ComplexVector va = sample_complex_gaussian(a, 8, 1.0);
  CHECK(va == sample_complex_gaussian(b, 8, 1.0));
  CHECK(va != sample_complex_gaussian(c, 8, 1.0));

  RngStream parent(5, 9);
  const RngStream f1 = parent.fork(1);
  const RngStream f1_again = parent.fork(1);
  RngStream x = f1, y = f1_again, z = parent.fork(2);
  const double first = x.normal();
  CHECK(first == y.normal());
  CHECK(first != z.normal());
  // fork leaves the parent where it was
  RngStream fresh(5, 9);
  CHECK(parent.normal() == fresh.normal());
}

TEST_CASE("uniform_index stays in range") {
  RngStream rng(3, 3);
  for (int i = 0; i < 1000; ++i) CHECK(rng.uniform_index(7) < 7);
}

TEST_CASE("ls_solve identity and exact recovery") {
  RngStream rng(4, 4);
  const ComplexMatrix b = sample_complex_gaussian(rng, 3, 2, 1.0);
  CHECK((ls_solve(ComplexMatrix::Identity(2, 2), b) - b).norm() < 1e-14);

  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix h = sample_complex_gaussian(rng, 8, 2, 1.0);
    const ComplexMatrix a = sample_complex_gaussian(rng, 2, 4, 1.0);
    const ComplexMatrix got = ls_solve(a, h * a);
    CHECK((got - h).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((got - oracle::ls_small(a, h * a)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("ls_solve is a least-squares minimizer") {
  RngStream rng(6, 1);
  const ComplexMatrix h = sample_complex_gaussian(rng, 4, 2, 1.0);
  const ComplexMatrix a = sample_complex_gaussian(rng, 2, 4, 1.0);
  const ComplexMatrix b = h * a + sample_complex_gaussian(rng, 4, 4, 0.1);
  const ComplexMatrix got = ls_solve(a, b);
  const double best = (b - got * a).norm();
  CHECK(best <= (b - h * a).norm());
  for (int p = 0; p < 200; ++p) {
    const ComplexMatrix nudged = got + sample_complex_gaussian(rng, 4, 2, 1e-4);
    CHECK(best <= (b - nudged * a).norm() + 1e-15);
  }
}

TEST_CASE("ls_solve rejects a singular Gram matrix") {
  ComplexMatrix a(2, 4);
  a.row(0).setConstant(Complex(1.0, 1.0));
  a.row(1) = 2.0 * a.row(0);
  CHECK_THROWS_AS(ls_solve(a, ComplexMatrix::Ones(3, 4)), RankDeficientError);
}

}
