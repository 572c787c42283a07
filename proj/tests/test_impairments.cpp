#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mimohi/impairments.hpp"
#include "oracles.hpp"

using namespace mimohi;

TEST_SUITE("impairments") {

TEST_CASE("ADC level and boundary table") {
  const UniformAdc adc;
  REQUIRE(adc.levels().size() == 8);
  REQUIRE(adc.boundaries().size() == 7);
  CHECK(adc.levels().front() == -1.75);
  CHECK(adc.levels().back() == 1.75);
  CHECK(adc.boundaries()[3] == 0.0);
  CHECK(adc.boundaries()[4] == 0.5);
}

TEST_CASE("ADC boundary rule") {
  const UniformAdc adc;
  CHECK(adc.quantize(0.1) == 0.25);
  CHECK(adc.quantize(10.0) == 1.75);
  CHECK(adc.quantize(-10.0) == -1.75);
  CHECK(adc.quantize(0.0) == -0.25);
  CHECK(adc.quantize(0.5) == 0.25);
  CHECK(adc.quantize(std::nextafter(0.5, 1.0)) == 0.75);
  for (double v = -3.0; v <= 3.0; v += 0.0137) CHECK(adc.quantize(v) == oracle::adc_level(v));
}

TEST_CASE("ADC quantizes I and Q separately") {
  const UniformAdc adc;
  CHECK(adc_quantize(Complex(0.1, -0.9), adc) == Complex(0.25, -0.75));
  const ComplexVector r = ComplexVector::Constant(3, Complex(2.0, 0.0));
  CHECK(adc_quantize(r, adc) == ComplexVector::Constant(3, Complex(1.75, -0.25)));
}

TEST_CASE("Saleh PA") {
  const SalehPa pa;
  CHECK(saleh_pa(Complex(0.0, 0.0), pa) == Complex(0.0, 0.0));
  const Complex one = saleh_pa(Complex(1.0, 0.0), pa);
  CHECK(std::abs(one) == doctest::Approx(1.96 / 1.99).epsilon(1e-14));
  CHECK(std::abs(one) == doctest::Approx(0.984925).epsilon(1e-6));
  CHECK(std::arg(one) == doctest::Approx(2.53 / 3.82).epsilon(1e-14));
  CHECK(std::arg(one) == doctest::Approx(0.662304).epsilon(1e-6));

  const Complex x = Complex(1.0, 1.0) / std::sqrt(2.0);
  const Complex out = saleh_pa(x, pa);
  CHECK(std::abs(out) == doctest::Approx(0.984925).epsilon(1e-6));
  CHECK(std::arg(out) == doctest::Approx(std::numbers::pi / 4 + 0.662304).epsilon(1e-6));

  RngStream rng(1, 1);
  for (int i = 0; i < 200; ++i) {
    const Complex z(rng.normal(), rng.normal());
    const Complex want = oracle::saleh(z, 1.96, 0.99, 2.53, 2.82);
    CHECK(std::abs(saleh_pa(z, pa) - want) < 1e-13);
  }
}

TEST_CASE("Saleh phase shift depends only on magnitude") {
  const SalehPa pa;
  for (double r : {0.2, 0.7, 1.0, 1.9}) {
    double first = 0.0;
    for (int k = 0; k < 8; ++k) {
      const Complex x = std::polar(r, 0.3 + k * 0.7);
      double shift = std::arg(saleh_pa(x, pa) / x);
      if (k == 0) first = shift;
      CHECK(shift == doctest::Approx(first).epsilon(1e-12));
    }
  }
}

TEST_CASE("additive transmitter distortion") {
  RngStream rng(2, 2);
  const ComplexVector x = ComplexVector::Constant(4, Complex(0.7, -0.7));
  CHECK(additive_tx(rng, x, 0.0) == x);

  const std::size_t n = 100000;
  double power = 0.0;
  Complex cross = 0.0;
  RngStream sym(3, 3);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex s = sym.uniform() < 0.5 ? Complex(1.0, 0.0) : Complex(-1.0, 0.0);
    ComplexVector v(1);
    v(0) = s;
    const Complex eta = additive_tx(rng, v, 0.0025)(0) - s;
    power += std::norm(eta);
    cross += std::conj(s) * eta;
  }
  CHECK(power / n > 0.00245);
  CHECK(power / n < 0.00255);
  CHECK(std::abs(cross) / n / std::sqrt(0.0025) < 0.01);
}

TEST_CASE("additive receiver distortion covariance") {
  RngStream rng(4, 4);
  const ComplexMatrix h = sample_complex_gaussian(rng, 3, 2, 1.0);
  const ComplexVector r = ComplexVector::Zero(3);
  CHECK(additive_rx(rng, r, h, 0.0) == r);
  CHECK_THROWS_AS(additive_rx(rng, ComplexVector::Zero(2), h, 0.1), std::invalid_argument);

  const double kappa = 0.05;
  const std::size_t n = 100000;
  ComplexMatrix cov = ComplexMatrix::Zero(3, 3);
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexVector e = additive_rx(rng, r, h, kappa);
    cov += e * e.adjoint();
  }
  cov /= double(n);
  const ComplexMatrix want = kappa * h * h.adjoint();
  const double scale = want.diagonal().real().maxCoeff();
  CHECK((cov - want).cwiseAbs().maxCoeff() < 0.03 * scale);

  // H = I: same as the transmitter-side model
  RngStream a(8, 8), b(8, 8);
  const ComplexVector x = ComplexVector::Constant(2, Complex(1.0, 0.0));
  CHECK(additive_rx(a, x, ComplexMatrix::Identity(2, 2), kappa) == additive_tx(b, x, kappa));
}

TEST_CASE("scenario pipeline") {
  RngStream rng(5, 5);
  const ComplexMatrix h = sample_complex_gaussian(rng, 4, 2, 1.0);
  ComplexVector x(2);
  x << Complex(1, 1) / std::sqrt(2.0), Complex(-1, 1) / std::sqrt(2.0);

  ScenarioConfig ideal{Scenario::ideal};
  CHECK((apply_scenario(rng, ideal, x, h, 0.0) - h * x).norm() == 0.0);

  ScenarioConfig quiet{Scenario::additive};
  quiet.additive = AdditiveImpairment{0.0, 0.0};
  CHECK((apply_scenario(rng, quiet, x, h, 0.0) - h * x).norm() == 0.0);

  ScenarioConfig real{Scenario::realistic};
  ComplexMatrix one = ComplexMatrix::Ones(1, 1);
  ComplexVector s(1);
  s(0) = Complex(1, 1) / std::sqrt(2.0);
  const Complex pa = oracle::saleh(s(0), 1.96, 0.99, 2.53, 2.82);
  const Complex want(oracle::adc_level(pa.real()), oracle::adc_level(pa.imag()));
  CHECK(apply_scenario(rng, real, s, one, 0.0)(0) == want);
}

TEST_CASE("additive scenario effective noise covariance") {
  RngStream rng(6, 6);
  const ComplexMatrix h = sample_complex_gaussian(rng, 3, 2, 1.0);
  ScenarioConfig sc{Scenario::additive};
  sc.additive = AdditiveImpairment{0.01, 0.02};
  const double sigma2 = 0.05;
  const ComplexVector x = ComplexVector::Constant(2, Complex(1, -1) / std::sqrt(2.0));
  const std::size_t n = 100000;
  ComplexMatrix cov = ComplexMatrix::Zero(3, 3);
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexVector e = apply_scenario(rng, sc, x, h, sigma2) - h * x;
    cov += e * e.adjoint();
  }
  cov /= double(n);
  const ComplexMatrix want =
      0.03 * h * h.adjoint() + sigma2 * ComplexMatrix::Identity(3, 3);
  for (Eigen::Index i = 0; i < 3; ++i) {
    CHECK(cov(i, i).real() == doctest::Approx(want(i, i).real()).epsilon(0.03));
  }
  CHECK((cov - want).cwiseAbs().maxCoeff() < 0.03 * want.diagonal().real().maxCoeff());
}

TEST_CASE("scenario names") {
  CHECK(parse_scenario("realistic") == Scenario::realistic);
  CHECK(to_string(Scenario::additive) == "additive");
  CHECK_THROWS_AS(parse_scenario("perfect"), std::invalid_argument);
}

}
