#include "mimohi/impairments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mimohi {

UniformAdc::UniformAdc(int bits, double step) : bits_(bits) {
  if (bits < 1 || bits > 16) {
    throw std::invalid_argument("UniformAdc: bits must be in [1, 16]");
  }
  if (!(step > 0.0)) {
    throw std::invalid_argument("UniformAdc: step must be positive");
  }
  const int count = 1 << bits;
  const double centre = (count + 1) / 2.0;
  levels_.reserve(static_cast<std::size_t>(count));
  for (int k = 1; k <= count; ++k) {
    levels_.push_back((k - centre) * step);
  }
  boundaries_.reserve(static_cast<std::size_t>(count - 1));
  for (int k = 0; k + 1 < count; ++k) {
    boundaries_.push_back((levels_[k] + levels_[k + 1]) / 2.0);
  }
}

double UniformAdc::quantize(double v) const {
  // First boundary >= v is b_k with b_{k-1} < v <= b_k.
  const auto it = std::lower_bound(boundaries_.begin(), boundaries_.end(), v);
  return levels_[static_cast<std::size_t>(it - boundaries_.begin())];
}

Scenario parse_scenario(std::string_view name) {
  if (name == "ideal") return Scenario::ideal;
  if (name == "additive") return Scenario::additive;
  if (name == "realistic") return Scenario::realistic;
  throw std::invalid_argument("unknown scenario '" + std::string(name) +
                              "' (expected ideal, additive or realistic)");
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::ideal: return "ideal";
    case Scenario::additive: return "additive";
    case Scenario::realistic: return "realistic";
  }
  return "unknown";
}

ComplexVector additive_tx(RngStream& rng, const ComplexVector& x, double kappa_tx) {
  return x + sample_complex_gaussian(rng, static_cast<std::size_t>(x.size()), kappa_tx);
}

ComplexVector additive_rx(RngStream& rng, const ComplexVector& r, const ComplexMatrix& h,
                          double kappa_rx) {
  if (h.rows() != r.size()) {
    throw std::invalid_argument("additive_rx: H has " + std::to_string(h.rows()) +
                                " rows but r has " + std::to_string(r.size()) + " entries");
  }
  const ComplexVector w = sample_complex_gaussian(rng, static_cast<std::size_t>(h.cols()), kappa_rx);
  return r + h * w;
}

Complex saleh_pa(Complex x, const SalehPa& pa) {
  const double mag = std::abs(x);
  if (mag == 0.0) {
    return Complex(0.0, 0.0);
  }
  const double mag2 = mag * mag;
  const double out_mag = pa.alpha_a * mag / (1.0 + pa.eps_a * mag2);
  const double phase = std::arg(x) + pa.alpha_phi * mag2 / (1.0 + pa.eps_phi * mag2);
  return std::polar(out_mag, phase);
}

ComplexVector saleh_pa(const ComplexVector& x, const SalehPa& pa) {
  ComplexVector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out[i] = saleh_pa(x[i], pa);
  }
  return out;
}

Complex adc_quantize(Complex r, const UniformAdc& adc) {
  return Complex(adc.quantize(r.real()), adc.quantize(r.imag()));
}

ComplexVector adc_quantize(const ComplexVector& r, const UniformAdc& adc) {
  ComplexVector out(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    out[i] = adc_quantize(r[i], adc);
  }
  return out;
}

ComplexVector apply_scenario(RngStream& rng, const ScenarioConfig& scenario,
                             const ComplexVector& x, const ComplexMatrix& h, double sigma2) {
  if (h.cols() != x.size()) {
    throw std::invalid_argument("apply_scenario: H has " + std::to_string(h.cols()) +
                                " columns but x has " + std::to_string(x.size()) + " entries");
  }
  const auto nr = static_cast<std::size_t>(h.rows());
  switch (scenario.kind) {
    case Scenario::ideal:
      return h * x + sample_complex_gaussian(rng, nr, sigma2);
    case Scenario::additive: {
      const ComplexVector s = additive_tx(rng, x, scenario.additive.kappa_tx);
      const ComplexVector r = additive_rx(rng, h * s, h, scenario.additive.kappa_rx);
      return r + sample_complex_gaussian(rng, nr, sigma2);
    }
    case Scenario::realistic: {
      const ComplexVector r = h * saleh_pa(x, scenario.pa) + sample_complex_gaussian(rng, nr, sigma2);
      return adc_quantize(scenario.adc_input_scale * r, scenario.adc);
    }
  }
  throw std::invalid_argument("apply_scenario: unknown scenario");
}

}  // namespace mimohi
