#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mimohi/core.hpp"

namespace mimohi {

/// Gaussian distortion noise at both ends of the link.
struct AdditiveImpairment {
  double kappa_tx = 0.0025;
  double kappa_rx = 0.0025;
};

/// Saleh amplitude/phase model of a power amplifier.
struct SalehPa {
  double alpha_a = 1.96;
  double eps_a = 0.99;
  double alpha_phi = 2.53;
  double eps_phi = 2.82;
};

/// Mid-rise uniform quantizer with 2^bits levels spaced `step` apart and
/// centred on zero. bits = 3, step = 0.5 gives levels -1.75, -1.25, ..., 1.75.
class UniformAdc {
 public:
  explicit UniformAdc(int bits = 3, double step = 0.5);

  int bits() const { return bits_; }
  const std::vector<double>& levels() const { return levels_; }
  const std::vector<double>& boundaries() const { return boundaries_; }

  /// Level y_k with b_{k-1} < v <= b_k (b_0 = -inf, b_{2^B} = +inf).
  double quantize(double v) const;

 private:
  int bits_;
  std::vector<double> levels_;
  std::vector<double> boundaries_;
};

enum class Scenario { ideal, additive, realistic };

Scenario parse_scenario(std::string_view name);
std::string to_string(Scenario s);

struct ScenarioConfig {
  Scenario kind = Scenario::ideal;
  AdditiveImpairment additive{};
  SalehPa pa{};
  UniformAdc adc{};
  /// Gain applied to the receive samples before quantization.
  double adc_input_scale = 1.0;
};

/// x + eta_tx, eta_tx ~ CN(0, kappa_tx I).
ComplexVector additive_tx(RngStream& rng, const ComplexVector& x, double kappa_tx);

/// r + H w with w ~ CN(0, kappa_rx I), so the added term is CN(0, kappa_rx H H^H).
ComplexVector additive_rx(RngStream& rng, const ComplexVector& r, const ComplexMatrix& h,
                          double kappa_rx);

Complex saleh_pa(Complex x, const SalehPa& pa);
ComplexVector saleh_pa(const ComplexVector& x, const SalehPa& pa);

/// Quantizes I and Q independently.
Complex adc_quantize(Complex r, const UniformAdc& adc);
ComplexVector adc_quantize(const ComplexVector& r, const UniformAdc& adc);

/// One received vector y = f_rx(H f_tx(x) + z) for the configured scenario:
///   ideal      H x + z
///   additive   H (x + eta_tx) + eta_rx + z
///   realistic  ADC(H PA(x) + z)
ComplexVector apply_scenario(RngStream& rng, const ScenarioConfig& scenario,
                             const ComplexVector& x, const ComplexMatrix& h, double sigma2);

}  // namespace mimohi
