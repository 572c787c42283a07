#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mimohi/core.hpp"

namespace mimohi::mlp {

struct Layer {
  RealMatrix weights;  // out x in
  RealVector biases;   // out
};

using Parameters = std::vector<Layer>;

/// Fully connected ReLU network with a softmax output, plus Adam moments.
struct MlpState {
  Parameters layers;
  Parameters adam_m;
  Parameters adam_v;
  std::int64_t step_count = 0;

  std::size_t input_dim() const { return static_cast<std::size_t>(layers.front().weights.cols()); }
  std::size_t output_dim() const { return static_cast<std::size_t>(layers.back().weights.rows()); }
  std::vector<std::size_t> dims() const;
};

inline constexpr double kLogFloor = 1e-12;

/// dims = {in, hidden..., out}. Zero biases, weights ~ N(0, 2 / fan_in).
MlpState make_mlp(const std::vector<std::size_t>& dims, RngStream& rng);

/// Same shapes as `like`, all zeros.
Parameters zeros_like(const Parameters& like);

/// [Re y; Im y; Re vec(H); Im vec(H)], vec() stacking columns.
RealVector encode_input(const ComplexVector& y, const ComplexMatrix& h_hat);

/// encode_input applied to every column of ys; returns features x T.
RealMatrix encode_inputs(const ComplexMatrix& ys, const ComplexMatrix& h_hat);

RealVector softmax(const RealVector& logits);

/// Pre-softmax outputs for each column of x.
RealMatrix logits(const MlpState& state, const RealMatrix& x);

RealVector forward(const MlpState& state, const RealVector& x);

/// Column-wise probabilities, K x B.
RealMatrix forward_batch(const MlpState& state, const RealMatrix& x);

/// -sum_k t_k ln(p_k + kLogFloor).
double loss_ce(const RealVector& target, const RealVector& probs);

/// Gradient of loss_ce(t, forward(state, x)) for one sample.
Parameters backward(const MlpState& state, const RealVector& x, const RealVector& target);

struct BatchEval {
  Parameters gradient;
  RealVector losses;  // per column, before the update
  RealMatrix probs;   // K x B, before the update
};

/// Gradient of sum_b w_b loss_b / sum_b w_b over the columns of x.
/// `weights` may be empty for uniform weighting; sum_b w_b must be positive.
BatchEval weighted_gradient(const MlpState& state, const RealMatrix& x, const RealMatrix& targets,
                            const RealVector& weights);

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// One bias-corrected Adam update; increments step_count.
void adam_step(MlpState& state, const Parameters& gradient, double lr,
               const AdamConfig& cfg = AdamConfig{});

/// lr0 through half of the epochs, lr0 / 5 through three quarters, lr0 / 25 after.
/// Epochs count from 1.
double lr_schedule(int epoch, int epochs, double lr0);

/// Little-endian binary: "MLPW", u64 layer count + 1, u64 dims, then per layer
/// the weights (column-major) and biases as f64.
void save(const MlpState& state, const std::string& path);
MlpState load(const std::string& path);

}  // namespace mimohi::mlp
