#include "mimohi/mlp.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace mimohi::mlp {

using Eigen::Index;

std::vector<std::size_t> MlpState::dims() const {
  std::vector<std::size_t> d;
  d.push_back(input_dim());
  for (const Layer& l : layers) d.push_back(static_cast<std::size_t>(l.weights.rows()));
  return d;
}

MlpState make_mlp(const std::vector<std::size_t>& dims, RngStream& rng) {
  if (dims.size() < 2) {
    throw std::invalid_argument("make_mlp: need at least input and output sizes");
  }
  MlpState state;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const auto in = static_cast<Index>(dims[l]);
    const auto out = static_cast<Index>(dims[l + 1]);
    if (in == 0 || out == 0) throw std::invalid_argument("make_mlp: zero-width layer");
    const double sd = std::sqrt(2.0 / static_cast<double>(in));
    Layer layer{RealMatrix(out, in), RealVector::Zero(out)};
    for (Index c = 0; c < in; ++c)
      for (Index r = 0; r < out; ++r) layer.weights(r, c) = sd * rng.normal();
    state.layers.push_back(std::move(layer));
  }
  state.adam_m = zeros_like(state.layers);
  state.adam_v = zeros_like(state.layers);
  return state;
}

Parameters zeros_like(const Parameters& like) {
  Parameters out;
  out.reserve(like.size());
  for (const Layer& l : like) {
    out.push_back({RealMatrix::Zero(l.weights.rows(), l.weights.cols()),
                   RealVector::Zero(l.biases.size())});
  }
  return out;
}

RealVector encode_input(const ComplexVector& y, const ComplexMatrix& h_hat) {
  const Index nr = y.size();
  const Index nh = h_hat.size();
  RealVector f(2 * nr + 2 * nh);
  f.segment(0, nr) = y.real();
  f.segment(nr, nr) = y.imag();
  const Eigen::Map<const ComplexVector> vec_h(h_hat.data(), nh);
  f.segment(2 * nr, nh) = vec_h.real();
  f.segment(2 * nr + nh, nh) = vec_h.imag();
  return f;
}

RealMatrix encode_inputs(const ComplexMatrix& ys, const ComplexMatrix& h_hat) {
  if (h_hat.rows() != ys.rows()) {
    throw std::invalid_argument("encode_inputs: H_hat rows must match Nr");
  }
  const Index nr = ys.rows();
  const Index nh = h_hat.size();
  RealMatrix f(2 * nr + 2 * nh, ys.cols());
  const RealVector h_part = encode_input(ComplexVector::Zero(0), h_hat);
  for (Index n = 0; n < ys.cols(); ++n) {
    f.col(n).segment(0, nr) = ys.col(n).real();
    f.col(n).segment(nr, nr) = ys.col(n).imag();
    f.col(n).segment(2 * nr, 2 * nh) = h_part;
  }
  return f;
}

RealVector softmax(const RealVector& z) {
  const RealVector e = (z.array() - z.maxCoeff()).exp();
  return e / e.sum();
}

namespace {

void check_input(const MlpState& state, const RealMatrix& x) {
  if (state.layers.empty()) throw std::invalid_argument("mlp: empty network");
  if (static_cast<std::size_t>(x.rows()) != state.input_dim()) {
    throw std::invalid_argument("mlp: input has " + std::to_string(x.rows()) +
                                " features, network expects " +
                                std::to_string(state.input_dim()));
  }
}

RealMatrix column_softmax(RealMatrix z) {
  for (Index c = 0; c < z.cols(); ++c) {
    const double peak = z.col(c).maxCoeff();
    z.col(c) = (z.col(c).array() - peak).exp();
    z.col(c) /= z.col(c).sum();
  }
  return z;
}

// Pre-activations of every layer; activations are relu(pre) except the last.
std::vector<RealMatrix> forward_trace(const MlpState& state, const RealMatrix& x) {
  std::vector<RealMatrix> pre;
  pre.reserve(state.layers.size());
  RealMatrix a = x;
  for (std::size_t l = 0; l < state.layers.size(); ++l) {
    const Layer& layer = state.layers[l];
    RealMatrix z = layer.weights * a;
    z.colwise() += layer.biases;
    if (l + 1 < state.layers.size()) a = z.cwiseMax(0.0);
    pre.push_back(std::move(z));
  }
  return pre;
}

}  // namespace

RealMatrix logits(const MlpState& state, const RealMatrix& x) {
  check_input(state, x);
  return forward_trace(state, x).back();
}

RealVector forward(const MlpState& state, const RealVector& x) {
  return forward_batch(state, x).col(0);
}

RealMatrix forward_batch(const MlpState& state, const RealMatrix& x) {
  return column_softmax(logits(state, x));
}

double loss_ce(const RealVector& target, const RealVector& probs) {
  if (target.size() != probs.size()) {
    throw std::invalid_argument("loss_ce: target and prediction lengths differ");
  }
  return -(target.array() * (probs.array() + kLogFloor).log()).sum();
}

BatchEval weighted_gradient(const MlpState& state, const RealMatrix& x, const RealMatrix& targets,
                            const RealVector& weights) {
  check_input(state, x);
  const Index batch = x.cols();
  if (targets.cols() != batch || static_cast<std::size_t>(targets.rows()) != state.output_dim()) {
    throw std::invalid_argument("weighted_gradient: targets must be K x B");
  }
  if (weights.size() != 0 && weights.size() != batch) {
    throw std::invalid_argument("weighted_gradient: one weight per column expected");
  }
  const RealVector w = weights.size() == 0 ? RealVector::Ones(batch) : weights;
  const double total = w.sum();
  if (!(total > 0.0)) {
    throw std::invalid_argument("weighted_gradient: weights must have a positive sum");
  }

  const std::vector<RealMatrix> pre = forward_trace(state, x);
  BatchEval eval;
  eval.probs = column_softmax(pre.back());
  eval.losses.resize(batch);

  // d/dz_j of -sum_k t_k ln(p_k + c) is p_j sum_k u_k - u_j with u_k = t_k p_k / (p_k + c).
  RealMatrix delta(eval.probs.rows(), batch);
  for (Index b = 0; b < batch; ++b) {
    const auto p = eval.probs.col(b).array();
    const auto t = targets.col(b).array();
    eval.losses[b] = -(t * (p + kLogFloor).log()).sum();
    const RealVector u = t * p / (p + kLogFloor);
    delta.col(b) = (p * u.sum() - u.array()).matrix() * (w[b] / total);
  }

  eval.gradient.resize(state.layers.size());
  for (std::size_t l = state.layers.size(); l-- > 0;) {
    const RealMatrix& input = l == 0 ? x : RealMatrix(pre[l - 1].cwiseMax(0.0));
    eval.gradient[l].weights.noalias() = delta * input.transpose();
    eval.gradient[l].biases = delta.rowwise().sum();
    if (l > 0) {
      RealMatrix back = state.layers[l].weights.transpose() * delta;
      back.array() *= (pre[l - 1].array() > 0.0).cast<double>();
      delta = std::move(back);
    }
  }
  return eval;
}

Parameters backward(const MlpState& state, const RealVector& x, const RealVector& target) {
  return weighted_gradient(state, x, target, RealVector()).gradient;
}

void adam_step(MlpState& state, const Parameters& gradient, double lr, const AdamConfig& cfg) {
  if (gradient.size() != state.layers.size()) {
    throw std::invalid_argument("adam_step: gradient has the wrong number of layers");
  }
  state.step_count += 1;
  const double t = static_cast<double>(state.step_count);
  const double c1 = 1.0 - std::pow(cfg.beta1, t);
  const double c2 = 1.0 - std::pow(cfg.beta2, t);
  auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * g.cwiseProduct(g);
    param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + cfg.eps);
  };
  for (std::size_t l = 0; l < gradient.size(); ++l) {
    update(state.layers[l].weights, state.adam_m[l].weights, state.adam_v[l].weights,
           gradient[l].weights);
    update(state.layers[l].biases, state.adam_m[l].biases, state.adam_v[l].biases,
           gradient[l].biases);
  }
}

double lr_schedule(int epoch, int epochs, double lr0) {
  if (epoch < 1 || epoch > epochs) {
    throw std::invalid_argument("lr_schedule: epoch " + std::to_string(epoch) +
                                " outside [1, " + std::to_string(epochs) + "]");
  }
  if (epoch <= 0.5 * epochs) return lr0;
  if (epoch <= 0.75 * epochs) return lr0 / 5.0;
  return lr0 / 25.0;
}

static_assert(std::endian::native == std::endian::little,
              "mlp::save/load write the host representation");

void save(const MlpState& state, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("mlp::save: cannot open " + path);
  auto put_u64 = [&](std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); };
  auto put_f64 = [&](const double* p, Index n) {
    out.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n * sizeof(double)));
  };
  out.write("MLPW", 4);
  const auto dims = state.dims();
  put_u64(dims.size());
  for (std::size_t d : dims) put_u64(d);
  for (const Layer& l : state.layers) {
    put_f64(l.weights.data(), l.weights.size());
    put_f64(l.biases.data(), l.biases.size());
  }
  if (!out) throw std::runtime_error("mlp::save: write failed for " + path);
}

MlpState load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("mlp::load: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "MLPW") {
    throw std::runtime_error("mlp::load: " + path + " is not a saved network");
  }
  auto get_u64 = [&] {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
  };
  const std::uint64_t count = get_u64();
  if (!in || count < 2 || count > 64) throw std::runtime_error("mlp::load: bad header in " + path);
  std::vector<std::size_t> dims;
  for (std::uint64_t i = 0; i < count; ++i) dims.push_back(static_cast<std::size_t>(get_u64()));
  MlpState state;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    Layer layer{RealMatrix(static_cast<Index>(dims[l + 1]), static_cast<Index>(dims[l])),
                RealVector(static_cast<Index>(dims[l + 1]))};
    in.read(reinterpret_cast<char*>(layer.weights.data()),
            static_cast<std::streamsize>(layer.weights.size() * sizeof(double)));
    in.read(reinterpret_cast<char*>(layer.biases.data()),
            static_cast<std::streamsize>(layer.biases.size() * sizeof(double)));
    state.layers.push_back(std::move(layer));
  }
  if (!in) throw std::runtime_error("mlp::load: truncated file " + path);
  state.adam_m = zeros_like(state.layers);
  state.adam_v = zeros_like(state.layers);
  return state;
}

}  // namespace mimohi::mlp
