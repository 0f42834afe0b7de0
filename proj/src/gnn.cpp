// Copyright 2026 the onts authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "onts/gnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "onts/rng.hpp"

namespace onts {

namespace {

constexpr double kProbClamp = 1e-12;
constexpr int kBatchSize = 32;

struct Mat {
  int rows = 0, cols = 0;
  std::vector<double> a;

  void assign(int r, int c, double v = 0.0) {
    rows = r;
    cols = c;
    a.assign(static_cast<size_t>(r) * c, v);
  }
  double* row(int i) { return a.data() + static_cast<size_t>(i) * cols; }
  const double* row(int i) const {
    return a.data() + static_cast<size_t>(i) * cols;
  }
};

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double clamp_prob(double p) {
  return std::min(1.0 - kProbClamp, std::max(kProbClamp, p));
}

// Rounding sends sigmoid to exactly 0.0 or 1.0 for |logit| above ~37; the
// published outputs stay strictly inside (0, 1).
double output_prob(double logit) { return clamp_prob(sigmoid(logit)); }

double bce(double p, double y) {
  const double pc = clamp_prob(p);
  return -(y * std::log(pc) + (1.0 - y) * std::log(1.0 - pc));
}

/// d(bce)/dp of the clamped expression; zero where the clamp is active so
/// the analytic gradient matches finite differences of the computed loss.
double bce_dp(double p, double y) {
  const double pc = clamp_prob(p);
  if (pc != p) return 0.0;
  return -y / pc + (1.0 - y) / (1.0 - pc);
}

// y = W s + b applied row-wise, then ReLU. W is (out x in) row-major.
void affine_relu(std::span<const double> W, std::span<const double> b,
                 const Mat& in, Mat& z, Mat& h) {
  const int out_dim = static_cast<int>(b.size());
  const int in_dim = in.cols;
  z.assign(in.rows, out_dim);
  h.assign(in.rows, out_dim);
  for (int i = 0; i < in.rows; ++i) {
    const double* s = in.row(i);
    double* zi = z.row(i);
    double* hi = h.row(i);
    for (int o = 0; o < out_dim; ++o) {
      double acc = b[o];
      const double* w = W.data() + static_cast<size_t>(o) * in_dim;
      for (int k = 0; k < in_dim; ++k) acc += w[k] * s[k];
      zi[o] = acc;
      hi[o] = acc > 0.0 ? acc : 0.0;
    }
  }
}

// Backprop of affine_relu: consumes dH, accumulates dW/db and d(input).
void affine_relu_backward(std::span<const double> W, const Mat& in,
                          const Mat& z, const Mat& dh, std::span<double> dW,
                          std::span<double> db, Mat* din) {
  const int out_dim = static_cast<int>(db.size());
  const int in_dim = in.cols;
  for (int i = 0; i < in.rows; ++i) {
    const double* zi = z.row(i);
    const double* dhi = dh.row(i);
    const double* si = in.row(i);
    double* dsi = din ? din->row(i) : nullptr;
    for (int o = 0; o < out_dim; ++o) {
      if (zi[o] <= 0.0) continue;
      const double g = dhi[o];
      if (g == 0.0) continue;
      db[o] += g;
      double* dw = dW.data() + static_cast<size_t>(o) * in_dim;
      const double* w = W.data() + static_cast<size_t>(o) * in_dim;
      for (int k = 0; k < in_dim; ++k) {
        dw[k] += g * si[k];
        if (dsi) dsi[k] += g * w[k];
      }
    }
  }
}

struct HalfTrace {
  Mat z;                    // pre-activation
  Mat h;                    // post-ReLU output
  Mat agg;                  // SAGE aggregated neighbor features
  std::vector<int> argmax;  // SAGE max: winning edge per (node, channel)
};

struct LayerTrace {
  HalfTrace con;  // first half: constraint nodes updated
  HalfTrace var;  // second half: variable nodes updated
};

struct Trace {
  Mat sv, sc;            // standardized features
  Mat z_v0, h_v0, z_c0, h_c0;
  std::vector<LayerTrace> layers;
  Mat head_z1, head_h1, head_z2, head_h2;
  std::vector<double> logits;
  std::vector<int> deg_var, deg_con;
  std::vector<double> gcn_edge_w;  // edge weight with degree normalization
};

Mat standardize(const std::vector<double>& features, int n, int dim) {
  Mat out;
  out.assign(n, dim);
  for (int f = 0; f < dim; ++f) {
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += features[static_cast<size_t>(i) * dim + f];
    mean /= n;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = features[static_cast<size_t>(i) * dim + f] - mean;
      var += d * d;
    }
    const double sd = std::sqrt(var / n);
    for (int i = 0; i < n; ++i)
      out.row(i)[f] =
          sd > 1e-12 ? (features[static_cast<size_t>(i) * dim + f] - mean) / sd
                     : 0.0;
  }
  return out;
}

std::string conv_key(const SatGNNConfig& cfg, int layer, const char* dir,
                     const char* part) {
  const int effective = cfg.share_conv_params ? 0 : layer;
  return "conv" + std::to_string(effective) + "." + dir + "." + part;
}

/// One half-convolution. `src` holds the message senders, `prev` the
/// previous features of the updated side (SAGE self term). `edge_dst` /
/// `edge_src` map each edge to the two sides for this direction.
void conv_half_forward(const ModelParams& params, int layer, const char* dir,
                       const BipartiteGraph& graph, const Trace& trace,
                       bool dst_is_con, const Mat& src, const Mat& prev,
                       HalfTrace& out) {
  const SatGNNConfig& cfg = params.config;
  const int d = cfg.hidden_dim;
  const int n_dst = prev.rows;

  if (cfg.conv == ConvKind::kGcn) {
    const auto W = params.tensor(conv_key(cfg, layer, dir, "W"));
    const auto b = params.tensor(conv_key(cfg, layer, dir, "b"));
    out.z.assign(n_dst, d);
    for (int i = 0; i < n_dst; ++i)
      for (int o = 0; o < d; ++o) out.z.row(i)[o] = b[o];
    // Transform every source node once, then scatter along edges.
    Mat tmp;
    tmp.assign(src.rows, d);
    for (int i = 0; i < src.rows; ++i) {
      const double* s = src.row(i);
      double* ti = tmp.row(i);
      for (int o = 0; o < d; ++o) {
        double acc = 0.0;
        const double* w = W.data() + static_cast<size_t>(o) * d;
        for (int k = 0; k < d; ++k) acc += w[k] * s[k];
        ti[o] = acc;
      }
    }
    for (size_t e = 0; e < graph.edges.size(); ++e) {
      const auto& edge = graph.edges[e];
      const int dst = dst_is_con ? edge.con : edge.var;
      const int s = dst_is_con ? edge.var : edge.con;
      const double w = trace.gcn_edge_w[e];
      const double* ts = tmp.row(s);
      double* zd = out.z.row(dst);
      for (int o = 0; o < d; ++o) zd[o] += w * ts[o];
    }
  } else {
    const auto W_self = params.tensor(conv_key(cfg, layer, dir, "W_self"));
    const auto W_neigh = params.tensor(conv_key(cfg, layer, dir, "W_neigh"));
    const auto b = params.tensor(conv_key(cfg, layer, dir, "b"));

    out.agg.assign(n_dst, d, cfg.aggregation == Aggregation::kMax
                                 ? -std::numeric_limits<double>::infinity()
                                 : 0.0);
    if (cfg.aggregation == Aggregation::kMax)
      out.argmax.assign(static_cast<size_t>(n_dst) * d, -1);
    for (size_t e = 0; e < graph.edges.size(); ++e) {
      const auto& edge = graph.edges[e];
      const int dst = dst_is_con ? edge.con : edge.var;
      const int s = dst_is_con ? edge.var : edge.con;
      const double* hs = src.row(s);
      double* ag = out.agg.row(dst);
      if (cfg.aggregation == Aggregation::kMax) {
        for (int o = 0; o < d; ++o) {
          const double m = edge.weight * hs[o];
          if (m > ag[o]) {
            ag[o] = m;
            out.argmax[static_cast<size_t>(dst) * d + o] = static_cast<int>(e);
          }
        }
      } else {
        for (int o = 0; o < d; ++o) ag[o] += edge.weight * hs[o];
      }
    }
    const std::vector<int>& deg = dst_is_con ? trace.deg_con : trace.deg_var;
    for (int i = 0; i < n_dst; ++i) {
      double* ag = out.agg.row(i);
      if (deg[i] == 0) {
        for (int o = 0; o < d; ++o) ag[o] = 0.0;  // empty neighborhood
      } else if (cfg.aggregation == Aggregation::kMean) {
        for (int o = 0; o < d; ++o) ag[o] /= deg[i];
      }
    }

    out.z.assign(n_dst, d);
    for (int i = 0; i < n_dst; ++i) {
      const double* hp = prev.row(i);
      const double* ag = out.agg.row(i);
      double* zi = out.z.row(i);
      for (int o = 0; o < d; ++o) {
        double acc = b[o];
        const double* ws = W_self.data() + static_cast<size_t>(o) * d;
        const double* wn = W_neigh.data() + static_cast<size_t>(o) * d;
        for (int k = 0; k < d; ++k) acc += ws[k] * hp[k] + wn[k] * ag[k];
        zi[o] = acc;
      }
    }
  }

  out.h.assign(out.z.rows, out.z.cols);
  for (size_t i = 0; i < out.z.a.size(); ++i)
    out.h.a[i] = out.z.a[i] > 0.0 ? out.z.a[i] : 0.0;
}

void conv_half_backward(const ModelParams& params, std::vector<double>& grad,
                        int layer, const char* dir,
                        const BipartiteGraph& graph, const Trace& trace,
                        bool dst_is_con, const Mat& src, const Mat& prev,
                        const HalfTrace& half, const Mat& dh, Mat& dsrc,
                        Mat& dprev) {
  const SatGNNConfig& cfg = params.config;
  const int d = cfg.hidden_dim;
  const int n_dst = prev.rows;

  Mat dz;
  dz.assign(n_dst, d);
  for (size_t i = 0; i < dz.a.size(); ++i)
    dz.a[i] = half.z.a[i] > 0.0 ? dh.a[i] : 0.0;

  auto gview = [&params, &grad](const std::string& key) {
    const TensorSpec& s = params.spec(key);
    return std::span<double>(grad.data() + s.offset,
                             static_cast<size_t>(s.rows) * s.cols);
  };

  if (cfg.conv == ConvKind::kGcn) {
    const auto W = params.tensor(conv_key(cfg, layer, dir, "W"));
    auto dW = gview(conv_key(cfg, layer, dir, "W"));
    auto db = gview(conv_key(cfg, layer, dir, "b"));
    for (int i = 0; i < n_dst; ++i) {
      const double* dzi = dz.row(i);
      for (int o = 0; o < d; ++o) db[o] += dzi[o];
    }
    // dTMP[src] accumulates (w * dz[dst]) over edges, then flows into W
    // and the source features.
    Mat dtmp;
    dtmp.assign(src.rows, d);
    for (size_t e = 0; e < graph.edges.size(); ++e) {
      const auto& edge = graph.edges[e];
      const int dst = dst_is_con ? edge.con : edge.var;
      const int s = dst_is_con ? edge.var : edge.con;
      const double w = trace.gcn_edge_w[e];
      const double* dzd = dz.row(dst);
      double* dts = dtmp.row(s);
      for (int o = 0; o < d; ++o) dts[o] += w * dzd[o];
    }
    for (int i = 0; i < src.rows; ++i) {
      const double* dts = dtmp.row(i);
      const double* si = src.row(i);
      double* dsi = dsrc.row(i);
      for (int o = 0; o < d; ++o) {
        const double g = dts[o];
        if (g == 0.0) continue;
        double* dw = dW.data() + static_cast<size_t>(o) * d;
        const double* w = W.data() + static_cast<size_t>(o) * d;
        for (int k = 0; k < d; ++k) {
          dw[k] += g * si[k];
          dsi[k] += g * w[k];
        }
      }
    }
  } else {
    const auto W_self = params.tensor(conv_key(cfg, layer, dir, "W_self"));
    const auto W_neigh = params.tensor(conv_key(cfg, layer, dir, "W_neigh"));
    auto dW_self = gview(conv_key(cfg, layer, dir, "W_self"));
    auto dW_neigh = gview(conv_key(cfg, layer, dir, "W_neigh"));
    auto db = gview(conv_key(cfg, layer, dir, "b"));

    Mat dagg;
    dagg.assign(n_dst, d);
    for (int i = 0; i < n_dst; ++i) {
      const double* dzi = dz.row(i);
      const double* hp = prev.row(i);
      const double* ag = half.agg.row(i);
      double* dpi = dprev.row(i);
      double* dai = dagg.row(i);
      for (int o = 0; o < d; ++o) {
        const double g = dzi[o];
        if (g == 0.0) continue;
        db[o] += g;
        double* dws = dW_self.data() + static_cast<size_t>(o) * d;
        double* dwn = dW_neigh.data() + static_cast<size_t>(o) * d;
        const double* ws = W_self.data() + static_cast<size_t>(o) * d;
        const double* wn = W_neigh.data() + static_cast<size_t>(o) * d;
        for (int k = 0; k < d; ++k) {
          dws[k] += g * hp[k];
          dwn[k] += g * ag[k];
          dpi[k] += g * ws[k];
          dai[k] += g * wn[k];
        }
      }
    }

    const std::vector<int>& deg = dst_is_con ? trace.deg_con : trace.deg_var;
    if (cfg.aggregation == Aggregation::kMax) {
      for (int i = 0; i < n_dst; ++i) {
        const double* dai = dagg.row(i);
        for (int o = 0; o < d; ++o) {
          const int e = half.argmax[static_cast<size_t>(i) * d + o];
          if (e < 0 || dai[o] == 0.0) continue;
          const auto& edge = graph.edges[e];
          const int s = dst_is_con ? edge.var : edge.con;
          dsrc.row(s)[o] += edge.weight * dai[o];
        }
      }
    } else {
      for (size_t e = 0; e < graph.edges.size(); ++e) {
        const auto& edge = graph.edges[e];
        const int dst = dst_is_con ? edge.con : edge.var;
        const int s = dst_is_con ? edge.var : edge.con;
        const double scale = cfg.aggregation == Aggregation::kMean
                                 ? edge.weight / deg[dst]
                                 : edge.weight;
        const double* dad = dagg.row(dst);
        double* dss = dsrc.row(s);
        for (int o = 0; o < d; ++o) dss[o] += scale * dad[o];
      }
    }
  }
}

void forward_pass(const ModelParams& params, const BipartiteGraph& graph,
                  Trace& trace) {
  const SatGNNConfig& cfg = params.config;
  if (graph.n_var < 1)
    throw std::invalid_argument("forward: graph has no variable nodes");
  if (graph.var_feature_dim != cfg.var_input_dim())
    throw std::invalid_argument(
        "forward: graph feature width does not match the task (candidate "
        "column required iff feasibility)");

  trace.deg_var.assign(graph.n_var, 0);
  trace.deg_con.assign(graph.n_con, 0);
  for (const auto& e : graph.edges) {
    ++trace.deg_var[e.var];
    ++trace.deg_con[e.con];
  }
  trace.gcn_edge_w.resize(graph.edges.size());
  for (size_t e = 0; e < graph.edges.size(); ++e) {
    const auto& edge = graph.edges[e];
    double w = edge.weight;
    if (cfg.conv == ConvKind::kGcn && cfg.gcn_normalize)
      w /= std::sqrt(static_cast<double>(trace.deg_con[edge.con])) *
           std::sqrt(static_cast<double>(trace.deg_var[edge.var]));
    trace.gcn_edge_w[e] = w;
  }

  trace.sv = standardize(graph.var_features, graph.n_var, graph.var_feature_dim);
  trace.sc = standardize(graph.con_features, graph.n_con, kConFeatureDim);

  affine_relu(params.tensor("enc_var.W"), params.tensor("enc_var.b"), trace.sv,
              trace.z_v0, trace.h_v0);
  affine_relu(params.tensor("enc_con.W"), params.tensor("enc_con.b"), trace.sc,
              trace.z_c0, trace.h_c0);

  trace.layers.resize(cfg.num_layers);
  const Mat* h_var = &trace.h_v0;
  const Mat* h_con = &trace.h_c0;
  for (int l = 0; l < cfg.num_layers; ++l) {
    LayerTrace& lt = trace.layers[l];
    conv_half_forward(params, l, "vc", graph, trace, /*dst_is_con=*/true,
                      *h_var, *h_con, lt.con);
    conv_half_forward(params, l, "cv", graph, trace, /*dst_is_con=*/false,
                      lt.con.h, *h_var, lt.var);
    h_con = &lt.con.h;
    h_var = &lt.var.h;
  }

  affine_relu(params.tensor("head.W1"), params.tensor("head.b1"), *h_var,
              trace.head_z1, trace.head_h1);
  affine_relu(params.tensor("head.W2"), params.tensor("head.b2"),
              trace.head_h1, trace.head_z2, trace.head_h2);
  const auto W3 = params.tensor("head.W3");
  const auto b3 = params.tensor("head.b3");
  trace.logits.assign(graph.n_var, 0.0);
  for (int i = 0; i < graph.n_var; ++i) {
    const double* h = trace.head_h2.row(i);
    double acc = b3[0];
    for (int k = 0; k < cfg.hidden_dim; ++k) acc += W3[k] * h[k];
    trace.logits[i] = acc;
  }
}

/// Back-propagates d(loss)/d(logit) into the flat gradient vector.
void backward_pass(const ModelParams& params, const BipartiteGraph& graph,
                   const Trace& trace, const std::vector<double>& dlogits,
                   std::vector<double>& grad) {
  const SatGNNConfig& cfg = params.config;
  const int d = cfg.hidden_dim;
  const int n_var = graph.n_var;

  auto gview = [&params, &grad](const std::string& key) {
    const TensorSpec& s = params.spec(key);
    return std::span<double>(grad.data() + s.offset,
                             static_cast<size_t>(s.rows) * s.cols);
  };

  // Head.
  const auto W3 = params.tensor("head.W3");
  auto dW3 = gview("head.W3");
  auto db3 = gview("head.b3");
  Mat dh2;
  dh2.assign(n_var, d);
  for (int i = 0; i < n_var; ++i) {
    const double g = dlogits[i];
    if (g == 0.0) continue;
    db3[0] += g;
    const double* h2 = trace.head_h2.row(i);
    double* dh2i = dh2.row(i);
    for (int k = 0; k < d; ++k) {
      dW3[k] += g * h2[k];
      dh2i[k] = g * W3[k];
    }
  }
  Mat dh1;
  dh1.assign(n_var, d);
  affine_relu_backward(params.tensor("head.W2"), trace.head_h1, trace.head_z2,
                       dh2, gview("head.W2"), gview("head.b2"), &dh1);
  const Mat& head_in = cfg.num_layers > 0 ? trace.layers.back().var.h : trace.h_v0;
  Mat dh_var;
  dh_var.assign(n_var, d);
  affine_relu_backward(params.tensor("head.W1"), head_in, trace.head_z1, dh1,
                       gview("head.W1"), gview("head.b1"), &dh_var);

  // Convolution layers, last to first.
  Mat dh_con;
  dh_con.assign(graph.n_con, d);
  for (int l = cfg.num_layers - 1; l >= 0; --l) {
    const LayerTrace& lt = trace.layers[l];
    const Mat& h_var_in = l > 0 ? trace.layers[l - 1].var.h : trace.h_v0;
    const Mat& h_con_in = l > 0 ? trace.layers[l - 1].con.h : trace.h_c0;

    // Second half (var update): src = updated con features, self = h_var_in.
    Mat dh_var_in;
    dh_var_in.assign(n_var, d);
    conv_half_backward(params, grad, l, "cv", graph, trace,
                       /*dst_is_con=*/false, lt.con.h, h_var_in, lt.var,
                       dh_var, dh_con, dh_var_in);
    // First half (con update): src = h_var_in, self = h_con_in.
    Mat dh_con_in;
    dh_con_in.assign(graph.n_con, d);
    conv_half_backward(params, grad, l, "vc", graph, trace,
                       /*dst_is_con=*/true, h_var_in, h_con_in, lt.con,
                       dh_con, dh_var_in, dh_con_in);

    dh_var = std::move(dh_var_in);
    dh_con = std::move(dh_con_in);
  }

  affine_relu_backward(params.tensor("enc_var.W"), trace.sv, trace.z_v0,
                       dh_var, gview("enc_var.W"), gview("enc_var.b"), nullptr);
  affine_relu_backward(params.tensor("enc_con.W"), trace.sc, trace.z_c0,
                       dh_con, gview("enc_con.W"), gview("enc_con.b"), nullptr);
}

double sample_loss_from_trace(const BipartiteGraph& graph, const Trace& trace,
                              const TrainingTarget& target, LossMode mode,
                              std::vector<double>* dlogits) {
  const int n_var = graph.n_var;
  if (dlogits) dlogits->assign(n_var, 0.0);

  if (mode == LossMode::kFeas) {
    double mean_logit = 0.0;
    for (double l : trace.logits) mean_logit += l;
    mean_logit /= n_var;
    const double p = sigmoid(mean_logit);
    const double value = bce(p, target.feas_label);
    if (dlogits) {
      const double dp = bce_dp(p, target.feas_label);
      const double dlogit_total = dp * p * (1.0 - p);
      for (int i = 0; i < n_var; ++i) (*dlogits)[i] = dlogit_total / n_var;
    }
    return value;
  }

  const int n_bin = graph.n_binary;
  if (target.solutions.empty())
    throw std::invalid_argument("loss: no target solutions for bias mode");
  std::vector<double> weights = target.weights;
  if (mode == LossMode::kOptBest)
    weights.assign(target.solutions.size(), 0.0), weights[0] = 1.0;
  if (weights.size() != target.solutions.size())
    throw std::invalid_argument("loss: weights/solutions size mismatch");

  double value = 0.0;
  for (size_t s = 0; s < target.solutions.size(); ++s) {
    const auto& sol = target.solutions[s];
    if (static_cast<int>(sol.size()) != n_bin)
      throw std::invalid_argument("loss: target length != binary node count");
    if (weights[s] == 0.0) continue;
    double acc = 0.0;
    for (int k = 0; k < n_bin; ++k) {
      const double p = sigmoid(trace.logits[k]);
      acc += bce(p, sol[k]);
      if (dlogits) {
        const double dp = bce_dp(p, sol[k]);
        (*dlogits)[k] += weights[s] * dp * p * (1.0 - p) / n_bin;
      }
    }
    value += weights[s] * acc / n_bin;
  }
  return value;
}

double sample_loss_and_grad(const ModelParams& params, const Sample& sample,
                            LossMode mode, std::vector<double>* grad) {
  Trace trace;
  forward_pass(params, sample.graph, trace);
  std::vector<double> dlogits;
  const double value = sample_loss_from_trace(
      sample.graph, trace, sample.target, mode, grad ? &dlogits : nullptr);
  if (grad) backward_pass(params, sample.graph, trace, dlogits, *grad);
  return value;
}

struct Adam {
  double lr;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::vector<double> m, v;
  long t = 0;

  explicit Adam(size_t n, double learning_rate)
      : lr(learning_rate), m(n, 0.0), v(n, 0.0) {}

  void step(std::vector<double>& theta, const std::vector<double>& grad) {
    ++t;
    const double bc1 = 1.0 - std::pow(beta1, t);
    const double bc2 = 1.0 - std::pow(beta2, t);
    for (size_t i = 0; i < theta.size(); ++i) {
      m[i] = beta1 * m[i] + (1.0 - beta1) * grad[i];
      v[i] = beta2 * v[i] + (1.0 - beta2) * grad[i] * grad[i];
      theta[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + eps);
    }
  }
};

LossMode default_mode(const Sample& sample, TaskKind task) {
  if (task == TaskKind::kFeasibility) return LossMode::kFeas;
  return sample.target.solutions.size() > 1 ? LossMode::kOptMulti
                                            : LossMode::kOptBest;
}

}  // namespace

std::span<double> ModelParams::tensor(std::string_view name) {
  const TensorSpec& s = spec(name);
  return {values.data() + s.offset, static_cast<size_t>(s.rows) * s.cols};
}

std::span<const double> ModelParams::tensor(std::string_view name) const {
  const TensorSpec& s = spec(name);
  return {values.data() + s.offset, static_cast<size_t>(s.rows) * s.cols};
}

const TensorSpec& ModelParams::spec(std::string_view name) const {
  for (const TensorSpec& s : tensors)
    if (s.name == name) return s;
  throw std::out_of_range("no tensor named '" + std::string(name) + "'");
}

ModelParams ModelParams::init(const SatGNNConfig& config) {
  ModelParams p;
  p.config = config;
  if (config.hidden_dim < 1 || config.num_layers < 1)
    throw std::invalid_argument("SatGNNConfig: need d >= 1 and L >= 1");

  auto add = [&p](const std::string& name, int rows, int cols) {
    p.tensors.push_back({name, rows, cols, p.values.size()});
    p.values.resize(p.values.size() + static_cast<size_t>(rows) * cols, 0.0);
  };

  const int d = config.hidden_dim;
  add("enc_var.W", d, config.var_input_dim());
  add("enc_var.b", d, 1);
  add("enc_con.W", d, kConFeatureDim);
  add("enc_con.b", d, 1);
  const int conv_sets = config.share_conv_params ? 1 : config.num_layers;
  for (int l = 0; l < conv_sets; ++l) {
    for (const char* dir : {"vc", "cv"}) {
      const std::string base = "conv" + std::to_string(l) + "." + dir + ".";
      if (config.conv == ConvKind::kGcn) {
        add(base + "W", d, d);
        add(base + "b", d, 1);
      } else {
        add(base + "W_self", d, d);
        add(base + "W_neigh", d, d);
        add(base + "b", d, 1);
      }
    }
  }
  add("head.W1", d, d);
  add("head.b1", d, 1);
  add("head.W2", d, d);
  add("head.b2", d, 1);
  add("head.W3", 1, d);
  add("head.b3", 1, 1);

  // Biases draw from the same fan-scaled interval as their weights; a
  // zero-init bias would leave nodes with dead neighborhoods sitting exactly
  // on the ReLU kink, which breaks finite-difference gradient checks.
  Rng rng(derive_seed(config.seed, 7));
  for (const TensorSpec& s : p.tensors) {
    const double limit = std::sqrt(6.0 / (s.rows + s.cols));
    for (size_t i = 0; i < static_cast<size_t>(s.rows) * s.cols; ++i)
      p.values[s.offset + i] = rng.uniform(-limit, limit);
  }
  return p;
}

ForwardResult forward(const ModelParams& params, const BipartiteGraph& graph) {
  Trace trace;
  forward_pass(params, graph, trace);

  ForwardResult result;
  result.logits = trace.logits;
  if (params.config.task == TaskKind::kFeasibility) {
    double mean_logit = 0.0;
    for (double l : trace.logits) mean_logit += l;
    result.graph_prob = output_prob(mean_logit / graph.n_var);
  } else {
    result.node_probs.resize(graph.n_binary);
    for (int k = 0; k < graph.n_binary; ++k)
      result.node_probs[k] = output_prob(trace.logits[k]);
  }
  return result;
}

std::vector<double> solution_weights(const std::vector<double>& qos_values) {
  if (qos_values.empty())
    throw std::invalid_argument("solution_weights: empty pool");
  const double top = *std::max_element(qos_values.begin(), qos_values.end());
  std::vector<double> w(qos_values.size());
  double total = 0.0;
  for (size_t i = 0; i < qos_values.size(); ++i) {
    w[i] = std::exp(qos_values[i] - top);
    total += w[i];
  }
  for (double& wi : w) wi /= total;
  return w;
}

double loss(const ModelParams& params, std::span<const Sample> batch,
            LossMode mode) {
  if (batch.empty()) throw std::invalid_argument("loss: empty batch");
  double total = 0.0;
  for (const Sample& sample : batch)
    total += sample_loss_and_grad(params, sample, mode, nullptr);
  return total / static_cast<double>(batch.size());
}

double sample_loss(const ModelParams& params, const Sample& sample,
                   LossMode mode, std::vector<double>* grad) {
  if (grad && grad->size() != params.values.size())
    throw std::invalid_argument("sample_loss: gradient buffer size mismatch");
  return sample_loss_and_grad(params, sample, mode, grad);
}

ModelParams train(const SatGNNConfig& config, const TrainData& data,
                  TrainReport* report) {
  if (data.train.empty()) throw std::invalid_argument("train: empty dataset");
  ModelParams params = ModelParams::init(config);
  std::span<const Sample> val =
      data.val.empty() ? std::span<const Sample>(data.train)
                       : std::span<const Sample>(data.val);

  Adam adam(params.values.size(), config.learning_rate);
  Rng shuffle_rng(derive_seed(config.seed, 11));
  std::vector<size_t> order(data.train.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> grad(params.values.size(), 0.0);

  ModelParams best = params;
  double best_val = std::numeric_limits<double>::infinity();
  int best_epoch = 0;
  TrainReport local;
  TrainReport& rep = report ? *report : local;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    for (size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[shuffle_rng.bounded(i)]);

    for (size_t start = 0; start < order.size(); start += kBatchSize) {
      const size_t end = std::min(order.size(), start + kBatchSize);
      std::fill(grad.begin(), grad.end(), 0.0);
      double batch_loss = 0.0;
      for (size_t i = start; i < end; ++i) {
        const Sample& sample = data.train[order[i]];
        batch_loss += sample_loss_and_grad(
            params, sample, default_mode(sample, config.task), &grad);
      }
      const double scale = 1.0 / static_cast<double>(end - start);
      for (double& g : grad) g *= scale;
      if (!std::isfinite(batch_loss))
        throw std::runtime_error("train: diverged (non-finite loss) at epoch " +
                                 std::to_string(epoch));
      adam.step(params.values, grad);
    }

    double train_loss = 0.0;
    for (const Sample& s : data.train)
      train_loss +=
          sample_loss_and_grad(params, s, default_mode(s, config.task), nullptr);
    train_loss /= static_cast<double>(data.train.size());
    double val_loss = 0.0;
    for (const Sample& s : val)
      val_loss +=
          sample_loss_and_grad(params, s, default_mode(s, config.task), nullptr);
    val_loss /= static_cast<double>(val.size());
    if (!std::isfinite(train_loss) || !std::isfinite(val_loss))
      throw std::runtime_error("train: diverged (non-finite loss) at epoch " +
                               std::to_string(epoch));

    rep.history.push_back({epoch, train_loss, val_loss});
    if (val_loss < best_val) {
      best_val = val_loss;
      best = params;
      best_epoch = epoch;
    }
    if (config.task == TaskKind::kFeasibility && train_loss < 1e-2) break;
  }

  rep.best_epoch = best_epoch;
  rep.best_val_loss = best_val;
  return best;
}

double grad_check(const ModelParams& params, const Sample& sample,
                  LossMode mode, int n_probes) {
  std::vector<double> analytic(params.values.size(), 0.0);
  sample_loss_and_grad(params, sample, mode, &analytic);

  std::vector<size_t> indices(params.values.size());
  std::iota(indices.begin(), indices.end(), 0);
  Rng rng(derive_seed(params.config.seed, 1234));
  for (size_t i = indices.size(); i > 1; --i)
    std::swap(indices[i - 1], indices[rng.bounded(i)]);

  // Central differences carry rounding noise of about |loss| * eps / (2h);
  // a parameter whose gradient sits below that scale cannot be compared in
  // double precision, so such probes only count when nothing larger exists
  // (e.g. at a perfect-prediction point all gradients vanish together).
  const double h = 1e-5;
  const double informative = 1e-7;
  const size_t wanted =
      std::min(indices.size(), static_cast<size_t>(std::max(1, n_probes)));

  ModelParams probe = params;
  double max_rel = 0.0;
  double max_rel_tiny = 0.0;
  size_t used = 0;
  for (size_t i = 0; i < indices.size() && used < wanted; ++i) {
    const size_t idx = indices[i];
    const double saved = probe.values[idx];
    probe.values[idx] = saved + h;
    const double lp = sample_loss_and_grad(probe, sample, mode, nullptr);
    probe.values[idx] = saved - h;
    const double lm = sample_loss_and_grad(probe, sample, mode, nullptr);
    probe.values[idx] = saved;
    const double numeric = (lp - lm) / (2.0 * h);
    const double denom =
        std::max({std::abs(analytic[idx]), std::abs(numeric), 1e-8});
    const double rel = std::abs(analytic[idx] - numeric) / denom;
    if (std::max(std::abs(analytic[idx]), std::abs(numeric)) >= informative) {
      max_rel = std::max(max_rel, rel);
      ++used;
    } else {
      max_rel_tiny = std::max(max_rel_tiny, rel);
    }
  }
  return used > 0 ? max_rel : max_rel_tiny;
}

std::string_view conv_kind_name(ConvKind k) {
  return k == ConvKind::kGcn ? "gcn" : "sage";
}

std::string_view aggregation_name(Aggregation a) {
  switch (a) {
    case Aggregation::kMean: return "mean";
    case Aggregation::kMax: return "max";
    case Aggregation::kSum: return "sum";
  }
  return "unknown";
}

std::string_view task_name(TaskKind t) {
  return t == TaskKind::kFeasibility ? "feasibility" : "bias";
}

}  // namespace onts
