#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "emospace/corpus.hpp"

namespace emospace {

// Autoregressive linear valence model. One step consumes a word vector v
// and the previous (h, r) state:
//   o = W_h h + W_v v + b_h
//   u = W_o . o + b_o
//   r = sigma * r_prev + (1 - sigma) * u
// and o becomes the next hidden state. sigma is stored through a logistic
// squash so the final blend is always a convex combination.
struct ModelParams {
    Eigen::MatrixXd W_h;  // d x d, hidden-block weights
    Eigen::MatrixXd W_v;  // d x d, word-block weights
    Eigen::VectorXd b_h;  // d
    Eigen::VectorXd W_o;  // d, output weights
    double b_o = 0.0;
    double sigma_logit = 0.0;

    int dim() const noexcept { return static_cast<int>(W_v.cols()); }
    double sigma() const { return 1.0 / (1.0 + std::exp(-sigma_logit)); }
};

struct StepState {
    Eigen::VectorXd h;
    double r = 0.0;
};

StepState initial_state(int d);  // h = 0, r = 0 (neutral valence)

struct StepOutput {
    StepState next;
    double u = 0.0;  // pseudo-rating before the recurrence blend
    double r = 0.0;  // final rating prediction
};

StepOutput forward_step(const ModelParams& params, const StepState& state,
                        const Vec& v);

// One rating prediction per token, from the zero initial state.
std::vector<double> forward_transcript(const ModelParams& params,
                                       const AlignedSequence& seq);

// Full per-step record; what backpropagation through time and the blend
// diagnostics need.
struct ForwardTrace {
    std::vector<Eigen::VectorXd> o;  // hidden outputs, o[t] feeds step t+1
    std::vector<double> u;
    std::vector<double> r;
};

ForwardTrace forward_trace(const ModelParams& params,
                           const AlignedSequence& seq);

// Mean squared error of the rating predictions against seq.targets.
double loss(const ModelParams& params, const AlignedSequence& seq);

struct ModelGrad {
    Eigen::MatrixXd W_h;
    Eigen::MatrixXd W_v;
    Eigen::VectorXd b_h;
    Eigen::VectorXd W_o;
    double b_o = 0.0;
    double sigma_logit = 0.0;
};

ModelGrad zero_grad(int d);

// Exact analytic gradient of `loss` by backpropagation through time,
// covering both recurrences (o feeding the next hidden state and r feeding
// the next blend) and the logistic reparameterization of sigma. If
// `loss_out` is given it receives the loss of the same forward pass.
ModelGrad grad(const ModelParams& params, const AlignedSequence& seq,
               double* loss_out = nullptr);

struct TrainConfig {
    double learning_rate = 0.15;
    int epochs = 400;
    std::uint64_t seed = 0;
    double init_scale = 0.2;
    int early_stop_patience = 60;  // epochs without validation-CCC gain
};

// W_h, W_v, W_o uniform in [-init_scale/sqrt(d), +init_scale/sqrt(d)] from
// a seeded stream; biases zero; sigma_logit 0 (sigma = 0.5).
ModelParams init_params(int d, const TrainConfig& config);

struct EpochStats {
    int epoch = 0;        // 1-based
    double train_loss = 0.0;  // before this epoch's step
    double val_ccc = 0.0;     // after this epoch's step
    double sigma = 0.0;       // after this epoch's step
};

struct TrainResult {
    ModelParams params;  // from the best validation epoch
    std::vector<EpochStats> history;
    int best_epoch = 0;
    double best_val_ccc = 0.0;
};

// Full-batch gradient descent: one step per epoch on the gradient averaged
// over all training sequences. Deterministic given (data, config). Throws
// DivergenceError naming the epoch if the loss stops being finite.
TrainResult train(std::span<const AlignedSequence> train_set,
                  std::span<const AlignedSequence> val_set,
                  const TrainConfig& config);

// Versioned text checkpoint; values printed with 17 significant digits so a
// save -> load -> save round trip is byte-identical.
void save_checkpoint(const ModelParams& params,
                     const std::filesystem::path& path);
ModelParams load_checkpoint(const std::filesystem::path& path);

}  // namespace emospace
