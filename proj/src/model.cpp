#include "emospace/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "emospace/errors.hpp"
#include "emospace/metrics.hpp"
#include "emospace/rng.hpp"
#include "emospace/text_io.hpp"

namespace emospace {

namespace {

void check_dim(const ModelParams& params, const Vec& v) {
    if (v.size() != params.dim()) {
        throw DimensionError("model dim " + std::to_string(params.dim()) +
                             " does not match vector length " +
                             std::to_string(v.size()));
    }
}

void check_shapes(const ModelParams& params) {
    const int d = params.dim();
    if (params.W_h.rows() != d || params.W_h.cols() != d ||
        params.W_v.rows() != d || params.b_h.size() != d ||
        params.W_o.size() != d) {
        throw DimensionError("inconsistent parameter shapes");
    }
}

}  // namespace

StepState initial_state(int d) {
    return StepState{Eigen::VectorXd::Zero(d), 0.0};
}

StepOutput forward_step(const ModelParams& params, const StepState& state,
                        const Vec& v) {
    check_dim(params, v);
    if (state.h.size() != params.dim()) {
        throw DimensionError("state dimension mismatch");
    }
    const double sigma = params.sigma();
    StepOutput out;
    Eigen::VectorXd o(params.dim());
    o.noalias() = params.W_h * state.h;
    o.noalias() += params.W_v * v;
    o += params.b_h;
    out.u = params.W_o.dot(o) + params.b_o;
    out.r = sigma * state.r + (1.0 - sigma) * out.u;
    out.next = StepState{std::move(o), out.r};
    return out;
}

ForwardTrace forward_trace(const ModelParams& params,
                           const AlignedSequence& seq) {
    if (seq.length() == 0) {
        throw EmptyInputError("forward: empty sequence");
    }
    check_shapes(params);
    ForwardTrace trace;
    trace.o.reserve(seq.length());
    trace.u.reserve(seq.length());
    trace.r.reserve(seq.length());
    StepState state = initial_state(params.dim());
    for (const Vec& v : seq.vectors) {
        StepOutput step = forward_step(params, state, v);
        trace.u.push_back(step.u);
        trace.r.push_back(step.r);
        state = std::move(step.next);
        trace.o.push_back(state.h);
    }
    return trace;
}

std::vector<double> forward_transcript(const ModelParams& params,
                                       const AlignedSequence& seq) {
    return forward_trace(params, seq).r;
}

double loss(const ModelParams& params, const AlignedSequence& seq) {
    ForwardTrace trace = forward_trace(params, seq);
    double sum = 0.0;
    for (std::size_t t = 0; t < trace.r.size(); ++t) {
        const double d = trace.r[t] - seq.targets[t];
        sum += d * d;
    }
    return sum / static_cast<double>(trace.r.size());
}

ModelGrad zero_grad(int d) {
    return ModelGrad{Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Zero(d, d),
                     Eigen::VectorXd::Zero(d), Eigen::VectorXd::Zero(d), 0.0,
                     0.0};
}

ModelGrad grad(const ModelParams& params, const AlignedSequence& seq,
               double* loss_out) {
    const int d = params.dim();
    const auto T = static_cast<std::ptrdiff_t>(seq.length());
    ForwardTrace trace = forward_trace(params, seq);

    if (loss_out) {
        double sum = 0.0;
        for (std::ptrdiff_t t = 0; t < T; ++t) {
            const double diff = trace.r[t] - seq.targets[t];
            sum += diff * diff;
        }
        *loss_out = sum / static_cast<double>(T);
    }

    const double sigma = params.sigma();
    ModelGrad g = zero_grad(d);
    double d_sigma = 0.0;

    // Reverse sweep. gr carries dL/dr_t, go carries dL/do_t; the hidden
    // state entering step t is o_{t-1} (zero for t = 0), the rating entering
    // is r_{t-1} (zero for t = 0).
    double gr_next = 0.0;
    Eigen::VectorXd go_next = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd go(d);
    for (std::ptrdiff_t t = T - 1; t >= 0; --t) {
        const double direct =
            2.0 / static_cast<double>(T) * (trace.r[t] - seq.targets[t]);
        const double gr = direct + sigma * gr_next;
        const double du = (1.0 - sigma) * gr;
        const double r_prev = (t > 0) ? trace.r[t - 1] : 0.0;
        d_sigma += gr * (r_prev - trace.u[t]);

        go.noalias() = params.W_h.transpose() * go_next;
        go += du * params.W_o;

        g.W_o += du * trace.o[t];
        g.b_o += du;
        if (t > 0) {
            g.W_h.noalias() += go * trace.o[t - 1].transpose();
        }
        g.W_v.noalias() += go * seq.vectors[t].transpose();
        g.b_h += go;

        gr_next = gr;
        go_next.swap(go);
    }
    g.sigma_logit = d_sigma * sigma * (1.0 - sigma);
    return g;
}

ModelParams init_params(int d, const TrainConfig& config) {
    if (d < 1) {
        throw DimensionError("model dimension must be >= 1, got " +
                             std::to_string(d));
    }
    Rng rng(derive_seed(config.seed, "init-params"));
    const double bound = config.init_scale / std::sqrt(static_cast<double>(d));
    ModelParams params;
    params.W_h.resize(d, d);
    params.W_v.resize(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) params.W_h(i, j) = rng.uniform(-bound, bound);
    }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) params.W_v(i, j) = rng.uniform(-bound, bound);
    }
    params.W_o.resize(d);
    for (int i = 0; i < d; ++i) params.W_o[i] = rng.uniform(-bound, bound);
    params.b_h = Eigen::VectorXd::Zero(d);
    params.b_o = 0.0;
    params.sigma_logit = 0.0;
    return params;
}

namespace {

void accumulate(ModelGrad& acc, const ModelGrad& g) {
    acc.W_h += g.W_h;
    acc.W_v += g.W_v;
    acc.b_h += g.b_h;
    acc.W_o += g.W_o;
    acc.b_o += g.b_o;
    acc.sigma_logit += g.sigma_logit;
}

void scale(ModelGrad& g, double factor) {
    g.W_h *= factor;
    g.W_v *= factor;
    g.b_h *= factor;
    g.W_o *= factor;
    g.b_o *= factor;
    g.sigma_logit *= factor;
}

void apply_step(ModelParams& params, const ModelGrad& g, double lr) {
    params.W_h -= lr * g.W_h;
    params.W_v -= lr * g.W_v;
    params.b_h -= lr * g.b_h;
    params.W_o -= lr * g.W_o;
    params.b_o -= lr * g.b_o;
    params.sigma_logit -= lr * g.sigma_logit;
}

double validation_ccc(const ModelParams& params,
                      std::span<const AlignedSequence> val_set) {
    double sum = 0.0;
    for (const AlignedSequence& seq : val_set) {
        std::vector<double> predictions = forward_transcript(params, seq);
        sum += ccc(predictions, seq.targets);
    }
    return sum / static_cast<double>(val_set.size());
}

}  // namespace

TrainResult train(std::span<const AlignedSequence> train_set,
                  std::span<const AlignedSequence> val_set,
                  const TrainConfig& config) {
    if (train_set.empty() || val_set.empty()) {
        throw EmptyInputError("train: empty training or validation set");
    }
    if (config.learning_rate <= 0.0) {
        throw UsageError("learning rate must be positive");
    }
    if (config.epochs < 1) {
        throw UsageError("epochs must be >= 1");
    }
    const int d = static_cast<int>(train_set[0].vectors[0].size());

    TrainResult result;
    ModelParams params = init_params(d, config);
    result.best_val_ccc = -std::numeric_limits<double>::infinity();
    int epochs_since_best = 0;

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        ModelGrad acc = zero_grad(d);
        double train_loss = 0.0;
        for (const AlignedSequence& seq : train_set) {
            double seq_loss = 0.0;
            ModelGrad g = grad(params, seq, &seq_loss);
            accumulate(acc, g);
            train_loss += seq_loss;
        }
        const double inv_n = 1.0 / static_cast<double>(train_set.size());
        scale(acc, inv_n);
        train_loss *= inv_n;
        if (!std::isfinite(train_loss)) {
            throw DivergenceError(epoch, "training diverged at epoch " +
                                             std::to_string(epoch) +
                                             " (non-finite loss)");
        }

        apply_step(params, acc, config.learning_rate);
        const double val = validation_ccc(params, val_set);
        if (!std::isfinite(val)) {
            throw DivergenceError(epoch, "training diverged at epoch " +
                                             std::to_string(epoch) +
                                             " (non-finite validation score)");
        }
        result.history.push_back({epoch, train_loss, val, params.sigma()});

        if (val > result.best_val_ccc) {
            result.best_val_ccc = val;
            result.best_epoch = epoch;
            result.params = params;
            epochs_since_best = 0;
        } else {
            ++epochs_since_best;
            if (epochs_since_best > config.early_stop_patience) break;
        }
    }
    return result;
}

namespace {

void write_block(std::ostream& out, const char* name,
                 const Eigen::MatrixXd& m) {
    out << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out << ' ';
            out << format_double17(m(i, j));
        }
        out << '\n';
    }
}

Eigen::MatrixXd read_block(const std::vector<std::string>& lines,
                           std::size_t& cursor, const std::string& name,
                           const std::filesystem::path& path) {
    auto fail = [&](const std::string& why) -> FormatError {
        return FormatError(path.string() + ": checkpoint block '" + name +
                           "': " + why);
    };
    if (cursor >= lines.size()) throw fail("missing");
    auto header = split_ws(lines[cursor]);
    if (header.size() != 3 || header[0] != name) {
        throw fail("bad block header at line " + std::to_string(cursor + 1));
    }
    auto rows = parse_int(header[1]);
    auto cols = parse_int(header[2]);
    if (!rows || !cols || *rows < 1 || *cols < 1) {
        throw fail("bad block shape");
    }
    ++cursor;
    Eigen::MatrixXd m(*rows, *cols);
    for (long long i = 0; i < *rows; ++i, ++cursor) {
        if (cursor >= lines.size()) throw fail("truncated");
        auto fields = split_ws(lines[cursor]);
        if (static_cast<long long>(fields.size()) != *cols) {
            throw fail("row " + std::to_string(i) + " has " +
                       std::to_string(fields.size()) + " values, expected " +
                       std::to_string(*cols));
        }
        for (long long j = 0; j < *cols; ++j) {
            auto value = parse_double(fields[static_cast<std::size_t>(j)]);
            if (!value) throw fail("bad float in row " + std::to_string(i));
            m(i, j) = *value;
        }
    }
    return m;
}

}  // namespace

void save_checkpoint(const ModelParams& params,
                     const std::filesystem::path& path) {
    check_shapes(params);
    std::ostringstream out;
    out << "emospace-model v1 dim=" << params.dim() << '\n';
    write_block(out, "W_h", params.W_h);
    write_block(out, "W_v", params.W_v);
    write_block(out, "b_h", params.b_h);
    write_block(out, "W_o", params.W_o);
    Eigen::MatrixXd scalar(1, 1);
    scalar(0, 0) = params.b_o;
    write_block(out, "b_o", scalar);
    scalar(0, 0) = params.sigma_logit;
    write_block(out, "sigma_logit", scalar);
    write_file(path, out.str());
}

ModelParams load_checkpoint(const std::filesystem::path& path) {
    std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) {
        throw FormatError(path.string() + ": empty checkpoint");
    }
    auto header = split_ws(lines[0]);
    if (header.size() != 3 || header[0] != "emospace-model" ||
        header[1] != "v1" || !header[2].starts_with("dim=")) {
        throw FormatError(path.string() + ": bad checkpoint header");
    }
    auto d = parse_int(header[2].substr(4));
    if (!d || *d < 1) {
        throw FormatError(path.string() + ": bad checkpoint dimension");
    }

    std::size_t cursor = 1;
    Eigen::MatrixXd w_h = read_block(lines, cursor, "W_h", path);
    Eigen::MatrixXd w_v = read_block(lines, cursor, "W_v", path);
    Eigen::MatrixXd b_h = read_block(lines, cursor, "b_h", path);
    Eigen::MatrixXd w_o = read_block(lines, cursor, "W_o", path);
    Eigen::MatrixXd b_o = read_block(lines, cursor, "b_o", path);
    Eigen::MatrixXd sigma_logit = read_block(lines, cursor, "sigma_logit", path);

    const auto dim = static_cast<Eigen::Index>(*d);
    if (w_h.rows() != dim || w_h.cols() != dim || w_v.rows() != dim ||
        w_v.cols() != dim || b_h.rows() != dim || b_h.cols() != 1 ||
        w_o.rows() != dim || w_o.cols() != 1 || b_o.size() != 1 ||
        sigma_logit.size() != 1) {
        throw FormatError(path.string() +
                          ": checkpoint blocks inconsistent with dim=" +
                          std::to_string(*d));
    }
    ModelParams params;
    params.W_h = std::move(w_h);
    params.W_v = std::move(w_v);
    params.b_h = b_h.col(0);
    params.W_o = w_o.col(0);
    params.b_o = b_o(0, 0);
    params.sigma_logit = sigma_logit(0, 0);
    return params;
}

}  // namespace emospace
