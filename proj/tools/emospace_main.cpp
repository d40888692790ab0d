#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emospace/corpus.hpp"
#include "emospace/embeddings.hpp"
#include "emospace/emotion_space.hpp"
#include "emospace/errors.hpp"
#include "emospace/interpret.hpp"
#include "emospace/lexicons.hpp"
#include "emospace/manifest.hpp"
#include "emospace/metrics.hpp"
#include "emospace/model.hpp"
#include "emospace/report.hpp"
#include "emospace/synth.hpp"
#include "emospace/text_io.hpp"

namespace {

using namespace emospace;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start)
        .count();
}

std::uint64_t default_seed_from_env() {
    const char* env = std::getenv("EMOSPACE_SEED");
    if (!env || *env == '\0') return 0;
    auto value = parse_int(env);
    if (!value || *value < 0) {
        throw UsageError(std::string("EMOSPACE_SEED is not a valid seed: '") +
                         env + "'");
    }
    return static_cast<std::uint64_t>(*value);
}

SplitFractions parse_split(const std::string& text) {
    auto parts = split_on(text, ',');
    if (parts.size() != 3) {
        throw UsageError("--split expects three comma-separated fractions");
    }
    auto a = parse_double(parts[0]);
    auto b = parse_double(parts[1]);
    auto c = parse_double(parts[2]);
    if (!a || !b || !c) {
        throw UsageError("--split fractions must be decimal numbers");
    }
    return SplitFractions{*a, *b, *c};
}

Space parse_space(const std::string& text) {
    if (text == "raw") return Space::raw;
    if (text == "projected") return Space::projected;
    throw UsageError("--space must be raw or projected");
}

ScoreVariant parse_variant(const std::string& text) {
    if (text == "literal") return ScoreVariant::literal;
    if (text == "chain") return ScoreVariant::chain;
    throw UsageError("--variant must be literal or chain");
}

std::vector<AlignedSequence> align_all(const std::vector<Transcript>& ts,
                                       const EmbeddingTable& table,
                                       OovPolicy policy) {
    std::vector<AlignedSequence> out;
    out.reserve(ts.size());
    for (const Transcript& t : ts) out.push_back(align(t, table, policy));
    return out;
}

// ---------------------------------------------------------------- synth --

struct SynthArgs {
    SynthConfig config;
    std::string out_dir;
};

int run_synth(const SynthArgs& args) {
    auto start = Clock::now();
    SynthPaths paths = gen_synthetic(args.config, args.out_dir);

    RunManifest manifest;
    manifest.command = "synth";
    manifest.seed = args.config.seed;
    manifest.config = {{"d", args.config.d},
                       {"vocab_size", args.config.vocab_size},
                       {"planted_dims", args.config.planted_dims},
                       {"n_transcripts", args.config.n_transcripts},
                       {"tokens_per_transcript", args.config.tokens_per_transcript},
                       {"noise_sd", args.config.noise_sd},
                       {"out_dir", args.out_dir}};
    add_output(manifest, paths.embeddings);
    add_output(manifest, paths.lexicon);
    add_output(manifest, paths.polarity);
    for (const auto& t : paths.transcripts) add_output(manifest, t);
    manifest.duration_ms = ms_since(start);
    write_manifest(manifest, std::filesystem::path(args.out_dir) /
                                 "manifest.json");

    std::cout << "wrote " << paths.transcripts.size() << " transcripts, "
              << args.config.vocab_size << " embeddings to " << args.out_dir
              << "\n";
    return 0;
}

// ---------------------------------------------------------------- train --

struct TrainArgs {
    std::string embeddings;
    std::string corpus;
    std::string out;
    std::string split = "0.6,0.2,0.2";
    std::string oov = "drop";
    TrainConfig config;
};

int run_train(const TrainArgs& args) {
    auto start = Clock::now();
    SplitFractions fractions = parse_split(args.split);
    OovPolicy policy = args.oov == "zero" ? OovPolicy::zero : OovPolicy::drop;
    if (args.oov != "zero" && args.oov != "drop") {
        throw UsageError("--oov must be drop or zero");
    }

    EmbeddingTable table = load_embeddings(args.embeddings);
    std::vector<Transcript> transcripts = load_corpus_dir(args.corpus);
    DatasetSplit split =
        split_dataset(std::move(transcripts), fractions, args.config.seed);
    auto train_seqs = align_all(split.train, table, policy);
    auto val_seqs = align_all(split.val, table, policy);

    TrainResult result = train(train_seqs, val_seqs, args.config);
    save_checkpoint(result.params, args.out);

    std::filesystem::path history_path = args.out + ".history.csv";
    std::ostringstream history;
    history << "epoch,train_loss,val_ccc,sigma\n";
    for (const EpochStats& e : result.history) {
        history << e.epoch << ',' << format_double(e.train_loss) << ','
                << format_double(e.val_ccc) << ',' << format_double(e.sigma)
                << '\n';
    }
    write_file(history_path, history.str());

    RunManifest manifest;
    manifest.command = "train";
    manifest.seed = args.config.seed;
    manifest.config = {{"embeddings", args.embeddings},
                       {"corpus", args.corpus},
                       {"split", args.split},
                       {"oov", args.oov},
                       {"lr", args.config.learning_rate},
                       {"epochs", args.config.epochs},
                       {"init_scale", args.config.init_scale},
                       {"patience", args.config.early_stop_patience},
                       {"out", args.out}};
    add_input(manifest, args.embeddings);
    std::vector<std::filesystem::path> corpus_files;
    for (const auto& entry :
         std::filesystem::directory_iterator(args.corpus)) {
        if (entry.is_regular_file()) corpus_files.push_back(entry.path());
    }
    std::sort(corpus_files.begin(), corpus_files.end());
    for (const auto& file : corpus_files) add_input(manifest, file);
    add_output(manifest, args.out);
    add_output(manifest, history_path);
    manifest.duration_ms = ms_since(start);
    write_manifest(manifest, args.out + ".manifest.json");

    std::cout << "trained " << split.train.size() << " transcripts (val "
              << split.val.size() << ", test " << split.test.size()
              << "); best epoch " << result.best_epoch << ", val ccc "
              << format_double(result.best_val_ccc) << ", sigma "
              << format_double(result.params.sigma()) << "\n";
    return 0;
}

// ----------------------------------------------------------------- eval --

struct EvalArgs {
    std::string model;
    std::string embeddings;
    std::string corpus;
    std::string out = "eval.csv";
    std::string split;   // empty = evaluate every transcript
    std::string subset = "test";
    std::uint64_t seed = 0;
    double resample = 0.0;  // 0 = per-token scoring
    std::string oov = "drop";
};

// Rating predictions as a track over the kept tokens' times; repeated
// timestamps collapse to the last prediction so times stay strictly
// increasing for interpolation.
RatingTrack prediction_track(const Transcript& transcript,
                             const AlignedSequence& seq,
                             const std::vector<double>& predictions) {
    RatingTrack track;
    for (std::size_t i = 0; i < seq.kept_indices.size(); ++i) {
        double time = transcript.tokens[seq.kept_indices[i]].time;
        if (!track.times.empty() && time == track.times.back()) {
            track.values.back() = predictions[i];
        } else {
            track.times.push_back(time);
            track.values.push_back(predictions[i]);
        }
    }
    return track;
}

int run_eval(const EvalArgs& args) {
    auto start = Clock::now();
    OovPolicy policy = args.oov == "zero" ? OovPolicy::zero : OovPolicy::drop;
    if (args.oov != "zero" && args.oov != "drop") {
        throw UsageError("--oov must be drop or zero");
    }
    ModelParams params = load_checkpoint(args.model);
    EmbeddingTable table = load_embeddings(args.embeddings);
    std::vector<Transcript> transcripts = load_corpus_dir(args.corpus);

    if (!args.split.empty()) {
        SplitFractions fractions = parse_split(args.split);
        DatasetSplit split =
            split_dataset(std::move(transcripts), fractions, args.seed);
        if (args.subset == "train") {
            transcripts = std::move(split.train);
        } else if (args.subset == "val") {
            transcripts = std::move(split.val);
        } else if (args.subset == "test") {
            transcripts = std::move(split.test);
        } else {
            throw UsageError("--subset must be train, val or test");
        }
        if (transcripts.empty()) {
            throw SizeError("selected subset is empty");
        }
    }

    std::ostringstream csv;
    csv << "id,n,ccc,mse\n";
    std::vector<double> cccs, mses;
    for (const Transcript& transcript : transcripts) {
        AlignedSequence seq = align(transcript, table, policy);
        std::vector<double> predictions = forward_transcript(params, seq);
        MetricReport report;
        if (args.resample > 0.0) {
            RatingTrack pred = prediction_track(transcript, seq, predictions);
            double t0 = transcript.track.times.front();
            double t1 = transcript.track.times.back();
            std::vector<double> grid_pred, grid_target;
            for (double t = t0; t <= t1 + 1e-9; t += args.resample) {
                grid_pred.push_back(interpolate_at(pred, t));
                grid_target.push_back(interpolate_at(transcript.track, t));
            }
            report = evaluate(grid_pred, grid_target);
        } else {
            report = evaluate(predictions, seq.targets);
        }
        cccs.push_back(report.ccc);
        mses.push_back(report.mse);
        csv << transcript.id << ',' << report.n << ','
            << format_double(report.ccc) << ',' << format_double(report.mse)
            << '\n';
    }
    write_file(args.out, csv.str());

    MeanSd ccc_summary = mean_sd(cccs);
    MeanSd mse_summary = mean_sd(mses);

    RunManifest manifest;
    manifest.command = "eval";
    manifest.seed = args.seed;
    manifest.config = {{"model", args.model},
                       {"embeddings", args.embeddings},
                       {"corpus", args.corpus},
                       {"split", args.split},
                       {"subset", args.split.empty() ? "all" : args.subset},
                       {"resample", args.resample},
                       {"oov", args.oov},
                       {"out", args.out}};
    add_input(manifest, args.model);
    add_input(manifest, args.embeddings);
    add_output(manifest, args.out);
    manifest.duration_ms = ms_since(start);
    write_manifest(manifest, args.out + ".manifest.json");

    char line[160];
    std::snprintf(line, sizeof line,
                  "ccc %.3f +/- %.3f   mse %.4f +/- %.4f   (%zu transcripts)",
                  ccc_summary.mean, ccc_summary.sd, mse_summary.mean,
                  mse_summary.sd, cccs.size());
    std::cout << line << "\n";
    return 0;
}

// ----------------------------------------------------------------- dims --

struct DimsArgs {
    std::string model;
    std::string out;
    std::string variant = "chain";
};

int run_dims(const DimsArgs& args) {
    auto start = Clock::now();
    ModelParams params = load_checkpoint(args.model);
    ScoreVariant variant = parse_variant(args.variant);
    DimensionScores literal = dimension_scores(params, ScoreVariant::literal);
    DimensionScores chain = dimension_scores(params, ScoreVariant::chain);
    write_dimension_scores_csv(literal, chain, args.out);

    const DimensionScores& chosen =
        variant == ScoreVariant::literal ? literal : chain;
    int k = std::min(5, params.dim());
    std::vector<int> top = top_k_dims(chosen, k);
    std::cout << "top " << k << " dims (" << args.variant << "):";
    for (int dim : top) {
        std::cout << ' ' << dim << " (" << format_double(chosen.scores[dim])
                  << ")";
    }
    std::cout << "\n";

    RunManifest manifest;
    manifest.command = "dims";
    manifest.config = {{"model", args.model},
                       {"variant", args.variant},
                       {"out", args.out}};
    add_input(manifest, args.model);
    add_output(manifest, args.out);
    manifest.duration_ms = ms_since(start);
    write_manifest(manifest, args.out + ".manifest.json");
    return 0;
}

// -------------------------------------------------------------- scatter --

struct ScatterArgs {
    std::string model;
    std::string embeddings;
    std::string polarity;
    std::string out;
    std::string svg;
    std::string variant = "chain";
    int k = 19;
};

int run_scatter(const ScatterArgs& args) {
    auto start = Clock::now();
    ModelParams params = load_checkpoint(args.model);
    EmbeddingTable table = load_embeddings(args.embeddings);
    PolarityList polarity = load_polarity_list(args.polarity);

    DimensionScores scores =
        dimension_scores(params, parse_variant(args.variant));
    std::vector<int> top = top_k_dims(scores, 2);
    std::pair<int, int> dims{top[0], top[1]};
    std::vector<ScatterPoint> points =
        scatter_2d(table, polarity, params, dims, args.k);
    write_scatter_csv(points, args.out);
    if (!args.svg.empty()) render_scatter_svg(points, dims, args.svg);

    RunManifest manifest;
    manifest.command = "scatter";
    manifest.config = {{"model", args.model},
                       {"embeddings", args.embeddings},
                       {"polarity", args.polarity},
                       {"variant", args.variant},
                       {"k", args.k},
                       {"dims", {dims.first, dims.second}},
                       {"out", args.out},
                       {"svg", args.svg}};
    add_input(manifest, args.model);
    add_input(manifest, args.embeddings);
    add_input(manifest, args.polarity);
    add_output(manifest, args.out);
    if (!args.svg.empty()) add_output(manifest, args.svg);
    manifest.duration_ms = ms_since(start);
    write_manifest(manifest, args.out + ".manifest.json");

    std::cout << "scatter over dims (" << dims.first << ", " << dims.second
              << "): " << points.size() << " points\n";
    return 0;
}

// ---------------------------------------------------- entangle/feelings --

struct MatrixArgs {
    std::string embeddings;
    std::string emolex;
    std::string model;
    std::string out;
    std::string svg;
    std::string json;
    std::string space = "raw";
    std::size_t cap = 50;      // entangle
    std::size_t pairs = 100;   // feelings
    std::uint64_t seed = 0;
};

int run_matrix(const MatrixArgs& args, bool feelings) {
    auto start = Clock::now();
    Space space = parse_space(args.space);
    if (space == Space::projected && args.model.empty()) {
        throw UsageError("--space projected requires --model");
    }
    EmbeddingTable table = load_embeddings(args.embeddings);
    EmotionLexicon lexicon = load_emolex(args.emolex);

    std::optional<ModelParams> params;
    if (!args.model.empty()) params = load_checkpoint(args.model);
    const ModelParams* params_ptr = params ? &*params : nullptr;

    for (Emotion e : kAllEmotions) {
        std::size_t dropped = 0;
        auto words = words_for(lexicon, e, table, &dropped);
        std::cout << emotion_name(e) << ": " << words.size()
                  << " in-vocabulary words";
        if (dropped > 0) std::cout << " (" << dropped << " dropped)";
        std::cout << "\n";
    }

    SimilarityMatrix matrix =
        feelings ? feeling_matrix(lexicon, table, params_ptr, space,
                                  args.pairs, args.seed)
                 : entanglement_matrix(lexicon, table, params_ptr, space,
                                       args.cap, args.seed);
    write_matrix_csv(matrix, args.out);
    if (!args.json.empty()) {
        write_matrix_json(matrix, args.json, args.seed,
                          feelings ? args.pairs : args.cap);
    }
    if (!args.svg.empty()) render_heatmap(matrix, args.svg);

    RunManifest manifest;
    manifest.command = feelings ? "feelings" : "entangle";
    manifest.seed = args.seed;
    manifest.config = {{"embeddings", args.embeddings},
                       {"emolex", args.emolex},
                       {"model", args.model},
                       {"space", args.space},
                       {"out", args.out},
                       {"svg", args.svg},
                       {"json", args.json}};
    manifest.config[feelings ? "pairs" : "cap"] =
        feelings ? args.pairs : args.cap;
    add_input(manifest, args.embeddings);
    add_input(manifest, args.emolex);
    if (!args.model.empty()) add_input(manifest, args.model);
    add_output(manifest, args.out);
    if (!args.json.empty()) add_output(manifest, args.json);
    if (!args.svg.empty()) add_output(manifest, args.svg);
    manifest.duration_ms = ms_since(start);
    write_manifest(manifest, args.out + ".manifest.json");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        CLI::App app{"valence modeling and emotion-space analysis for word "
                     "embeddings"};
        app.require_subcommand(1);
        const std::uint64_t env_seed = default_seed_from_env();

        SynthArgs synth_args;
        synth_args.config.seed = env_seed;
        auto* synth = app.add_subcommand(
            "synth", "generate a synthetic planted-signal corpus");
        synth->add_option("--out", synth_args.out_dir, "output directory")
            ->required();
        synth->add_option("--d", synth_args.config.d, "embedding dimension");
        synth->add_option("--vocab", synth_args.config.vocab_size,
                          "vocabulary size (>= 16)");
        synth->add_option("--planted", synth_args.config.planted_dims,
                          "planted dimension indices");
        synth->add_option("--transcripts", synth_args.config.n_transcripts,
                          "number of transcripts");
        synth->add_option("--tokens", synth_args.config.tokens_per_transcript,
                          "tokens per transcript");
        synth->add_option("--noise-sd", synth_args.config.noise_sd,
                          "noise sd outside planted dims");
        synth->add_option("--seed", synth_args.config.seed, "random seed");

        TrainArgs train_args;
        train_args.config.seed = env_seed;
        auto* train_cmd =
            app.add_subcommand("train", "train the valence model");
        train_cmd->add_option("--embeddings", train_args.embeddings)
            ->required();
        train_cmd->add_option("--corpus", train_args.corpus)->required();
        train_cmd->add_option("--out", train_args.out, "checkpoint path")
            ->required();
        train_cmd->add_option("--split", train_args.split,
                              "train,val,test fractions");
        train_cmd->add_option("--seed", train_args.config.seed);
        train_cmd->add_option("--lr", train_args.config.learning_rate);
        train_cmd->add_option("--epochs", train_args.config.epochs);
        train_cmd->add_option("--init-scale", train_args.config.init_scale);
        train_cmd->add_option("--patience",
                              train_args.config.early_stop_patience);
        train_cmd->add_option("--oov", train_args.oov, "drop|zero");

        EvalArgs eval_args;
        eval_args.seed = env_seed;
        auto* eval_cmd =
            app.add_subcommand("eval", "evaluate a checkpoint on a corpus");
        eval_cmd->add_option("--model", eval_args.model)->required();
        eval_cmd->add_option("--embeddings", eval_args.embeddings)->required();
        eval_cmd->add_option("--corpus", eval_args.corpus)->required();
        eval_cmd->add_option("--out", eval_args.out, "per-transcript CSV");
        eval_cmd->add_option("--split", eval_args.split,
                             "evaluate one subset of this split");
        eval_cmd->add_option("--subset", eval_args.subset, "train|val|test");
        eval_cmd->add_option("--seed", eval_args.seed, "split seed");
        eval_cmd->add_option("--resample", eval_args.resample,
                             "grid step in seconds (0 = per token)");
        eval_cmd->add_option("--oov", eval_args.oov, "drop|zero");

        DimsArgs dims_args;
        auto* dims_cmd =
            app.add_subcommand("dims", "export dimension importance scores");
        dims_cmd->add_option("--model", dims_args.model)->required();
        dims_cmd->add_option("--out", dims_args.out)->required();
        dims_cmd->add_option("--variant", dims_args.variant,
                             "literal|chain");

        ScatterArgs scatter_args;
        auto* scatter_cmd = app.add_subcommand(
            "scatter", "polarity scatter over the top two dimensions");
        scatter_cmd->add_option("--model", scatter_args.model)->required();
        scatter_cmd->add_option("--embeddings", scatter_args.embeddings)
            ->required();
        scatter_cmd->add_option("--polarity", scatter_args.polarity)
            ->required();
        scatter_cmd->add_option("--out", scatter_args.out)->required();
        scatter_cmd->add_option("--svg", scatter_args.svg);
        scatter_cmd->add_option("--k", scatter_args.k, "words per polarity");
        scatter_cmd->add_option("--variant", scatter_args.variant,
                                "literal|chain");

        MatrixArgs entangle_args;
        entangle_args.seed = env_seed;
        auto* entangle_cmd = app.add_subcommand(
            "entangle", "8x8 emotion entanglement matrix");
        entangle_cmd->add_option("--embeddings", entangle_args.embeddings)
            ->required();
        entangle_cmd->add_option("--emolex", entangle_args.emolex)->required();
        entangle_cmd->add_option("--model", entangle_args.model);
        entangle_cmd->add_option("--space", entangle_args.space,
                                 "raw|projected");
        entangle_cmd->add_option("--out", entangle_args.out)->required();
        entangle_cmd->add_option("--svg", entangle_args.svg);
        entangle_cmd->add_option("--json", entangle_args.json);
        entangle_cmd->add_option("--cap", entangle_args.cap,
                                 "per-emotion sample cap");
        entangle_cmd->add_option("--seed", entangle_args.seed);

        MatrixArgs feelings_args;
        feelings_args.seed = env_seed;
        auto* feelings_cmd = app.add_subcommand(
            "feelings", "8x8 Plutchik dyad feeling matrix");
        feelings_cmd->add_option("--embeddings", feelings_args.embeddings)
            ->required();
        feelings_cmd->add_option("--emolex", feelings_args.emolex)->required();
        feelings_cmd->add_option("--model", feelings_args.model);
        feelings_cmd->add_option("--space", feelings_args.space,
                                 "raw|projected");
        feelings_cmd->add_option("--out", feelings_args.out)->required();
        feelings_cmd->add_option("--svg", feelings_args.svg);
        feelings_cmd->add_option("--json", feelings_args.json);
        feelings_cmd->add_option("--pairs", feelings_args.pairs,
                                 "dyad pairs per feeling");
        feelings_cmd->add_option("--seed", feelings_args.seed);

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) return app.exit(e);  // --help
            app.exit(e);
            return static_cast<int>(ExitCode::usage);
        }

        if (synth->parsed()) return run_synth(synth_args);
        if (train_cmd->parsed()) return run_train(train_args);
        if (eval_cmd->parsed()) return run_eval(eval_args);
        if (dims_cmd->parsed()) return run_dims(dims_args);
        if (scatter_cmd->parsed()) return run_scatter(scatter_args);
        if (entangle_cmd->parsed()) return run_matrix(entangle_args, false);
        if (feelings_cmd->parsed()) return run_matrix(feelings_args, true);
        return static_cast<int>(ExitCode::usage);
    } catch (const emospace::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
