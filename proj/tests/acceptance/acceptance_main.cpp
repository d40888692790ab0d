// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "emospace/corpus.hpp"
#include "emospace/embeddings.hpp"
#include "emospace/emotion_space.hpp"
#include "emospace/errors.hpp"
#include "emospace/interpret.hpp"
#include "emospace/lexicons.hpp"
#include "emospace/metrics.hpp"
#include "emospace/model.hpp"
#include "emospace/rng.hpp"
#include "emospace/synth.hpp"
#include "emospace/text_io.hpp"

using namespace emospace;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw CheckFailure(message);
}

std::string fmt(double value, int precision = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, value);
    return std::string(buf);
}

// ------------------------------------------------------------- fixtures --

class ScratchDir {
  public:
    ScratchDir() {
        std::string tmpl = (std::filesystem::temp_directory_path() /
                            "emospace-accept-XXXXXX")
                               .string();
        std::vector<char> buf(tmpl.begin(), tmpl.end());
        buf.push_back('\0');
        if (!mkdtemp(buf.data())) throw IoError("mkdtemp failed");
        path_ = buf.data();
    }
    ~ScratchDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

SynthConfig corpus_config(std::uint64_t seed) {
    SynthConfig config;  // d=20, vocab 160, 3 planted dims, 40 x 60 tokens
    config.seed = seed;
    return config;
}

TrainConfig trainer_config(std::uint64_t seed) {
    TrainConfig config;
    config.seed = seed;
    return config;
}

// One synthetic corpus generated, loaded, split and trained.
struct SeedRun {
    std::uint64_t seed = 0;
    EmbeddingTable table{1, "empty"};
    EmotionLexicon lexicon;
    TrainResult result;
    double train_seconds = 0.0;
};

SeedRun make_seed_run(std::uint64_t seed, const std::filesystem::path& dir) {
    SeedRun run;
    run.seed = seed;
    SynthPaths paths = gen_synthetic(corpus_config(seed), dir);
    run.table = load_embeddings(paths.embeddings);
    run.lexicon = load_emolex(paths.lexicon);
    DatasetSplit split = split_dataset(load_corpus_dir(paths.corpus_dir),
                                       {0.6, 0.2, 0.2}, seed);
    std::vector<AlignedSequence> train_seqs, val_seqs;
    for (const auto& t : split.train) {
        train_seqs.push_back(align(t, run.table, OovPolicy::drop));
    }
    for (const auto& t : split.val) {
        val_seqs.push_back(align(t, run.table, OovPolicy::drop));
    }
    auto start = Clock::now();
    run.result = train(train_seqs, val_seqs, trainer_config(seed));
    run.train_seconds = seconds_since(start);
    return run;
}

// --------------------------------------------------------- criterion 1 --

// Independent oracle: the concordance formula evaluated directly in long
// double arithmetic.
double ccc_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    const long double n = static_cast<long double>(x.size());
    long double mx = 0.0L, my = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    long double cov = 0.0L, vx = 0.0L, vy = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long double dx = x[i] - mx;
        const long double dy = y[i] - my;
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    cov /= n;
    vx /= n;
    vy /= n;
    const long double gap = mx - my;
    return static_cast<double>(2.0L * cov / (vx + vy + gap * gap));
}

std::string criterion_ccc_oracle() {
    std::vector<double> fixed_x = {1, 2, 3};
    std::vector<double> fixed_y = {2, 4, 6};
    require(std::abs(ccc(fixed_x, fixed_y) - 8.0 / 22.0) <= 1e-12,
            "fixed case (1,2,3)/(2,4,6) != 8/22");

    Rng rng(derive_seed(2026, "ccc-oracle"));
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + rng.index(99);  // lengths 2..100
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.uniform(-1.0, 1.0);
            y[i] = rng.uniform(-1.0, 1.0);
        }
        double got = ccc(x, y);
        double want = ccc_oracle(x, y);
        worst = std::max(worst, std::abs(got - want));
        require(std::abs(got - want) <= 1e-10,
                "pair " + std::to_string(trial) + ": |" + fmt(got, 15) +
                    " - " + fmt(want, 15) + "| > 1e-10");
    }
    return "20 pairs, max |impl - oracle| = " + fmt(worst, 15);
}

// --------------------------------------------------------- criterion 2 --

std::string criterion_gradient_check() {
    const int dims[] = {2, 3, 5};
    const int lens[] = {1, 4, 9};
    const double h = 1e-5;
    int instance = 0;
    double worst_rel = 0.0;

    for (std::uint64_t seed = 1; instance < 20; ++seed) {
        for (int d : dims) {
            for (int t_len : lens) {
                if (instance >= 20) break;
                ++instance;
                Rng rng(derive_seed(seed, "acceptance-grad"));
                ModelParams params;
                params.W_h.resize(d, d);
                params.W_v.resize(d, d);
                params.b_h.resize(d);
                params.W_o.resize(d);
                for (int i = 0; i < d; ++i) {
                    for (int j = 0; j < d; ++j) {
                        params.W_h(i, j) = rng.uniform(-0.5, 0.5);
                        params.W_v(i, j) = rng.uniform(-0.5, 0.5);
                    }
                    params.b_h[i] = rng.uniform(-0.3, 0.3);
                    params.W_o[i] = rng.uniform(-0.5, 0.5);
                }
                params.b_o = rng.uniform(-0.3, 0.3);
                params.sigma_logit = rng.uniform(-1.5, 1.5);

                AlignedSequence seq;
                for (int t = 0; t < t_len; ++t) {
                    Vec v(d);
                    for (int i = 0; i < d; ++i) v[i] = rng.uniform(-1.0, 1.0);
                    seq.vectors.push_back(std::move(v));
                    seq.targets.push_back(rng.uniform(-1.0, 1.0));
                    seq.kept_indices.push_back(static_cast<std::size_t>(t));
                    seq.oov.push_back(false);
                }

                ModelGrad analytic = grad(params, seq);
                auto fd_check = [&](double analytic_value, auto&& poke) {
                    ModelParams plus = params;
                    ModelParams minus = params;
                    poke(plus, +h);
                    poke(minus, -h);
                    double fd =
                        (loss(plus, seq) - loss(minus, seq)) / (2.0 * h);
                    double denom =
                        std::max(std::abs(fd), std::abs(analytic_value));
                    double err = std::abs(analytic_value - fd);
                    if (denom > 1e-8) {
                        worst_rel = std::max(worst_rel, err / denom);
                    }
                    require(err <= std::max(1e-4 * denom, 1e-8),
                            "instance " + std::to_string(instance) +
                                ": analytic " + fmt(analytic_value, 10) +
                                " vs fd " + fmt(fd, 10));
                };
                for (int i = 0; i < d; ++i) {
                    for (int j = 0; j < d; ++j) {
                        fd_check(analytic.W_h(i, j),
                                 [&](ModelParams& p, double eps) {
                                     p.W_h(i, j) += eps;
                                 });
                        fd_check(analytic.W_v(i, j),
                                 [&](ModelParams& p, double eps) {
                                     p.W_v(i, j) += eps;
                                 });
                    }
                    fd_check(analytic.b_h[i], [&](ModelParams& p, double eps) {
                        p.b_h[i] += eps;
                    });
                    fd_check(analytic.W_o[i], [&](ModelParams& p, double eps) {
                        p.W_o[i] += eps;
                    });
                }
                fd_check(analytic.b_o,
                         [](ModelParams& p, double eps) { p.b_o += eps; });
                fd_check(analytic.sigma_logit, [](ModelParams& p, double eps) {
                    p.sigma_logit += eps;
                });
            }
        }
    }
    return "20 instances, worst relative error = " + fmt(worst_rel, 8);
}

// ------------------------------------------------------ criteria 3 to 7 --

std::string criterion_planted_recovery(const std::vector<SeedRun>& runs,
                                       double setup_seconds) {
    const std::vector<int>& planted = corpus_config(0).planted_dims;
    int chain_hits = 0;
    int literal_hits = 0;
    for (const SeedRun& run : runs) {
        auto contains_planted = [&](ScoreVariant variant) {
            DimensionScores scores =
                dimension_scores(run.result.params, variant);
            std::vector<int> top = top_k_dims(
                scores, static_cast<int>(planted.size()));
            return std::all_of(planted.begin(), planted.end(), [&](int p) {
                return std::find(top.begin(), top.end(), p) != top.end();
            });
        };
        if (contains_planted(ScoreVariant::chain)) ++chain_hits;
        if (contains_planted(ScoreVariant::literal)) ++literal_hits;
    }
    require(chain_hits >= 9, "chain variant recovered planted dims in only " +
                                 std::to_string(chain_hits) + "/10 seeds");
    require(setup_seconds < 120.0,
            "training + scoring took " + fmt(setup_seconds, 1) + "s >= 120s");
    return "chain " + std::to_string(chain_hits) + "/10, literal " +
           std::to_string(literal_hits) +
           "/10 (recorded, not gated); train+score " + fmt(setup_seconds, 1) +
           "s";
}

std::string criterion_training_efficacy(const std::vector<SeedRun>& runs) {
    double min_ccc = 1.0;
    double max_seconds = 0.0;
    for (const SeedRun& run : runs) {
        min_ccc = std::min(min_ccc, run.result.best_val_ccc);
        max_seconds = std::max(max_seconds, run.train_seconds);
        require(run.result.best_val_ccc > 0.8,
                "seed " + std::to_string(run.seed) + ": validation ccc " +
                    fmt(run.result.best_val_ccc) + " <= 0.8");
    }
    require(max_seconds < 60.0,
            "slowest training run took " + fmt(max_seconds, 1) + "s >= 60s");
    return "10/10 seeds, min val ccc " + fmt(min_ccc) + ", slowest seed " +
           fmt(max_seconds, 1) + "s";
}

// Mean over cells with both emotions of equal (within) or different (cross)
// polarity, diagonal excluded.
double polarity_margin(const SimilarityMatrix& matrix) {
    double within = 0.0, cross = 0.0;
    int n_within = 0, n_cross = 0;
    for (int a = 0; a < kEmotionCount; ++a) {
        for (int b = a + 1; b < kEmotionCount; ++b) {
            const auto& cell = matrix.values[a][b];
            if (!cell) continue;
            bool same = is_positive_emotion(kAllEmotions[a]) ==
                        is_positive_emotion(kAllEmotions[b]);
            if (same) {
                within += *cell;
                ++n_within;
            } else {
                cross += *cell;
                ++n_cross;
            }
        }
    }
    return within / n_within - cross / n_cross;
}

std::string criterion_separation(const std::vector<SeedRun>& runs) {
    int hits = 0;
    double min_gain = 1e9;
    for (const SeedRun& run : runs) {
        SimilarityMatrix raw = entanglement_matrix(
            run.lexicon, run.table, nullptr, Space::raw, 50, run.seed);
        SimilarityMatrix projected =
            entanglement_matrix(run.lexicon, run.table, &run.result.params,
                                Space::projected, 50, run.seed);
        double raw_margin = polarity_margin(raw);
        double proj_margin = polarity_margin(projected);
        if (proj_margin > 0.0 && proj_margin > raw_margin) ++hits;
        min_gain = std::min(min_gain, proj_margin - raw_margin);
    }
    require(hits >= 9, "separation improved in only " + std::to_string(hits) +
                           "/10 seeds");
    return std::to_string(hits) + "/10 seeds, min projected-raw margin gap " +
           fmt(min_gain);
}

std::string criterion_arithmetic(const std::vector<SeedRun>& runs) {
    int hits = 0;
    for (const SeedRun& run : runs) {
        SimilarityMatrix m =
            feeling_matrix(run.lexicon, run.table, &run.result.params,
                           Space::projected, 100, run.seed);
        bool all_ok = true;
        for (int f = 0; f < kFeelingCount; ++f) {
            int opp = static_cast<int>(opposite(kAllFeelings[f]));
            if (!m.values[f][f] || !m.values[f][opp] ||
                !(*m.values[f][f] > *m.values[f][opp])) {
                all_ok = false;
            }
        }
        if (all_ok) ++hits;
    }
    require(hits >= 9, "dyad self-similarity beat the opposite in only " +
                           std::to_string(hits) + "/10 seeds");
    return std::to_string(hits) + "/10 seeds, all 8 feelings each";
}

std::string criterion_blend_invariant(const std::vector<SeedRun>& runs) {
    for (const SeedRun& run : runs) {
        for (const EpochStats& epoch : run.result.history) {
            require(epoch.sigma > 0.0 && epoch.sigma < 1.0,
                    "sigma left (0,1) at epoch " +
                        std::to_string(epoch.epoch));
        }
    }

    int checked = 0;
    for (int pass = 0; pass < 100; ++pass) {
        Rng rng(derive_seed(7000 + pass, "blend-invariant"));
        int d = 2 + static_cast<int>(rng.index(7));
        int t_len = 1 + static_cast<int>(rng.index(30));
        ModelParams p;
        p.W_h.resize(d, d);
        p.W_v.resize(d, d);
        p.b_h.resize(d);
        p.W_o.resize(d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                p.W_h(i, j) = rng.uniform(-0.7, 0.7);
                p.W_v(i, j) = rng.uniform(-0.7, 0.7);
            }
            p.b_h[i] = rng.uniform(-0.5, 0.5);
            p.W_o[i] = rng.uniform(-0.7, 0.7);
        }
        p.b_o = rng.uniform(-0.5, 0.5);
        p.sigma_logit = rng.uniform(-3.0, 3.0);

        AlignedSequence seq;
        for (int t = 0; t < t_len; ++t) {
            Vec v(d);
            for (int i = 0; i < d; ++i) v[i] = rng.uniform(-1.0, 1.0);
            seq.vectors.push_back(std::move(v));
            seq.targets.push_back(0.0);
            seq.kept_indices.push_back(static_cast<std::size_t>(t));
            seq.oov.push_back(false);
        }
        ForwardTrace trace = forward_trace(p, seq);
        double lo = 0.0, hi = 0.0;  // r_0 = 0
        for (std::size_t t = 0; t < trace.r.size(); ++t) {
            lo = std::min(lo, trace.u[t]);
            hi = std::max(hi, trace.u[t]);
            require(trace.r[t] >= lo - 1e-12 && trace.r[t] <= hi + 1e-12,
                    "rating left the convex hull in pass " +
                        std::to_string(pass));
            ++checked;
        }
    }
    return "sigma in (0,1) across all histories; " + std::to_string(checked) +
           " blend states inside the hull over 100 passes";
}

// --------------------------------------------------------- criterion 8 --

std::string cli_path() {
    if (const char* env = std::getenv("EMOSPACE_CLI")) return env;
#ifdef EMOSPACE_CLI_PATH
    return EMOSPACE_CLI_PATH;
#else
    return "./emospace";
#endif
}

void run_cli_or_die(const std::string& args, const std::filesystem::path& log) {
    std::string cmd =
        "\"" + cli_path() + "\" " + args + " >>" + log.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    require(status != -1 && WEXITSTATUS(status) == 0,
            "cli command failed: " + args);
}

std::string criterion_determinism() {
    ScratchDir scratch;
    std::vector<std::string> relative_outputs;

    auto pipeline = [&](const std::filesystem::path& dir) {
        std::filesystem::create_directories(dir);
        auto log = dir / "log.txt";
        std::string data = (dir / "data").string();
        std::string ckpt = (dir / "model.ckpt").string();
        run_cli_or_die("synth --out " + data + " --seed 11", log);
        run_cli_or_die("train --embeddings " + data +
                           "/embeddings.txt --corpus " + data +
                           "/corpus --out " + ckpt +
                           " --seed 11 --epochs 60",
                       log);
        run_cli_or_die("entangle --embeddings " + data +
                           "/embeddings.txt --emolex " + data +
                           "/emolex.tsv --model " + ckpt +
                           " --space projected --seed 11 --out " +
                           (dir / "entangle.csv").string(),
                       log);
        run_cli_or_die("feelings --embeddings " + data +
                           "/embeddings.txt --emolex " + data +
                           "/emolex.tsv --model " + ckpt +
                           " --space projected --seed 11 --pairs 100 --out " +
                           (dir / "feelings.csv").string(),
                       log);
    };

    auto dir_a = scratch.path() / "a";
    auto dir_b = scratch.path() / "b";
    pipeline(dir_a);
    pipeline(dir_b);

    // every data output must match byte for byte (manifests carry wall
    // clock durations and are exempt)
    std::vector<std::filesystem::path> files;
    for (auto it = std::filesystem::recursive_directory_iterator(dir_a);
         it != std::filesystem::recursive_directory_iterator(); ++it) {
        if (!it->is_regular_file()) continue;
        auto name = it->path().filename().string();
        if (name == "log.txt" || name.ends_with("manifest.json")) continue;
        files.push_back(std::filesystem::relative(it->path(), dir_a));
    }
    require(files.size() >= 45, "expected the pipeline to write >= 45 files");
    std::sort(files.begin(), files.end());
    for (const auto& rel : files) {
        std::string a = read_file(dir_a / rel);
        std::string b = read_file(dir_b / rel);
        require(a == b, "outputs differ between reruns: " + rel.string());
    }
    return std::to_string(files.size()) + " data files byte-identical";
}

// --------------------------------------------------------- criterion 9 --

std::string criterion_round_trips(const std::vector<SeedRun>& runs) {
    ScratchDir scratch;
    SynthPaths paths =
        gen_synthetic(corpus_config(1), scratch.path() / "data");

    auto check_roundtrip = [&](const std::filesystem::path& original,
                               const std::filesystem::path& resaved,
                               auto&& load_save) {
        load_save(original, resaved);
        require(read_file(original) == read_file(resaved),
                "round trip changed bytes for " + original.string());
    };

    check_roundtrip(paths.embeddings, scratch.path() / "emb2.txt",
                    [](const auto& in, const auto& out) {
                        save_embeddings(load_embeddings(in), out);
                    });
    check_roundtrip(paths.transcripts.front(), scratch.path() / "t2.txt",
                    [](const auto& in, const auto& out) {
                        save_transcript(load_transcript(in), out);
                    });
    check_roundtrip(paths.lexicon, scratch.path() / "lex2.tsv",
                    [](const auto& in, const auto& out) {
                        save_emolex(load_emolex(in), out);
                    });
    check_roundtrip(paths.polarity, scratch.path() / "pol2.tsv",
                    [](const auto& in, const auto& out) {
                        save_polarity_list(load_polarity_list(in), out);
                    });

    auto ckpt = scratch.path() / "model.ckpt";
    save_checkpoint(runs.front().result.params, ckpt);
    check_roundtrip(ckpt, scratch.path() / "model2.ckpt",
                    [](const auto& in, const auto& out) {
                        save_checkpoint(load_checkpoint(in), out);
                    });
    return "embeddings, transcript, lexicon, polarity, checkpoint";
}

// -------------------------------------------------------- criterion 10 --

std::string criterion_split_sizes() {
    std::vector<Transcript> transcripts;
    for (int i = 0; i < 193; ++i) {
        Transcript t;
        t.id = "t" + std::to_string(i);
        t.tokens.push_back({"word", 0.0});
        t.track.times = {0.0, 0.5};
        t.track.values = {0.0, 0.0};
        transcripts.push_back(std::move(t));
    }
    DatasetSplit split =
        split_dataset(std::move(transcripts), {0.6, 0.2, 0.2}, 5);
    require(split.train.size() == 117,
            "train size " + std::to_string(split.train.size()) + " != 117");
    require(split.val.size() == 38,
            "val size " + std::to_string(split.val.size()) + " != 38");
    require(split.test.size() == 38,
            "test size " + std::to_string(split.test.size()) + " != 38");
    return "193 -> (117, 38, 38)";
}

// ----------------------------------------------------------------- main --

struct Outcome {
    bool pass = false;
    double seconds = 0.0;
};

}  // namespace

int main() {
    int failures = 0;
    auto run_criterion = [&](int number, const std::string& name,
                             std::optional<double> budget_seconds,
                             auto&& body) {
        auto start = Clock::now();
        bool pass = true;
        std::string detail;
        try {
            detail = body();
        } catch (const std::exception& e) {
            pass = false;
            detail = e.what();
        }
        double elapsed = seconds_since(start);
        if (pass && budget_seconds && elapsed >= *budget_seconds) {
            pass = false;
            detail += " [runtime " + fmt(elapsed, 1) + "s exceeded budget " +
                      fmt(*budget_seconds, 0) + "s]";
        }
        if (!pass) ++failures;
        std::printf("[%s] %2d. %-28s (%6.2fs)  %s\n", pass ? "PASS" : "FAIL",
                    number, name.c_str(), elapsed, detail.c_str());
        std::fflush(stdout);
    };

    run_criterion(1, "ccc-oracle-equivalence", 1.0, criterion_ccc_oracle);
    run_criterion(2, "gradient-correctness", 10.0, criterion_gradient_check);

    // Shared setup for criteria 3-7: ten seeded synthetic training runs.
    std::printf("---- training 10 seeded synthetic runs (d=20, 3 planted "
                "dims, 40 x 60 tokens) ----\n");
    std::fflush(stdout);
    auto setup_start = Clock::now();
    std::vector<SeedRun> runs;
    std::optional<std::string> setup_error;
    try {
        ScratchDir scratch;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            runs.push_back(make_seed_run(
                seed, scratch.path() / ("seed" + std::to_string(seed))));
            const SeedRun& run = runs.back();
            std::printf("     seed %2llu: best epoch %3d, val ccc %.3f, "
                        "sigma %.3f (%.1fs)\n",
                        static_cast<unsigned long long>(seed),
                        run.result.best_epoch, run.result.best_val_ccc,
                        run.result.params.sigma(), run.train_seconds);
            std::fflush(stdout);
        }
    } catch (const std::exception& e) {
        setup_error = e.what();
    }
    double setup_seconds = seconds_since(setup_start);

    auto gated_on_setup = [&](auto&& body) {
        return [&, body]() -> std::string {
            if (setup_error) {
                throw CheckFailure("setup failed: " + *setup_error);
            }
            return body();
        };
    };

    run_criterion(3, "planted-dimension-recovery", std::nullopt,
                  gated_on_setup([&] {
                      return criterion_planted_recovery(runs, setup_seconds);
                  }));
    run_criterion(4, "training-efficacy", std::nullopt, gated_on_setup([&] {
                      return criterion_training_efficacy(runs);
                  }));
    run_criterion(5, "emotion-space-separation", std::nullopt,
                  gated_on_setup([&] { return criterion_separation(runs); }));
    run_criterion(6, "arithmetic-of-emotions", std::nullopt,
                  gated_on_setup([&] { return criterion_arithmetic(runs); }));
    run_criterion(7, "blend-invariant", std::nullopt, gated_on_setup([&] {
                      return criterion_blend_invariant(runs);
                  }));
    run_criterion(8, "determinism", std::nullopt, criterion_determinism);
    run_criterion(9, "format-round-trips", std::nullopt, gated_on_setup([&] {
                      return criterion_round_trips(runs);
                  }));
    run_criterion(10, "split-sizes", std::nullopt, criterion_split_sizes);

    if (failures == 0) {
        std::printf("acceptance: all 10 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", failures);
    return 1;
}
