#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "emospace/embeddings.hpp"

namespace emospace {

// Continuous rating signal: strictly increasing times (seconds), values in
// [-1, 1], at least two samples.
struct RatingTrack {
    std::vector<double> times;
    std::vector<double> values;
};

// Validates the invariants above; `context` prefixes error messages.
RatingTrack make_rating_track(std::vector<double> times,
                              std::vector<double> values,
                              const std::string& context = "rating track");

// Piecewise-linear interpolation with clamped extrapolation: t before the
// first knot returns the first value, t after the last returns the last.
// Knots are returned exactly.
double interpolate_at(const RatingTrack& track, double t);

struct Transcript {
    struct Token {
        std::string text;
        double time = 0.0;
    };
    std::string id;
    std::vector<Token> tokens;  // nonempty, times nondecreasing
    RatingTrack track;
};

// Line format: header `#id <string>`, then `T <time> <token>` and
// `R <time> <value>` lines in any interleaving.
Transcript load_transcript(const std::filesystem::path& path);
void save_transcript(const Transcript& transcript,
                     const std::filesystem::path& path);

// All regular files in the directory, sorted by filename.
std::vector<Transcript> load_corpus_dir(const std::filesystem::path& dir);

enum class OovPolicy { drop, zero };

// Per-token training pairs. Under OovPolicy::zero, out-of-vocabulary tokens
// receive a zero vector and their `oov` flag is set so similarity code can
// refuse them; under OovPolicy::drop they are removed. kept_indices are the
// surviving positions in the original token list.
struct AlignedSequence {
    std::vector<Vec> vectors;
    std::vector<double> targets;
    std::vector<std::size_t> kept_indices;
    std::vector<bool> oov;

    std::size_t length() const noexcept { return vectors.size(); }
};

AlignedSequence align(const Transcript& transcript,
                      const EmbeddingTable& table,
                      OovPolicy policy = OovPolicy::drop);

struct SplitFractions {
    double train = 0.6;
    double val = 0.2;
    double test = 0.2;
};

struct DatasetSplit {
    std::vector<Transcript> train;
    std::vector<Transcript> val;
    std::vector<Transcript> test;
};

// Deterministic seeded shuffle, then val/test take floor(n * fraction)
// items each and train takes the remainder. (Plain round-to-nearest can
// overshoot n; flooring the two minor splits keeps the partition exact and
// matches the conventional 60/20/20 counts.)
DatasetSplit split_dataset(std::vector<Transcript> transcripts,
                           SplitFractions fractions, std::uint64_t seed);

}  // namespace emospace
