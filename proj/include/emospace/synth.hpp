#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "emospace/lexicons.hpp"

namespace emospace {

// Deterministic desk-scale corpus with a planted valence signal: every
// word's valence is written verbatim into the planted coordinates of its
// embedding (all other coordinates are zero-mean noise), the rating track
// is an exponentially smoothed trace of the token valences sampled on a
// 0.5 s grid, and the lexicon assigns the four positive-valence emotions
// (Joy, Trust, Anticipation, Surprise) and the four negative ones (Fear,
// Anger, Disgust, Sadness) so that the Plutchik dyad sums keep a consistent
// polarity sign.
struct SynthConfig {
    int d = 20;
    int vocab_size = 160;  // >= 16 (8 emotions x 2 words minimum)
    std::vector<int> planted_dims = {2, 9, 16};
    int n_transcripts = 40;
    int tokens_per_transcript = 60;
    double noise_sd = 0.3;
    std::uint64_t seed = 0;
};

struct SynthPaths {
    std::filesystem::path embeddings;
    std::filesystem::path lexicon;
    std::filesystem::path polarity;
    std::filesystem::path corpus_dir;
    std::vector<std::filesystem::path> transcripts;
};

SynthPaths gen_synthetic(const SynthConfig& config,
                         const std::filesystem::path& out_dir);

// The generator's valence model for the eight emotions. Magnitudes are
// chosen so every dyad sum has the same sign as its feeling's polarity and
// the opposite feeling's sum has the opposite sign.
double emotion_mean_valence(Emotion e);
bool is_positive_emotion(Emotion e);

}  // namespace emospace
