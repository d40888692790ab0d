#include "emospace/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "emospace/corpus.hpp"
#include "emospace/errors.hpp"
#include "emospace/rng.hpp"
#include "emospace/text_io.hpp"

namespace emospace {

namespace {

// Signs follow the polarity split; magnitudes keep every dyad sum away from
// zero (worst case: Awe = Fear + Surprise >= +0.2, Aggressiveness =
// Anger + Anticipation <= -0.3, before per-word jitter of at most 0.1).
constexpr std::array<double, kEmotionCount> kMeanValence = {
    0.9,   // Joy
    0.8,   // Trust
    0.4,   // Anticipation
    0.6,   // Surprise
    -0.2,  // Fear
    -0.9,  // Anger
    -0.8,  // Disgust
    -0.9,  // Sadness
};

constexpr double kValenceJitter = 0.1;
constexpr double kSmoothing = 0.7;        // weight on the previous track value
constexpr double kPolarityFlip = 0.08;    // per-token polarity switch chance
constexpr double kGridStep = 0.5;         // rating grid, seconds

// Pronounceable unique pseudo-word for index i (fixed-length syllables, so
// concatenation is injective).
std::string make_word(int i) {
    static constexpr char consonants[] = "bdfgklmnprstvz";
    static constexpr char vowels[] = "aeiou";
    constexpr int n_syllables = 14 * 5;
    std::string word;
    int rest = i;
    for (int s = 0; s < 3; ++s) {
        int syl = rest % n_syllables;
        rest /= n_syllables;
        word.insert(word.begin(), vowels[syl % 5]);
        word.insert(word.begin(), consonants[syl / 5]);
    }
    return word;
}

void validate(const SynthConfig& config) {
    if (config.d < 1) throw UsageError("synth: d must be >= 1");
    if (config.vocab_size < 16) {
        throw UsageError("synth: vocab_size must be >= 16");
    }
    if (config.planted_dims.empty()) {
        throw UsageError("synth: planted_dims must be nonempty");
    }
    std::set<int> seen;
    for (int p : config.planted_dims) {
        if (p < 0 || p >= config.d) {
            throw UsageError("synth: planted dim " + std::to_string(p) +
                             " out of range [0, " + std::to_string(config.d) +
                             ")");
        }
        if (!seen.insert(p).second) {
            throw UsageError("synth: planted dims must be distinct");
        }
    }
    if (config.n_transcripts < 1) {
        throw UsageError("synth: n_transcripts must be >= 1");
    }
    if (config.tokens_per_transcript < 2) {
        throw UsageError("synth: tokens_per_transcript must be >= 2");
    }
    if (config.noise_sd < 0.0) {
        throw UsageError("synth: noise_sd must be nonnegative");
    }
}

}  // namespace

double emotion_mean_valence(Emotion e) {
    return kMeanValence[static_cast<std::size_t>(e)];
}

bool is_positive_emotion(Emotion e) { return emotion_mean_valence(e) > 0.0; }

SynthPaths gen_synthetic(const SynthConfig& config,
                         const std::filesystem::path& out_dir) {
    validate(config);

    std::error_code ec;
    std::filesystem::create_directories(out_dir / "corpus", ec);
    if (ec) {
        throw IoError("cannot create output directory " + out_dir.string() +
                      ": " + ec.message());
    }

    // Vocabulary: word i belongs to emotion i mod 8, valence = emotion mean
    // plus a small jitter (sign-preserving by construction).
    const int n_words = config.vocab_size;
    std::vector<std::string> words(static_cast<std::size_t>(n_words));
    std::vector<Emotion> emotions(static_cast<std::size_t>(n_words));
    std::vector<double> valence(static_cast<std::size_t>(n_words));
    Rng val_rng(derive_seed(config.seed, "word-valence"));
    for (int i = 0; i < n_words; ++i) {
        words[i] = make_word(i);
        emotions[i] = kAllEmotions[static_cast<std::size_t>(i % kEmotionCount)];
        double v = emotion_mean_valence(emotions[i]) +
                   val_rng.uniform(-kValenceJitter, kValenceJitter);
        valence[i] = std::clamp(v, -1.0, 1.0);
    }

    // Embeddings: planted coordinates carry the valence verbatim, the rest
    // is zero-mean noise.
    EmbeddingTable table(config.d, "synthetic");
    Rng noise_rng(derive_seed(config.seed, "embedding-noise"));
    const std::set<int> planted(config.planted_dims.begin(),
                                config.planted_dims.end());
    for (int i = 0; i < n_words; ++i) {
        Vec v(config.d);
        for (int k = 0; k < config.d; ++k) {
            v[k] = planted.contains(k) ? valence[i]
                                       : noise_rng.normal(0.0, config.noise_sd);
        }
        table.insert(words[i], std::move(v));
    }

    // Lexicon and polarity list.
    EmotionLexicon lexicon;
    PolarityList polarity;
    for (int i = 0; i < n_words; ++i) {
        lexicon.add(words[i], emotions[i]);
        (valence[i] > 0.0 ? polarity.positive : polarity.negative)
            .push_back(words[i]);
    }
    std::sort(polarity.positive.begin(), polarity.positive.end());
    std::sort(polarity.negative.begin(), polarity.negative.end());

    // Token polarity pools for the narrative arcs.
    std::vector<int> pos_words, neg_words;
    for (int i = 0; i < n_words; ++i) {
        (valence[i] > 0.0 ? pos_words : neg_words).push_back(i);
    }

    SynthPaths paths;
    paths.embeddings = out_dir / "embeddings.txt";
    paths.lexicon = out_dir / "emolex.tsv";
    paths.polarity = out_dir / "polarity.tsv";
    paths.corpus_dir = out_dir / "corpus";
    save_embeddings(table, paths.embeddings);
    save_emolex(lexicon, paths.lexicon);
    save_polarity_list(polarity, paths.polarity);

    // Transcripts: tokens every 0.5 s, polarity blocks via a slow two-state
    // Markov chain, rating track = exponentially smoothed token valence
    // sampled at the token times (which sit exactly on the 0.5 s grid).
    for (int t = 0; t < config.n_transcripts; ++t) {
        Rng rng(derive_seed(config.seed, "transcript:" + std::to_string(t)));
        Transcript transcript;
        char id[32];
        std::snprintf(id, sizeof id, "synth-%03d", t);
        transcript.id = id;

        bool positive_block = rng.uniform01() < 0.5;
        double smoothed = 0.0;
        std::vector<double> times, values;
        for (int k = 0; k < config.tokens_per_transcript; ++k) {
            if (rng.uniform01() < kPolarityFlip) {
                positive_block = !positive_block;
            }
            const auto& pool = positive_block ? pos_words : neg_words;
            int word = pool[rng.index(pool.size())];
            double time = kGridStep * k;
            transcript.tokens.push_back({words[word], time});
            smoothed = kSmoothing * smoothed +
                       (1.0 - kSmoothing) * valence[word];
            times.push_back(time);
            values.push_back(smoothed);
        }
        transcript.track = make_rating_track(std::move(times),
                                             std::move(values),
                                             transcript.id);

        char name[24];
        std::snprintf(name, sizeof name, "%03d.txt", t);
        std::filesystem::path file = paths.corpus_dir / name;
        save_transcript(transcript, file);
        paths.transcripts.push_back(std::move(file));
    }
    return paths;
}

}  // namespace emospace
