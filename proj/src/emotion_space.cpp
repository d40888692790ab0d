#include "emospace/emotion_space.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "emospace/errors.hpp"
#include "emospace/rng.hpp"
#include "emospace/text_io.hpp"

namespace emospace {

namespace {

constexpr std::array<std::string_view, kFeelingCount> kFeelingNames = {
    "Love",     "Optimism",    "Submission", "Awe",
    "Remorse",  "Disapproval", "Contempt",   "Aggressiveness",
};

constexpr std::array<std::pair<Emotion, Emotion>, kFeelingCount> kDyads = {{
    {Emotion::joy, Emotion::trust},           // Love
    {Emotion::anticipation, Emotion::joy},    // Optimism
    {Emotion::trust, Emotion::fear},          // Submission
    {Emotion::fear, Emotion::surprise},       // Awe
    {Emotion::sadness, Emotion::disgust},     // Remorse
    {Emotion::surprise, Emotion::sadness},    // Disapproval
    {Emotion::disgust, Emotion::anger},       // Contempt
    {Emotion::anger, Emotion::anticipation},  // Aggressiveness
}};

constexpr std::array<Feeling, kFeelingCount> kOpposites = {
    Feeling::remorse,     Feeling::disapproval, Feeling::contempt,
    Feeling::aggressiveness, Feeling::love,     Feeling::optimism,
    Feeling::submission,  Feeling::awe,
};

}  // namespace

std::string_view feeling_name(Feeling f) {
    return kFeelingNames[static_cast<std::size_t>(f)];
}

std::optional<Feeling> parse_feeling(std::string_view name) {
    std::string lower = to_lower_ascii(name);
    for (std::size_t i = 0; i < kFeelingNames.size(); ++i) {
        if (lower == to_lower_ascii(kFeelingNames[i])) {
            return kAllFeelings[i];
        }
    }
    return std::nullopt;
}

std::pair<Emotion, Emotion> feeling_dyad(Feeling f) {
    return kDyads[static_cast<std::size_t>(f)];
}

Feeling opposite(Feeling f) { return kOpposites[static_cast<std::size_t>(f)]; }

std::string_view space_name(Space space) {
    return space == Space::raw ? "raw" : "projected";
}

Vec project(const ModelParams& params, const Vec& v, ProjectionKind kind) {
    if (v.size() != params.dim()) {
        throw DimensionError("project: vector length " +
                             std::to_string(v.size()) + " != model dim " +
                             std::to_string(params.dim()));
    }
    if (kind == ProjectionKind::matvec) {
        return params.W_v * v;
    }
    return params.W_v.diagonal().cwiseProduct(v);
}

namespace {

const ModelParams* require_params_for(Space space, const ModelParams* params) {
    if (space == Space::projected && params == nullptr) {
        throw UsageError("projected space requires model parameters");
    }
    return params;
}

// Subsample `pool` down to at most `cap` distinct entries (partial
// Fisher-Yates), preserving determinism of the supplied stream.
std::vector<std::string> subsample(std::vector<std::string> pool,
                                   std::size_t cap, Rng& rng) {
    if (pool.size() <= cap) return pool;
    for (std::size_t i = 0; i < cap; ++i) {
        std::size_t j = i + rng.index(pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(cap);
    return pool;
}

std::vector<Vec> pool_vectors(const std::vector<std::string>& words,
                              const EmbeddingTable& table,
                              const ModelParams* params, Space space,
                              std::string_view cell) {
    std::vector<Vec> out;
    out.reserve(words.size());
    for (const std::string& word : words) {
        const Vec* raw = table.lookup(word);
        Vec v = (space == Space::projected) ? project(*params, *raw) : *raw;
        if (v.norm() == 0.0) {
            throw DegenerateVectorError(std::string(cell) + ": vector for '" +
                                        word + "' is zero in " +
                                        std::string(space_name(space)) +
                                        " space");
        }
        out.push_back(std::move(v));
    }
    return out;
}

SimilarityMatrix make_matrix(std::vector<std::string> labels, Space space) {
    SimilarityMatrix m;
    m.labels = std::move(labels);
    m.space = space;
    m.values.assign(m.labels.size(),
                    std::vector<std::optional<double>>(m.labels.size()));
    return m;
}

}  // namespace

SimilarityMatrix entanglement_matrix(const EmotionLexicon& lexicon,
                                     const EmbeddingTable& table,
                                     const ModelParams* params, Space space,
                                     std::size_t sample_cap,
                                     std::uint64_t seed) {
    require_params_for(space, params);
    if (sample_cap == 0) {
        throw UsageError("entanglement_matrix: sample_cap must be positive");
    }

    std::array<std::vector<std::string>, kEmotionCount> pools;
    for (int i = 0; i < kEmotionCount; ++i) {
        pools[static_cast<std::size_t>(i)] = words_for(
            lexicon, kAllEmotions[static_cast<std::size_t>(i)], table);
        if (pools[static_cast<std::size_t>(i)].empty()) {
            throw CoverageError(
                "entanglement_matrix: no in-vocabulary words for emotion " +
                std::string(
                    emotion_name(kAllEmotions[static_cast<std::size_t>(i)])));
        }
    }

    std::vector<std::string> labels;
    for (Emotion e : kAllEmotions) labels.emplace_back(emotion_name(e));
    SimilarityMatrix matrix = make_matrix(std::move(labels), space);

    for (int a = 0; a < kEmotionCount; ++a) {
        for (int b = a; b < kEmotionCount; ++b) {
            const std::string cell = "entanglement (" + matrix.labels[a] +
                                     ", " + matrix.labels[b] + ")";
            Rng rng(derive_seed(seed, "entangle:" + matrix.labels[a] + "|" +
                                          matrix.labels[b]));
            if (a == b) {
                auto words = subsample(pools[a], sample_cap, rng);
                if (words.size() < 2) continue;  // absent: no non-self pair
                auto vecs = pool_vectors(words, table, params, space, cell);
                std::span<const Vec> s(vecs);
                matrix.values[a][b] = mean_pairwise_similarity(s, s);
            } else {
                auto words_a = subsample(pools[a], sample_cap, rng);
                auto words_b = subsample(pools[b], sample_cap, rng);
                auto vecs_a = pool_vectors(words_a, table, params, space, cell);
                auto vecs_b = pool_vectors(words_b, table, params, space, cell);
                double value = mean_pairwise_similarity(vecs_a, vecs_b);
                matrix.values[a][b] = value;
                matrix.values[b][a] = value;
            }
        }
    }
    return matrix;
}

std::vector<Vec> feeling_vectors(Feeling feeling,
                                 const EmotionLexicon& lexicon,
                                 const EmbeddingTable& table,
                                 const ModelParams* params, Space space,
                                 std::size_t n_pairs, std::uint64_t seed) {
    require_params_for(space, params);
    if (n_pairs == 0) {
        throw UsageError("feeling_vectors: n_pairs must be positive");
    }
    const auto [first, second] = feeling_dyad(feeling);
    auto pool_a = words_for(lexicon, first, table);
    auto pool_b = words_for(lexicon, second, table);
    for (const auto& [emotion, pool] :
         {std::pair{first, &pool_a}, std::pair{second, &pool_b}}) {
        if (pool->empty()) {
            throw CoverageError("feeling " +
                                std::string(feeling_name(feeling)) +
                                ": no in-vocabulary words for emotion " +
                                std::string(emotion_name(emotion)));
        }
    }

    auto vecs_a = pool_vectors(pool_a, table, params, space,
                               "feeling " + std::string(feeling_name(feeling)));
    auto vecs_b = pool_vectors(pool_b, table, params, space,
                               "feeling " + std::string(feeling_name(feeling)));

    Rng rng(derive_seed(seed, "feeling:" + std::string(feeling_name(feeling))));
    std::vector<Vec> out;
    out.reserve(n_pairs);
    for (std::size_t k = 0; k < n_pairs; ++k) {
        Vec sum;
        int attempts = 0;
        do {
            if (++attempts > 100) {
                throw NumericError(
                    "feeling " + std::string(feeling_name(feeling)) +
                    ": 100 redraws produced only zero-sum vectors");
            }
            const Vec& a = vecs_a[rng.index(vecs_a.size())];
            const Vec& b = vecs_b[rng.index(vecs_b.size())];
            sum = a + b;
        } while (sum.norm() == 0.0);
        out.push_back(std::move(sum));
    }
    return out;
}

SimilarityMatrix feeling_matrix(const EmotionLexicon& lexicon,
                                const EmbeddingTable& table,
                                const ModelParams* params, Space space,
                                std::size_t n_pairs, std::uint64_t seed) {
    require_params_for(space, params);

    std::array<std::vector<Vec>, kFeelingCount> sets;
    for (std::size_t i = 0; i < kAllFeelings.size(); ++i) {
        sets[i] = feeling_vectors(kAllFeelings[i], lexicon, table, params,
                                  space, n_pairs, seed);
    }

    std::vector<std::string> labels;
    for (Feeling f : kAllFeelings) labels.emplace_back(feeling_name(f));
    SimilarityMatrix matrix = make_matrix(std::move(labels), space);

    for (int a = 0; a < kFeelingCount; ++a) {
        for (int b = a; b < kFeelingCount; ++b) {
            if (a == b) {
                if (sets[a].size() < 2) continue;
                std::span<const Vec> s(sets[a]);
                matrix.values[a][a] = mean_pairwise_similarity(s, s);
            } else {
                double value = mean_pairwise_similarity(sets[a], sets[b]);
                matrix.values[a][b] = value;
                matrix.values[b][a] = value;
            }
        }
    }
    return matrix;
}

void write_matrix_csv(const SimilarityMatrix& matrix,
                      const std::filesystem::path& path) {
    std::ostringstream out;
    out << "label";
    for (const auto& label : matrix.labels) out << ',' << label;
    out << '\n';
    for (int i = 0; i < matrix.size(); ++i) {
        out << matrix.labels[i];
        for (int j = 0; j < matrix.size(); ++j) {
            out << ',';
            if (matrix.values[i][j]) out << format_double(*matrix.values[i][j]);
        }
        out << '\n';
    }
    write_file(path, out.str());
}

void write_matrix_json(const SimilarityMatrix& matrix,
                       const std::filesystem::path& path, std::uint64_t seed,
                       std::size_t n_pairs) {
    nlohmann::json doc;
    doc["labels"] = matrix.labels;
    doc["space"] = std::string(space_name(matrix.space));
    doc["seed"] = seed;
    doc["n_pairs"] = n_pairs;
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < matrix.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < matrix.size(); ++j) {
            if (matrix.values[i][j]) {
                row.push_back(*matrix.values[i][j]);
            } else {
                row.push_back(nullptr);
            }
        }
        rows.push_back(std::move(row));
    }
    doc["values"] = std::move(rows);
    write_file(path, doc.dump(2) + "\n");
}

}  // namespace emospace
