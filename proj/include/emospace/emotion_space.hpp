#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "emospace/lexicons.hpp"
#include "emospace/model.hpp"

namespace emospace {

// Plutchik primary dyads: each feeling is a pair of basic emotions, and
// each has a diametric opposite.
enum class Feeling : std::uint8_t {
    love,
    optimism,
    submission,
    awe,
    remorse,
    disapproval,
    contempt,
    aggressiveness,
};

inline constexpr int kFeelingCount = 8;

inline constexpr std::array<Feeling, kFeelingCount> kAllFeelings = {
    Feeling::love,        Feeling::optimism, Feeling::submission,
    Feeling::awe,         Feeling::remorse,  Feeling::disapproval,
    Feeling::contempt,    Feeling::aggressiveness,
};

std::string_view feeling_name(Feeling f);  // display form, e.g. "Love"
std::optional<Feeling> parse_feeling(std::string_view name);
std::pair<Emotion, Emotion> feeling_dyad(Feeling f);
Feeling opposite(Feeling f);

enum class Space { raw, projected };
std::string_view space_name(Space space);

// How a word vector is carried into the learned emotion space. `matvec`
// (default) applies the model's word-input map W_v; `diag` multiplies
// component-wise by the diagonal of W_v.
enum class ProjectionKind { matvec, diag };

Vec project(const ModelParams& params, const Vec& v,
            ProjectionKind kind = ProjectionKind::matvec);

// Labeled square matrix of mean pairwise cosines. Diagonal cells with no
// valid non-self pair are absent rather than fabricated.
struct SimilarityMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<std::optional<double>>> values;
    Space space = Space::raw;

    int size() const noexcept { return static_cast<int>(labels.size()); }
};

// 8x8 emotion-entanglement matrix: entry (E, F) is the mean pairwise cosine
// between the two emotions' word-vector pools (each subsampled to at most
// sample_cap words with a per-cell seeded stream; self pairs excluded on
// the diagonal). `params` may be null for Space::raw and is required for
// Space::projected.
SimilarityMatrix entanglement_matrix(const EmotionLexicon& lexicon,
                                     const EmbeddingTable& table,
                                     const ModelParams* params, Space space,
                                     std::size_t sample_cap,
                                     std::uint64_t seed);

// n_pairs vectors for one feeling: each is the sum of one word vector from
// each dyad emotion (drawn with replacement from a per-feeling seeded
// stream; projected first when requested). Zero sums are redrawn, at most
// 100 times per output vector.
std::vector<Vec> feeling_vectors(Feeling feeling,
                                 const EmotionLexicon& lexicon,
                                 const EmbeddingTable& table,
                                 const ModelParams* params, Space space,
                                 std::size_t n_pairs, std::uint64_t seed);

// 8x8 matrix over the feelings; entry (f, g) is the mean pairwise cosine
// between the two feelings' generated vector sets.
SimilarityMatrix feeling_matrix(const EmotionLexicon& lexicon,
                                const EmbeddingTable& table,
                                const ModelParams* params, Space space,
                                std::size_t n_pairs, std::uint64_t seed);

// CSV: labeled header row and label column; absent cells empty.
void write_matrix_csv(const SimilarityMatrix& matrix,
                      const std::filesystem::path& path);
// JSON object {labels, values, space, seed, n_pairs}; absent cells null.
void write_matrix_json(const SimilarityMatrix& matrix,
                       const std::filesystem::path& path, std::uint64_t seed,
                       std::size_t n_pairs);

}  // namespace emospace
