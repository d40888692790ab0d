#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "emospace/lexicons.hpp"
#include "emospace/model.hpp"

namespace emospace {

// Two readings of "how much does input dimension i drive the pseudo-rating".
// `literal` pairs column i's sum with output weight i:
//     score_i = | W_o[i] * sum_j W_v[j][i] |
// `chain` is the exact sensitivity of u to input dimension i:
//     score_i = | (W_o^T W_v)[i] |
// Column i of W_v multiplies input dimension i (output = W_v * input).
enum class ScoreVariant { literal, chain };

std::string_view score_variant_name(ScoreVariant variant);

struct DimensionScores {
    Eigen::VectorXd scores;  // nonnegative, length d
    ScoreVariant variant = ScoreVariant::chain;
};

DimensionScores dimension_scores(const ModelParams& params,
                                 ScoreVariant variant);

// Indices of the k largest scores, descending; ties go to the lower index.
std::vector<int> top_k_dims(const DimensionScores& scores, int k);

// Signed bias-free single-step response of the pseudo-rating to one word:
// W_o^T (W_v v). Sign carries polarity, magnitude carries strength.
double word_salience(const ModelParams& params, const Vec& v);

enum class WordPolarity { positive, negative };

struct ScatterPoint {
    std::string word;
    double x = 0.0;  // raw embedding coordinate at dims.first
    double y = 0.0;  // raw embedding coordinate at dims.second
    WordPolarity polarity = WordPolarity::positive;
};

// From each polarity list: keep in-vocabulary words, rank by |salience|
// descending (ties lexicographic), take per_polarity, and emit raw
// embedding coordinates at the two chosen dimensions.
std::vector<ScatterPoint> scatter_2d(const EmbeddingTable& table,
                                     const PolarityList& polarity,
                                     const ModelParams& params,
                                     std::pair<int, int> dims,
                                     int per_polarity = 19);

// CSV schemas: `word,x,y,polarity` and `dim,score_literal,score_chain`.
void write_scatter_csv(std::span<const ScatterPoint> points,
                       const std::filesystem::path& path);
void write_dimension_scores_csv(const DimensionScores& literal,
                                const DimensionScores& chain,
                                const std::filesystem::path& path);

}  // namespace emospace
