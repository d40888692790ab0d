#include "emospace/interpret.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "emospace/errors.hpp"
#include "emospace/text_io.hpp"

namespace emospace {

std::string_view score_variant_name(ScoreVariant variant) {
    return variant == ScoreVariant::literal ? "literal" : "chain";
}

DimensionScores dimension_scores(const ModelParams& params,
                                 ScoreVariant variant) {
    const int d = params.dim();
    DimensionScores out;
    out.variant = variant;
    out.scores.resize(d);
    if (variant == ScoreVariant::chain) {
        out.scores = (params.W_o.transpose() * params.W_v)
                         .transpose()
                         .cwiseAbs();
    } else {
        for (int i = 0; i < d; ++i) {
            out.scores[i] = std::abs(params.W_o[i] * params.W_v.col(i).sum());
        }
    }
    return out;
}

std::vector<int> top_k_dims(const DimensionScores& scores, int k) {
    const int d = static_cast<int>(scores.scores.size());
    if (k < 1 || k > d) {
        throw RangeError("top_k_dims: k=" + std::to_string(k) +
                         " out of range [1, " + std::to_string(d) + "]");
    }
    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (scores.scores[a] != scores.scores[b]) {
            return scores.scores[a] > scores.scores[b];
        }
        return a < b;
    });
    order.resize(static_cast<std::size_t>(k));
    return order;
}

double word_salience(const ModelParams& params, const Vec& v) {
    if (v.size() != params.dim()) {
        throw DimensionError("word_salience: vector length " +
                             std::to_string(v.size()) + " != model dim " +
                             std::to_string(params.dim()));
    }
    return params.W_o.dot(params.W_v * v);
}

namespace {

struct RankedWord {
    std::string word;
    double salience = 0.0;
};

std::vector<RankedWord> rank_by_salience(const std::vector<std::string>& words,
                                         const EmbeddingTable& table,
                                         const ModelParams& params) {
    std::vector<RankedWord> ranked;
    for (const std::string& word : words) {
        const Vec* vec = table.lookup(word);
        if (!vec) continue;
        ranked.push_back({word, word_salience(params, *vec)});
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const RankedWord& a, const RankedWord& b) {
                  const double ma = std::abs(a.salience);
                  const double mb = std::abs(b.salience);
                  if (ma != mb) return ma > mb;
                  return a.word < b.word;
              });
    return ranked;
}

}  // namespace

std::vector<ScatterPoint> scatter_2d(const EmbeddingTable& table,
                                     const PolarityList& polarity,
                                     const ModelParams& params,
                                     std::pair<int, int> dims,
                                     int per_polarity) {
    const int d = params.dim();
    if (dims.first == dims.second || dims.first < 0 || dims.second < 0 ||
        dims.first >= d || dims.second >= d) {
        throw UsageError("scatter_2d: dimensions must be distinct and < " +
                         std::to_string(d));
    }
    if (per_polarity < 1) {
        throw UsageError("scatter_2d: per_polarity must be >= 1");
    }

    std::vector<ScatterPoint> points;
    auto emit = [&](const std::vector<std::string>& words, WordPolarity tag,
                    const char* label) {
        auto ranked = rank_by_salience(words, table, params);
        if (std::cmp_less(ranked.size(), per_polarity)) {
            throw CountError("scatter_2d: requested " +
                             std::to_string(per_polarity) + " " + label +
                             " words but only " +
                             std::to_string(ranked.size()) +
                             " are in vocabulary");
        }
        for (int i = 0; i < per_polarity; ++i) {
            const Vec& v = *table.lookup(ranked[static_cast<std::size_t>(i)].word);
            points.push_back({ranked[static_cast<std::size_t>(i)].word,
                              v[dims.first], v[dims.second], tag});
        }
    };
    emit(polarity.positive, WordPolarity::positive, "positive");
    emit(polarity.negative, WordPolarity::negative, "negative");
    return points;
}

void write_scatter_csv(std::span<const ScatterPoint> points,
                       const std::filesystem::path& path) {
    std::ostringstream out;
    out << "word,x,y,polarity\n";
    for (const ScatterPoint& p : points) {
        out << p.word << ',' << format_double(p.x) << ',' << format_double(p.y)
            << ','
            << (p.polarity == WordPolarity::positive ? "pos" : "neg") << '\n';
    }
    write_file(path, out.str());
}

void write_dimension_scores_csv(const DimensionScores& literal,
                                const DimensionScores& chain,
                                const std::filesystem::path& path) {
    if (literal.scores.size() != chain.scores.size()) {
        throw DimensionError("dimension score vectors disagree in length");
    }
    std::ostringstream out;
    out << "dim,score_literal,score_chain\n";
    for (Eigen::Index i = 0; i < literal.scores.size(); ++i) {
        out << i << ',' << format_double(literal.scores[i]) << ','
            << format_double(chain.scores[i]) << '\n';
    }
    write_file(path, out.str());
}

}  // namespace emospace
