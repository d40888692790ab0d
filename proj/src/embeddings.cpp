#include "emospace/embeddings.hpp"

#include <cmath>
#include <sstream>

#include "emospace/errors.hpp"
#include "emospace/text_io.hpp"

namespace emospace {

EmbeddingTable::EmbeddingTable(int dim, std::string source)
    : dim_(dim), source_(std::move(source)) {
    if (dim_ <= 0) {
        throw DimensionError("embedding dimension must be positive, got " +
                             std::to_string(dim_));
    }
}

void EmbeddingTable::insert(std::string token, Vec vector) {
    if (vector.size() != dim_) {
        throw DimensionError("vector for token '" + token + "' has length " +
                             std::to_string(vector.size()) + ", table dim is " +
                             std::to_string(dim_));
    }
    if (index_.contains(token)) {
        throw DuplicateError("duplicate token '" + token + "'");
    }
    index_.emplace(token, entries_.size());
    entries_.emplace_back(std::move(token), std::move(vector));
}

const Vec* EmbeddingTable::lookup(std::string_view token, CaseFold fold) const {
    std::string key = (fold == CaseFold::lower) ? to_lower_ascii(token)
                                                : std::string(token);
    auto it = index_.find(key);
    if (it == index_.end()) return nullptr;
    return &entries_[it->second].second;
}

std::vector<std::string> EmbeddingTable::vocabulary() const {
    std::vector<std::string> words;
    words.reserve(entries_.size());
    for (const auto& [token, vec] : entries_) words.push_back(token);
    std::sort(words.begin(), words.end());
    return words;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path,
                               std::optional<int> expected_dim) {
    std::vector<std::string> lines = read_lines(path);

    int dim = -1;
    std::vector<std::pair<std::string, Vec>> parsed;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty()) continue;
        std::size_t line_no = i + 1;
        auto fields = split_ws(line);
        if (fields.size() < 2) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) +
                              ": expected a token and at least one value");
        }
        int line_dim = static_cast<int>(fields.size()) - 1;
        if (dim == -1) {
            dim = line_dim;
        } else if (line_dim != dim) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) +
                              ": expected " + std::to_string(dim) +
                              " values, got " + std::to_string(line_dim));
        }
        Vec v(dim);
        for (int k = 0; k < dim; ++k) {
            auto value = parse_double(fields[static_cast<std::size_t>(k) + 1]);
            if (!value) {
                throw FormatError(path.string() + ":" +
                                  std::to_string(line_no) + ": bad float '" +
                                  std::string(fields[k + 1]) + "'");
            }
            v[k] = *value;
        }
        parsed.emplace_back(std::string(fields[0]), std::move(v));
    }
    if (dim == -1) {
        throw EmptyInputError(path.string() + ": no embedding records");
    }
    if (expected_dim && *expected_dim != dim) {
        throw DimensionError(path.string() + ": file dimension " +
                             std::to_string(dim) + " != expected " +
                             std::to_string(*expected_dim));
    }

    EmbeddingTable table(dim, path.string());
    for (auto& [token, vec] : parsed) {
        table.insert(std::move(token), std::move(vec));
    }
    return table;
}

void save_embeddings(const EmbeddingTable& table,
                     const std::filesystem::path& path) {
    std::ostringstream out;
    for (const auto& [token, vec] : table.entries()) {
        out << token;
        for (int k = 0; k < vec.size(); ++k) {
            out << ' ' << format_double(vec[k]);
        }
        out << '\n';
    }
    write_file(path, out.str());
}

double cosine(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) {
        throw DimensionError("cosine: lengths " + std::to_string(a.size()) +
                             " and " + std::to_string(b.size()) + " differ");
    }
    double na = a.norm();
    double nb = b.norm();
    if (na == 0.0 || nb == 0.0) {
        throw DegenerateVectorError("cosine: zero-norm vector");
    }
    return a.dot(b) / (na * nb);
}

double mean_pairwise_similarity(std::span<const Vec> set_a,
                                std::span<const Vec> set_b) {
    if (set_a.empty() || set_b.empty()) {
        throw EmptyInputError("mean_pairwise_similarity: empty vector set");
    }
    for (std::size_t i = 0; i < set_a.size(); ++i) {
        if (set_a[i].norm() == 0.0) {
            throw DegenerateVectorError(
                "mean_pairwise_similarity: zero vector in set A at index " +
                std::to_string(i));
        }
    }
    for (std::size_t j = 0; j < set_b.size(); ++j) {
        if (set_b[j].norm() == 0.0) {
            throw DegenerateVectorError(
                "mean_pairwise_similarity: zero vector in set B at index " +
                std::to_string(j));
        }
    }
    const bool same_set =
        set_a.data() == set_b.data() && set_a.size() == set_b.size();
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < set_a.size(); ++i) {
        for (std::size_t j = 0; j < set_b.size(); ++j) {
            if (same_set && i == j) continue;
            sum += cosine(set_a[i], set_b[j]);
            ++count;
        }
    }
    if (count == 0) {
        throw EmptyInputError(
            "mean_pairwise_similarity: no non-self pairs to average");
    }
    return sum / static_cast<double>(count);
}

}  // namespace emospace
