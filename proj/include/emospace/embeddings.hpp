#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace emospace {

using Vec = Eigen::VectorXd;

enum class CaseFold { exact, lower };

// Token -> fixed-width real vector. Immutable once loaded; every query is
// pure and safe to call from any number of threads.
class EmbeddingTable {
  public:
    EmbeddingTable(int dim, std::string source);

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::string& source() const noexcept { return source_; }

    // Throws DuplicateError on a repeated token, DimensionError on a
    // wrong-length vector.
    void insert(std::string token, Vec vector);

    // nullptr means absent; absence is a value, not an error. Under
    // CaseFold::lower the query is ASCII-lowercased before the lookup.
    const Vec* lookup(std::string_view token,
                      CaseFold fold = CaseFold::exact) const;

    bool contains(std::string_view token) const {
        return lookup(token) != nullptr;
    }

    // Insertion order (the file's line order).
    const std::vector<std::pair<std::string, Vec>>& entries() const noexcept {
        return entries_;
    }

    std::vector<std::string> vocabulary() const;  // sorted

  private:
    int dim_;
    std::string source_;
    std::vector<std::pair<std::string, Vec>> entries_;
    std::unordered_map<std::string, std::size_t> index_;
};

// One record per line: token, then a constant number of decimal floats,
// single-space separated, no header.
EmbeddingTable load_embeddings(const std::filesystem::path& path,
                               std::optional<int> expected_dim = std::nullopt);
void save_embeddings(const EmbeddingTable& table,
                     const std::filesystem::path& path);

// A.B / (|A||B|). Throws DimensionError on length mismatch,
// DegenerateVectorError on a zero-norm input.
double cosine(const Vec& a, const Vec& b);

// Mean cosine over the full cross product A x B. Passing the same object
// (same data pointer and size) for both sides marks a same-set query, whose
// self pairs (equal index) are skipped so a category's self-similarity is
// not inflated by cos(v, v) = 1 terms.
double mean_pairwise_similarity(std::span<const Vec> set_a,
                                std::span<const Vec> set_b);

}  // namespace emospace
