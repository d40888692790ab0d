#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emospace/embeddings.hpp"

namespace emospace {

// The eight basic emotions. The enumerator order is the canonical axis
// order used for every matrix and report.
enum class Emotion : std::uint8_t {
    joy,
    trust,
    anticipation,
    surprise,
    fear,
    anger,
    disgust,
    sadness,
};

inline constexpr int kEmotionCount = 8;

inline constexpr std::array<Emotion, kEmotionCount> kAllEmotions = {
    Emotion::joy,      Emotion::trust, Emotion::anticipation,
    Emotion::surprise, Emotion::fear,  Emotion::anger,
    Emotion::disgust,  Emotion::sadness,
};

std::string_view emotion_name(Emotion e);  // display form, e.g. "Joy"
std::optional<Emotion> parse_emotion(std::string_view name);  // case-insensitive

// word -> nonempty subset of the eight emotions. Words are ASCII-lowercased
// on entry. Immutable in practice after load; queries are pure.
class EmotionLexicon {
  public:
    void add(std::string_view word, Emotion emotion);

    bool has(std::string_view word, Emotion emotion) const;
    bool contains(std::string_view word) const;
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    std::vector<Emotion> emotions_of(std::string_view word) const;

    // Sorted by word; mask bit i corresponds to kAllEmotions[i].
    const std::map<std::string, std::uint8_t>& entries() const noexcept {
        return entries_;
    }

    bool operator==(const EmotionLexicon&) const = default;

  private:
    std::map<std::string, std::uint8_t> entries_;
};

// NRC-style file: `word TAB category TAB flag`, flag in {0,1}. Categories
// other than the eight emotions (e.g. the distribution's polarity rows) are
// skipped. Words whose eight flags are all zero are omitted.
EmotionLexicon load_emolex(const std::filesystem::path& path);
void save_emolex(const EmotionLexicon& lexicon,
                 const std::filesystem::path& path);

// Words tagged with `emotion` that are present in the table, sorted. When
// `dropped` is given it receives the count of tagged words the table lacks.
std::vector<std::string> words_for(const EmotionLexicon& lexicon,
                                   Emotion emotion,
                                   const EmbeddingTable& table,
                                   std::size_t* dropped = nullptr);

struct PolarityList {
    std::vector<std::string> positive;
    std::vector<std::string> negative;
};

// `word TAB pos|neg`, lowercased and deduplicated; a word tagged both ways
// is a conflict.
PolarityList load_polarity_list(const std::filesystem::path& path);
void save_polarity_list(const PolarityList& list,
                        const std::filesystem::path& path);

}  // namespace emospace
