#include "emospace/lexicons.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "emospace/errors.hpp"
#include "emospace/text_io.hpp"

namespace emospace {

namespace {

constexpr std::array<std::string_view, kEmotionCount> kDisplayNames = {
    "Joy", "Trust", "Anticipation", "Surprise",
    "Fear", "Anger", "Disgust", "Sadness",
};

constexpr std::array<std::string_view, kEmotionCount> kFileNames = {
    "joy", "trust", "anticipation", "surprise",
    "fear", "anger", "disgust", "sadness",
};

}  // namespace

std::string_view emotion_name(Emotion e) {
    return kDisplayNames[static_cast<std::size_t>(e)];
}

std::optional<Emotion> parse_emotion(std::string_view name) {
    std::string lower = to_lower_ascii(name);
    for (int i = 0; i < kEmotionCount; ++i) {
        if (lower == kFileNames[static_cast<std::size_t>(i)]) {
            return kAllEmotions[static_cast<std::size_t>(i)];
        }
    }
    return std::nullopt;
}

void EmotionLexicon::add(std::string_view word, Emotion emotion) {
    entries_[to_lower_ascii(word)] |=
        static_cast<std::uint8_t>(1u << static_cast<unsigned>(emotion));
}

bool EmotionLexicon::has(std::string_view word, Emotion emotion) const {
    auto it = entries_.find(to_lower_ascii(word));
    if (it == entries_.end()) return false;
    return (it->second >> static_cast<unsigned>(emotion)) & 1u;
}

bool EmotionLexicon::contains(std::string_view word) const {
    return entries_.contains(to_lower_ascii(word));
}

std::vector<Emotion> EmotionLexicon::emotions_of(std::string_view word) const {
    std::vector<Emotion> out;
    auto it = entries_.find(to_lower_ascii(word));
    if (it == entries_.end()) return out;
    for (Emotion e : kAllEmotions) {
        if ((it->second >> static_cast<unsigned>(e)) & 1u) out.push_back(e);
    }
    return out;
}

EmotionLexicon load_emolex(const std::filesystem::path& path) {
    std::vector<std::string> lines = read_lines(path);
    EmotionLexicon lexicon;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty()) continue;
        std::size_t line_no = i + 1;
        auto fields = split_on(line, '\t');
        if (fields.size() != 3) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) +
                              ": expected 3 tab-separated columns, got " +
                              std::to_string(fields.size()));
        }
        if (fields[0].empty()) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) +
                              ": empty word");
        }
        if (fields[2] != "0" && fields[2] != "1") {
            throw FormatError(path.string() + ":" + std::to_string(line_no) +
                              ": flag must be 0 or 1, got '" +
                              std::string(fields[2]) + "'");
        }
        auto emotion = parse_emotion(fields[1]);
        if (!emotion) continue;  // polarity rows etc.
        if (fields[2] == "1") lexicon.add(fields[0], *emotion);
    }
    return lexicon;
}

void save_emolex(const EmotionLexicon& lexicon,
                 const std::filesystem::path& path) {
    std::ostringstream out;
    for (const auto& [word, mask] : lexicon.entries()) {
        for (int i = 0; i < kEmotionCount; ++i) {
            out << word << '\t' << kFileNames[static_cast<std::size_t>(i)]
                << '\t' << (((mask >> i) & 1u) ? '1' : '0') << '\n';
        }
    }
    write_file(path, out.str());
}

std::vector<std::string> words_for(const EmotionLexicon& lexicon,
                                   Emotion emotion,
                                   const EmbeddingTable& table,
                                   std::size_t* dropped) {
    std::vector<std::string> out;
    std::size_t missing = 0;
    for (const auto& [word, mask] : lexicon.entries()) {
        if (!((mask >> static_cast<unsigned>(emotion)) & 1u)) continue;
        if (table.contains(word)) {
            out.push_back(word);
        } else {
            ++missing;
        }
    }
    if (dropped) *dropped = missing;
    return out;  // map iteration is already lexicographic
}

PolarityList load_polarity_list(const std::filesystem::path& path) {
    std::vector<std::string> lines = read_lines(path);
    std::set<std::string> pos, neg;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty()) continue;
        std::size_t line_no = i + 1;
        auto fields = split_on(line, '\t');
        if (fields.size() != 2 || fields[0].empty()) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) +
                              ": expected `word TAB pos|neg`");
        }
        std::string word = to_lower_ascii(fields[0]);
        if (fields[1] == "pos") {
            if (neg.contains(word)) {
                throw ConflictError(path.string() + ":" +
                                    std::to_string(line_no) + ": word '" +
                                    word + "' tagged both pos and neg");
            }
            pos.insert(std::move(word));
        } else if (fields[1] == "neg") {
            if (pos.contains(word)) {
                throw ConflictError(path.string() + ":" +
                                    std::to_string(line_no) + ": word '" +
                                    word + "' tagged both pos and neg");
            }
            neg.insert(std::move(word));
        } else {
            throw FormatError(path.string() + ":" + std::to_string(line_no) +
                              ": unknown tag '" + std::string(fields[1]) +
                              "' (expected pos or neg)");
        }
    }
    if (pos.empty()) {
        throw EmptyInputError(path.string() + ": no positive words");
    }
    if (neg.empty()) {
        throw EmptyInputError(path.string() + ": no negative words");
    }
    PolarityList list;
    list.positive.assign(pos.begin(), pos.end());
    list.negative.assign(neg.begin(), neg.end());
    return list;
}

void save_polarity_list(const PolarityList& list,
                        const std::filesystem::path& path) {
    std::ostringstream out;
    for (const auto& w : list.positive) out << w << "\tpos\n";
    for (const auto& w : list.negative) out << w << "\tneg\n";
    write_file(path, out.str());
}

}  // namespace emospace
