#include "emospace/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "emospace/errors.hpp"
#include "emospace/rng.hpp"
#include "emospace/text_io.hpp"

namespace emospace {

RatingTrack make_rating_track(std::vector<double> times,
                              std::vector<double> values,
                              const std::string& context) {
    if (times.size() != values.size()) {
        throw DimensionError(context + ": " + std::to_string(times.size()) +
                             " times vs " + std::to_string(values.size()) +
                             " values");
    }
    if (times.size() < 2) {
        throw FormatError(context + ": needs at least 2 rating samples, got " +
                          std::to_string(times.size()));
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0) {
            throw RangeError(context + ": negative time " +
                             format_double(times[i]));
        }
        if (i > 0 && times[i] <= times[i - 1]) {
            throw OrderError(context + ": rating times not strictly " +
                             "increasing at sample " + std::to_string(i + 1));
        }
        if (values[i] < -1.0 || values[i] > 1.0) {
            throw RangeError(context + ": rating value " +
                             format_double(values[i]) + " outside [-1, 1]");
        }
    }
    return RatingTrack{std::move(times), std::move(values)};
}

double interpolate_at(const RatingTrack& track, double t) {
    const auto& ts = track.times;
    const auto& vs = track.values;
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    if (it == ts.end()) return vs.back();
    std::size_t j = static_cast<std::size_t>(it - ts.begin());
    if (ts[j] == t) return vs[j];  // knots exact
    if (j == 0) return vs.front();
    double t0 = ts[j - 1], t1 = ts[j];
    double v0 = vs[j - 1], v1 = vs[j];
    return v0 + (v1 - v0) * ((t - t0) / (t1 - t0));
}

Transcript load_transcript(const std::filesystem::path& path) {
    std::vector<std::string> lines = read_lines(path);

    Transcript transcript;
    std::vector<double> rating_times, rating_values;
    bool saw_header = false;
    double last_token_time = 0.0;

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty()) continue;
        std::string where = path.string() + ":" + std::to_string(i + 1);

        if (!saw_header) {
            auto fields = split_ws(line);
            if (fields.size() != 2 || fields[0] != "#id") {
                throw FormatError(where + ": expected header `#id <string>`");
            }
            transcript.id = std::string(fields[1]);
            saw_header = true;
            continue;
        }

        auto fields = split_ws(line);
        if (fields[0] == "T") {
            if (fields.size() != 3) {
                throw FormatError(where + ": expected `T <time> <token>`");
            }
            auto time = parse_double(fields[1]);
            if (!time) {
                throw FormatError(where + ": bad time '" +
                                  std::string(fields[1]) + "'");
            }
            if (!transcript.tokens.empty() && *time < last_token_time) {
                throw OrderError(where + ": token time goes backwards");
            }
            last_token_time = *time;
            transcript.tokens.push_back({std::string(fields[2]), *time});
        } else if (fields[0] == "R") {
            if (fields.size() != 3) {
                throw FormatError(where + ": expected `R <time> <value>`");
            }
            auto time = parse_double(fields[1]);
            auto value = parse_double(fields[2]);
            if (!time || !value) {
                throw FormatError(where + ": bad number in rating line");
            }
            if (!rating_times.empty() && *time <= rating_times.back()) {
                throw OrderError(where +
                                 ": rating times not strictly increasing");
            }
            if (*value < -1.0 || *value > 1.0) {
                throw RangeError(where + ": rating value " +
                                 format_double(*value) + " outside [-1, 1]");
            }
            if (*time < 0.0) {
                throw RangeError(where + ": negative rating time");
            }
            rating_times.push_back(*time);
            rating_values.push_back(*value);
        } else {
            throw FormatError(where + ": unknown line kind '" +
                              std::string(fields[0]) + "'");
        }
    }

    if (!saw_header) {
        throw FormatError(path.string() + ": missing `#id` header");
    }
    if (transcript.tokens.empty()) {
        throw EmptyInputError(path.string() + ": transcript has no tokens");
    }
    transcript.track = make_rating_track(std::move(rating_times),
                                         std::move(rating_values),
                                         path.string());
    return transcript;
}

void save_transcript(const Transcript& transcript,
                     const std::filesystem::path& path) {
    std::ostringstream out;
    out << "#id " << transcript.id << '\n';
    for (const auto& token : transcript.tokens) {
        out << "T " << format_double(token.time) << ' ' << token.text << '\n';
    }
    for (std::size_t i = 0; i < transcript.track.times.size(); ++i) {
        out << "R " << format_double(transcript.track.times[i]) << ' '
            << format_double(transcript.track.values[i]) << '\n';
    }
    write_file(path, out.str());
}

std::vector<Transcript> load_corpus_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw IoError("not a directory: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<Transcript> transcripts;
    transcripts.reserve(files.size());
    for (const auto& file : files) {
        transcripts.push_back(load_transcript(file));
    }
    if (transcripts.empty()) {
        throw EmptyInputError("no transcripts in " + dir.string());
    }
    return transcripts;
}

AlignedSequence align(const Transcript& transcript,
                      const EmbeddingTable& table, OovPolicy policy) {
    AlignedSequence seq;
    for (std::size_t i = 0; i < transcript.tokens.size(); ++i) {
        const auto& token = transcript.tokens[i];
        const Vec* vec = table.lookup(token.text);
        if (vec == nullptr && policy == OovPolicy::drop) continue;
        seq.vectors.push_back(vec ? *vec : Vec::Zero(table.dim()));
        seq.targets.push_back(interpolate_at(transcript.track, token.time));
        seq.kept_indices.push_back(i);
        seq.oov.push_back(vec == nullptr);
    }
    if (seq.vectors.empty()) {
        throw EmptyInputError("transcript '" + transcript.id +
                              "': no in-vocabulary tokens after drop");
    }
    return seq;
}

DatasetSplit split_dataset(std::vector<Transcript> transcripts,
                           SplitFractions fractions, std::uint64_t seed) {
    const double sum = fractions.train + fractions.val + fractions.test;
    if (fractions.train <= 0.0 || fractions.val <= 0.0 ||
        fractions.test <= 0.0 || std::abs(sum - 1.0) > 1e-9) {
        throw UsageError("split fractions must be positive and sum to 1");
    }
    const std::size_t n = transcripts.size();
    if (n < 3) {
        throw SizeError("need at least 3 transcripts to split, got " +
                        std::to_string(n));
    }

    Rng rng(derive_seed(seed, "dataset-split"));
    // Fisher-Yates over indices.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) {
        std::size_t j = rng.index(i + 1);
        std::swap(order[i], order[j]);
    }

    const auto n_val = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * fractions.val));
    const auto n_test = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * fractions.test));
    const std::size_t n_train = n - n_val - n_test;

    DatasetSplit split;
    split.train.reserve(n_train);
    split.val.reserve(n_val);
    split.test.reserve(n_test);
    for (std::size_t i = 0; i < n; ++i) {
        Transcript& t = transcripts[order[i]];
        if (i < n_train) {
            split.train.push_back(std::move(t));
        } else if (i < n_train + n_val) {
            split.val.push_back(std::move(t));
        } else {
            split.test.push_back(std::move(t));
        }
    }
    return split;
}

}  // namespace emospace
