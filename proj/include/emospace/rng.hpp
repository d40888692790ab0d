#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace emospace {

// 64-bit FNV-1a. Doubles as the file digest in run manifests and as the
// mixer for deriving independent substream seeds.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t h = 14695981039346656037ull);

// Seed for an independent stream identified by (base, label). Streams with
// different labels never contend for draws, so adding a consumer cannot
// perturb another consumer's sequence.
std::uint64_t derive_seed(std::uint64_t base, std::string_view label);

// Deterministic RNG facade over std::mt19937_64. The engine is fully
// specified by the standard; the distribution mappings are hand-rolled
// because the std ones are implementation-defined and would tie generated
// fixtures to one standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // [0, n), n > 0. Modulo bias is ~n/2^64, irrelevant at our scales.
    std::size_t index(std::size_t n) { return gen_() % n; }

    // Box-Muller with a cached spare draw.
    double normal(double mean, double sd);

  private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace emospace
