#include "emospace/rng.hpp"

#include <cmath>
#include <numbers>

namespace emospace {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h) {
    constexpr std::uint64_t prime = 1099511628211ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= prime;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view label) {
    char raw[8];
    for (int i = 0; i < 8; ++i) {
        raw[i] = static_cast<char>((base >> (8 * i)) & 0xff);
    }
    std::uint64_t h = fnv1a64(std::string_view(raw, 8));
    return fnv1a64(label, h);
}

double Rng::normal(double mean, double sd) {
    if (has_spare_) {
        has_spare_ = false;
        return mean + sd * spare_;
    }
    double u = 0.0;
    do {
        u = uniform01();
    } while (u <= 0.0);
    double v = uniform01();
    double radius = std::sqrt(-2.0 * std::log(u));
    double angle = 2.0 * std::numbers::pi * v;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return mean + sd * radius * std::cos(angle);
}

}  // namespace emospace
