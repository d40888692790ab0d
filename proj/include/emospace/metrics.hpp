#pragma once

#include <cstddef>
#include <span>

namespace emospace {

struct MetricReport {
    double ccc = 0.0;
    double mse = 0.0;
    std::size_t n = 0;
};

// Lin's concordance correlation coefficient with population (1/n) moments:
//   2 cov(x, y) / (var(x) + var(y) + (mean(x) - mean(y))^2)
// Throws DimensionError on length mismatch and DegenerateStatError when the
// denominator is zero (both sequences constant and equal).
double ccc(std::span<const double> x, std::span<const double> y);

double mse(std::span<const double> x, std::span<const double> y);

MetricReport evaluate(std::span<const double> predictions,
                      std::span<const double> targets);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;  // population
};

MeanSd mean_sd(std::span<const double> xs);

}  // namespace emospace
