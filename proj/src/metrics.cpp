#include "emospace/metrics.hpp"

#include <cmath>
#include <string>

#include "emospace/errors.hpp"

namespace emospace {

namespace {

void check_lengths(std::span<const double> x, std::span<const double> y,
                   const char* what) {
    if (x.size() != y.size()) {
        throw DimensionError(std::string(what) + ": lengths " +
                             std::to_string(x.size()) + " and " +
                             std::to_string(y.size()) + " differ");
    }
}

double mean_of(std::span<const double> xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

}  // namespace

double ccc(std::span<const double> x, std::span<const double> y) {
    check_lengths(x, y, "ccc");
    if (x.size() < 2) {
        throw DimensionError("ccc: needs at least 2 samples, got " +
                             std::to_string(x.size()));
    }
    const double n = static_cast<double>(x.size());
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double cov = 0.0, var_x = 0.0, var_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    cov /= n;
    var_x /= n;
    var_y /= n;
    const double gap = mx - my;
    const double denom = var_x + var_y + gap * gap;
    if (denom == 0.0) {
        throw DegenerateStatError(
            "ccc: both sequences constant and equal (0/0)");
    }
    return 2.0 * cov / denom;
}

double mse(std::span<const double> x, std::span<const double> y) {
    check_lengths(x, y, "mse");
    if (x.empty()) throw EmptyInputError("mse: empty input");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        sum += d * d;
    }
    return sum / static_cast<double>(x.size());
}

MetricReport evaluate(std::span<const double> predictions,
                      std::span<const double> targets) {
    MetricReport report;
    report.n = predictions.size();
    report.ccc = ccc(predictions, targets);
    report.mse = mse(predictions, targets);
    return report;
}

MeanSd mean_sd(std::span<const double> xs) {
    if (xs.empty()) throw EmptyInputError("mean_sd: empty input");
    MeanSd out;
    out.mean = mean_of(xs);
    double acc = 0.0;
    for (double x : xs) {
        const double d = x - out.mean;
        acc += d * d;
    }
    out.sd = std::sqrt(acc / static_cast<double>(xs.size()));
    return out;
}

}  // namespace emospace
