#include "metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace muagg {

double student_t_975(int df) {
    // Two-sided 95% critical values; normal limit beyond the table.
    static constexpr double table[30] = {
        12.7062, 4.3027, 3.1824, 2.7764, 2.5706, 2.4469, 2.3646, 2.3060,
        2.2622,  2.2281, 2.2010, 2.1788, 2.1604, 2.1448, 2.1314, 2.1199,
        2.1098,  2.1009, 2.0930, 2.0860, 2.0796, 2.0739, 2.0687, 2.0639,
        2.0595,  2.0555, 2.0518, 2.0484, 2.0452, 2.0423};
    if (df < 1)
        throw std::invalid_argument("student_t_975: df must be >= 1");
    if (df <= 30)
        return table[df - 1];
    if (df <= 40)
        return 2.0211;
    if (df <= 60)
        return 2.0003;
    if (df <= 120)
        return 1.9799;
    return 1.9600;
}

double batch_half_width(std::span<const double> batch_means) {
    const std::size_t n = batch_means.size();
    if (n < 2)
        throw std::invalid_argument("batch_half_width: need at least two batches");
    double mean = 0.0;
    for (double v : batch_means)
        mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : batch_means)
        ss += (v - mean) * (v - mean);
    double stddev = std::sqrt(ss / static_cast<double>(n - 1));
    return student_t_975(static_cast<int>(n) - 1) * stddev / std::sqrt(static_cast<double>(n));
}

} // namespace muagg
