#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace muagg {

// Two-sided 95% Student-t quantile for the given degrees of freedom.
double student_t_975(int df);

// 95% half-width from non-overlapping batch means: t * s / sqrt(n).
// Throws std::invalid_argument for fewer than two batches.
double batch_half_width(std::span<const double> batch_means);

/// Point estimates and confidence half-widths of one simulation run. Counts
/// and time-averaged quantities cover the post-warm-up window only.
struct RunMetrics {
    double blocking_probability = 0.0;
    double mean_delay_s = 0.0;
    double throughput_bps = 0.0;
    double mean_streams = 0.0;    // E[m] per transmission
    double mean_ampdu = 0.0;      // E[b] per transmission
    double mean_aggregated = 0.0; // E[m*b] per transmission

    // 95% half-widths (NaN when fewer than two batches carried the metric).
    double blocking_probability_ci = 0.0;
    double mean_delay_s_ci = 0.0;
    double throughput_bps_ci = 0.0;
    double mean_streams_ci = 0.0;
    double mean_ampdu_ci = 0.0;
    double mean_aggregated_ci = 0.0;

    std::uint64_t offered = 0;
    std::uint64_t accepted = 0;
    std::uint64_t blocked = 0;
    std::uint64_t delivered = 0;
    std::uint64_t residual = 0; // accepted but still buffered at the horizon
    std::uint64_t cycles = 0;

    double sim_time_s = 0.0;      // measured span
    double mean_occupancy = 0.0;  // time-averaged queued + in-flight
};

} // namespace muagg
