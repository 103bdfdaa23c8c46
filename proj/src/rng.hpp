#pragma once

#include "types.hpp"

#include <cmath>
#include <random>

namespace muagg {

/// Seeded random source split into three independent streams: inter-arrival
/// times, packet destinations, and backoff draws. Policies compared under the
/// same seed therefore see identical arrival traces even though they consume
/// a different number of backoff values.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed)
        : arrivals_(make_engine(seed, 0x61727276)),   // "arrv"
          destinations_(make_engine(seed, 0x64657374)), // "dest"
          backoff_(make_engine(seed, 0x626f6666)) {}    // "boff"

    // Exponential inter-arrival gap for the given rate (events per ns),
    // rounded to whole nanoseconds.
    Nanos next_interarrival(double rate_per_ns) {
        double u = uniform_(arrivals_);
        double gap = -std::log1p(-u) / rate_per_ns;
        return static_cast<Nanos>(std::llround(gap));
    }

    StationId next_destination(std::uint32_t n_stations) {
        std::uniform_int_distribution<std::uint32_t> dist(0, n_stations - 1);
        return dist(destinations_);
    }

    // Uniform integer backoff over a window of `window_slots` slots
    // (0 .. window_slots-1), in nanoseconds.
    Nanos next_backoff(Nanos slot_time, std::uint32_t window_slots) {
        std::uniform_int_distribution<std::uint32_t> dist(0, window_slots - 1);
        return static_cast<Nanos>(dist(backoff_)) * slot_time;
    }

private:
    static std::mt19937_64 make_engine(std::uint64_t seed, std::uint32_t stream_tag) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32), stream_tag};
        return std::mt19937_64(seq);
    }

    std::mt19937_64 arrivals_;
    std::mt19937_64 destinations_;
    std::mt19937_64 backoff_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

} // namespace muagg
