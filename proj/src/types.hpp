#pragma once

#include <cstdint>

namespace muagg {

// Simulation time and durations are integer nanoseconds so that values such
// as the 139.5 us mean backoff stay exact and the event clock never
// accumulates floating-point error.
using Nanos = std::int64_t;

using PacketId = std::uint64_t;
using StationId = std::uint32_t;

constexpr Nanos nanos_per_us = 1000;

constexpr Nanos us_to_nanos(double us) {
    return static_cast<Nanos>(us * static_cast<double>(nanos_per_us) + 0.5);
}

constexpr double nanos_to_us(Nanos ns) {
    return static_cast<double>(ns) / static_cast<double>(nanos_per_us);
}

constexpr double nanos_to_seconds(Nanos ns) {
    return static_cast<double>(ns) * 1e-9;
}

} // namespace muagg
