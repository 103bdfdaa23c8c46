#pragma once

#include "buffer.hpp"
#include "metrics.hpp"
#include "phy_timing.hpp"
#include "scheduler.hpp"
#include "types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace muagg {

enum class BackoffMode {
    sampled,   // uniform integer slots per cycle
    fixed_mean // deterministic mean backoff every cycle
};

struct ScriptedArrival {
    Nanos time = 0;
    StationId destination = 0;
};

struct SimConfig {
    int m_antennas = 4;
    int n_stations = 8;
    int buffer_capacity = 1000;
    int max_ampdu = 64;

    // Offered traffic: either the aggregate packet rate or a load in Mbit/s
    // (converted through the packet payload length; the load wins when set).
    double arrival_rate_pps = 0.0;
    double offered_load_mbps = 0.0;

    Policy policy = Policy::reference;
    BackoffMode backoff_mode = BackoffMode::sampled;
    std::uint64_t seed = 1;
    std::uint64_t horizon_packets = 5'000'000;
    std::int64_t warmup_packets = -1; // -1: first 10% of the horizon
    int batches = 10;
    PhyMacParams phy;

    // Non-empty: replay these arrivals instead of drawing a Poisson process
    // and run until the buffer drains.
    std::vector<ScriptedArrival> script;

    double lambda_pps() const;
    std::uint64_t resolved_warmup() const;
    void validate() const; // throws std::invalid_argument naming the offending key
};

enum class TraceKind { arrival, tx_start, tx_end };

struct TraceEvent {
    Nanos time = 0;
    TraceKind kind = TraceKind::arrival;
    int destination = -1; // arrivals only
    bool blocked = false; // arrivals only
    std::size_t queued = 0;
    std::size_t in_flight = 0;
    int m = 0; // tx events only
    int b = 0;
    std::vector<StationId> stations; // tx_start only
};

using TraceSink = std::function<void(const TraceEvent&)>;

/// Single-threaded discrete-event simulation of the AP downlink. Only two
/// events exist: the next packet arrival and the end of the transmission
/// cycle in progress. Deterministic given (config, seed).
class Engine {
public:
    explicit Engine(SimConfig cfg);

    void set_trace(TraceSink sink) { trace_ = std::move(sink); }

    RunMetrics run();

    const SimConfig& config() const { return cfg_; }

private:
    SimConfig cfg_;
    TraceSink trace_;
};

std::string to_string(Policy p);
std::string to_string(BackoffMode m);

} // namespace muagg
