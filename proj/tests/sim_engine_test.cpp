#include "sim_engine.hpp"

#include "config.hpp"
#include "rng.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

using namespace muagg;

namespace {

struct TxRecord {
    int m;
    int b;
    std::vector<StationId> stations;
};

struct TraceCapture {
    std::vector<TxRecord> transmissions;
    std::vector<TraceEvent> blocked;
    std::size_t max_occupancy = 0;

    TraceSink sink() {
        return [this](const TraceEvent& ev) {
            max_occupancy = std::max(max_occupancy, ev.queued + ev.in_flight);
            if (ev.kind == TraceKind::tx_start)
                transmissions.push_back({ev.m, ev.b, ev.stations});
            else if (ev.kind == TraceKind::arrival && ev.blocked)
                blocked.push_back(ev);
        };
    }
};

} // namespace

TEST_CASE("scripted queue-evolution trace reproduces the drawn sequence") {
    auto cfg = preset_config("fig2-trace");
    REQUIRE(cfg.has_value());
    Engine engine(*cfg);
    TraceCapture capture;
    engine.set_trace(capture.sink());
    RunMetrics metrics = engine.run();

    // Five transmissions: (1,1), (2,2), (2,1), (2,2), then the two leftover
    // packets for station 1.
    REQUIRE(capture.transmissions.size() == 5);
    CHECK(capture.transmissions[0].m == 1);
    CHECK(capture.transmissions[0].b == 1);
    CHECK(capture.transmissions[1].m == 2);
    CHECK(capture.transmissions[1].b == 2);
    CHECK(capture.transmissions[2].m == 2);
    CHECK(capture.transmissions[2].b == 1);
    CHECK(capture.transmissions[3].m == 2);
    CHECK(capture.transmissions[3].b == 2);
    CHECK(capture.transmissions[4].m == 1);
    CHECK(capture.transmissions[4].b == 2);

    // Exactly one packet is lost, during the second transmission.
    REQUIRE(capture.blocked.size() == 1);
    CHECK(capture.blocked[0].destination == 2);
    CHECK(capture.blocked[0].time == us_to_nanos(540));

    // The third transmission serves stations 3 and 1, the fourth 3 and 2.
    CHECK(capture.transmissions[2].stations == std::vector<StationId>{3, 1});
    CHECK(capture.transmissions[3].stations == std::vector<StationId>{3, 2});

    CHECK(metrics.offered == 14);
    CHECK(metrics.blocked == 1);
    CHECK(metrics.delivered == 13);
    CHECK(metrics.residual == 0);
    CHECK(capture.max_occupancy <= 8);
}

TEST_CASE("an idle system serves each arrival immediately and alone") {
    SimConfig cfg;
    cfg.m_antennas = 4;
    cfg.n_stations = 8;
    cfg.buffer_capacity = 100;
    cfg.max_ampdu = 64;
    cfg.arrival_rate_pps = 10.0; // mean gap 100 ms >> cycle time
    cfg.horizon_packets = 200;
    cfg.warmup_packets = 0;
    cfg.batches = 2;
    cfg.backoff_mode = BackoffMode::fixed_mean;
    cfg.seed = 7;

    RunMetrics m = Engine(cfg).run();
    CHECK(m.blocking_probability == 0.0);
    CHECK(m.mean_streams == 1.0);
    CHECK(m.mean_ampdu == 1.0);
    // Every packet waits exactly one full single-packet cycle.
    const double t11 = nanos_to_seconds(cycle_duration(cfg.phy, 1, 1, 4).total);
    CHECK(m.mean_delay_s == doctest::Approx(t11).epsilon(1e-12));
}

TEST_CASE("two packets to one station aggregate into a single stream") {
    SimConfig cfg;
    cfg.m_antennas = 2;
    cfg.n_stations = 4;
    cfg.buffer_capacity = 8;
    cfg.max_ampdu = 2;
    cfg.backoff_mode = BackoffMode::fixed_mean;
    cfg.batches = 2;
    cfg.script = {{us_to_nanos(0), 1}, {us_to_nanos(10), 1}};

    Engine engine(cfg);
    TraceCapture capture;
    engine.set_trace(capture.sink());
    engine.run();

    REQUIRE(capture.transmissions.size() == 2);
    CHECK(capture.transmissions[0].m == 1);
    CHECK(capture.transmissions[0].b == 1);
    // The second packet arrived mid-cycle and is served in the next one.
    CHECK(capture.transmissions[1].m == 1);
    CHECK(capture.transmissions[1].b == 1);

    // Both later packets land inside the first cycle: they share one stream.
    SimConfig burst = cfg;
    burst.script = {{us_to_nanos(0), 1}, {us_to_nanos(1), 1}, {us_to_nanos(2), 1}};
    Engine burst_engine(burst);
    TraceCapture burst_capture;
    burst_engine.set_trace(burst_capture.sink());
    burst_engine.run();
    REQUIRE(burst_capture.transmissions.size() == 2);
    CHECK(burst_capture.transmissions[1].m == 1);
    CHECK(burst_capture.transmissions[1].b == 2);
}

TEST_CASE("identical configuration and seed give identical metrics") {
    SimConfig cfg;
    cfg.m_antennas = 4;
    cfg.n_stations = 8;
    cfg.buffer_capacity = 200;
    cfg.max_ampdu = 16;
    cfg.offered_load_mbps = 600.0;
    cfg.horizon_packets = 50'000;
    cfg.seed = 42;

    RunMetrics a = Engine(cfg).run();
    RunMetrics b = Engine(cfg).run();
    CHECK(a.offered == b.offered);
    CHECK(a.blocked == b.blocked);
    CHECK(a.delivered == b.delivered);
    CHECK(a.cycles == b.cycles);
    CHECK(a.throughput_bps == b.throughput_bps);
    CHECK(a.mean_delay_s == b.mean_delay_s);

    cfg.seed = 43;
    RunMetrics c = Engine(cfg).run();
    CHECK(a.delivered != c.delivered);
}

TEST_CASE("packet conservation holds exactly under overload") {
    SimConfig cfg;
    cfg.m_antennas = 2;
    cfg.n_stations = 4;
    cfg.buffer_capacity = 50;
    cfg.max_ampdu = 4;
    cfg.offered_load_mbps = 400.0; // far beyond capacity
    cfg.horizon_packets = 20'000;
    cfg.warmup_packets = 0;
    cfg.seed = 3;

    RunMetrics m = Engine(cfg).run();
    CHECK(m.offered == 20'000);
    CHECK(m.offered == m.accepted + m.blocked);
    CHECK(m.accepted == m.delivered + m.residual);
    CHECK(m.blocking_probability > 0.1);
    CHECK(m.residual <= 50);
}

TEST_CASE("config validation names the offending key") {
    SimConfig cfg;
    cfg.arrival_rate_pps = 0.0;
    CHECK_THROWS_WITH_AS(Engine{cfg},
                         "arrival_rate_pps or offered_load_mbps must be positive",
                         std::invalid_argument);

    cfg.arrival_rate_pps = 10.0;
    cfg.warmup_packets = 100;
    cfg.horizon_packets = 100;
    CHECK_THROWS_WITH_AS(Engine{cfg}, "warmup_packets must be below horizon_packets",
                         std::invalid_argument);

    cfg.warmup_packets = 0;
    cfg.m_antennas = 0;
    CHECK_THROWS_WITH_AS(Engine{cfg}, "m_antennas must be >= 1", std::invalid_argument);

    cfg.m_antennas = 4;
    cfg.script = {{0, 99}};
    CHECK_THROWS_WITH_AS(Engine{cfg}, "script destination out of [0, n_stations)",
                         std::invalid_argument);
}

TEST_CASE("inter-arrival draws have the configured mean") {
    SplitRng rng(99);
    const double rate_pps = 50'000.0;
    const double rate_per_ns = rate_pps * 1e-9;
    const int n = 1'000'000;
    double sum_ns = 0.0;
    for (int i = 0; i < n; ++i)
        sum_ns += static_cast<double>(rng.next_interarrival(rate_per_ns));
    const double mean_s = sum_ns * 1e-9 / n;
    CHECK(mean_s == doctest::Approx(1.0 / rate_pps).epsilon(0.01));

    // Doubling the rate halves the mean.
    SplitRng rng2(99);
    double sum2 = 0.0;
    for (int i = 0; i < n; ++i)
        sum2 += static_cast<double>(rng2.next_interarrival(2.0 * rate_per_ns));
    CHECK(sum2 == doctest::Approx(sum_ns / 2.0).epsilon(0.01));
}

TEST_CASE("destinations are uniform") {
    SplitRng rng(4242);
    const std::uint32_t n_stations = 16;
    const int draws = 1'000'000;
    std::vector<int> histogram(n_stations, 0);
    for (int i = 0; i < draws; ++i)
        ++histogram[rng.next_destination(n_stations)];
    const double expected = static_cast<double>(draws) / n_stations;
    double chi2 = 0.0;
    for (int count : histogram)
        chi2 += (count - expected) * (count - expected) / expected;
    // 99% critical value of chi-squared with 15 degrees of freedom.
    CHECK(chi2 < 30.578);
}

TEST_CASE("sampled backoff stays in the contention window") {
    SplitRng rng(5);
    const Nanos slot = us_to_nanos(9);
    double sum = 0.0;
    const int n = 100'000;
    for (int i = 0; i < n; ++i) {
        Nanos bo = rng.next_backoff(slot, 32);
        CHECK(bo >= 0);
        CHECK(bo <= 31 * slot);
        CHECK(bo % slot == 0);
        sum += static_cast<double>(bo);
    }
    CHECK(sum / n == doctest::Approx(15.5 * static_cast<double>(slot)).epsilon(0.01));
}

TEST_CASE("ideal policy drains the oldest packets regardless of destination") {
    SimConfig cfg;
    cfg.m_antennas = 4;
    cfg.n_stations = 8;
    cfg.buffer_capacity = 100;
    cfg.max_ampdu = 8;
    cfg.policy = Policy::ideal;
    cfg.backoff_mode = BackoffMode::fixed_mean;
    cfg.batches = 2;
    // Ten packets to a single station, all queued before the first cycle ends.
    for (int i = 0; i < 10; ++i)
        cfg.script.push_back({us_to_nanos(static_cast<double>(i)), 5});

    Engine engine(cfg);
    TraceCapture capture;
    engine.set_trace(capture.sink());
    RunMetrics m = engine.run();

    // First cycle (1,1); the remaining nine go out as m=4, b=2 (8 packets)
    // and then m=1, b=1: the ideal shape ignores the shared destination.
    REQUIRE(capture.transmissions.size() == 3);
    CHECK(capture.transmissions[1].m == 4);
    CHECK(capture.transmissions[1].b == 2);
    CHECK(capture.transmissions[2].m == 1);
    CHECK(capture.transmissions[2].b == 1);
    CHECK(m.delivered == 10);
}
