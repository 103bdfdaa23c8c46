#include "sim_engine.hpp"

#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace muagg {

double SimConfig::lambda_pps() const {
    if (offered_load_mbps > 0.0)
        return offered_load_mbps * 1e6 / static_cast<double>(phy.packet_payload_bits);
    return arrival_rate_pps;
}

std::uint64_t SimConfig::resolved_warmup() const {
    if (!script.empty())
        return 0;
    if (warmup_packets < 0)
        return horizon_packets / 10;
    return static_cast<std::uint64_t>(warmup_packets);
}

void SimConfig::validate() const {
    if (m_antennas < 1)
        throw std::invalid_argument("m_antennas must be >= 1");
    if (n_stations < 1)
        throw std::invalid_argument("n_stations must be >= 1");
    if (buffer_capacity < 1)
        throw std::invalid_argument("buffer_capacity must be >= 1");
    if (max_ampdu < 1)
        throw std::invalid_argument("max_ampdu must be >= 1");
    if (batches < 2)
        throw std::invalid_argument("batches must be >= 2");
    phy.validate();
    if (script.empty()) {
        if (lambda_pps() <= 0.0)
            throw std::invalid_argument(
                "arrival_rate_pps or offered_load_mbps must be positive");
        if (horizon_packets == 0)
            throw std::invalid_argument("horizon_packets must be >= 1");
        if (resolved_warmup() >= horizon_packets)
            throw std::invalid_argument("warmup_packets must be below horizon_packets");
    } else {
        for (std::size_t i = 1; i < script.size(); ++i)
            if (script[i].time < script[i - 1].time)
                throw std::invalid_argument("script times must be non-decreasing");
        for (const ScriptedArrival& a : script)
            if (a.destination >= static_cast<StationId>(n_stations))
                throw std::invalid_argument("script destination out of [0, n_stations)");
    }
}

std::string to_string(Policy p) {
    return p == Policy::reference ? "reference" : "ideal";
}

std::string to_string(BackoffMode m) {
    return m == BackoffMode::sampled ? "sampled" : "fixed-mean";
}

namespace {

struct BatchAcc {
    std::uint64_t offered = 0;
    std::uint64_t blocked = 0;
    std::uint64_t delivered = 0;
    std::int64_t delay_sum = 0; // ns
    std::uint64_t cycles = 0;
    std::uint64_t m_sum = 0;
    std::uint64_t b_sum = 0;
    std::uint64_t l_sum = 0;
    Nanos start_time = -1;
};

class RunState {
public:
    RunState(const SimConfig& cfg, const TraceSink& trace)
        : cfg_(cfg),
          trace_(trace),
          buffer_(static_cast<std::size_t>(cfg.buffer_capacity)),
          rng_(cfg.seed),
          warmup_(cfg.resolved_warmup()),
          scripted_(!cfg.script.empty()),
          horizon_(scripted_ ? cfg.script.size() : cfg.horizon_packets),
          batches_(static_cast<std::size_t>(cfg.batches), BatchAcc{}) {
        counted_span_ = horizon_ - warmup_;
        rate_per_ns_ = cfg.lambda_pps() * 1e-9;
        mean_backoff_ = mean_backoff_duration(cfg.phy);
        // Sampled backoff draws a uniform integer slot count whose mean
        // matches the configured mean (15.5 slots -> window of 32).
        backoff_window_ = static_cast<std::uint32_t>(
            std::max<long long>(1, std::llround(2.0 * cfg.phy.mean_backoff_slots + 1.0)));
        if (warmup_ == 0) {
            warm_start_time_ = 0;
            warm_started_ = true;
        }
        draw_next_arrival();
    }

    RunMetrics run() {
        while (true) {
            bool have_arrival = arrival_pending_;
            bool have_completion = cycle_active_;
            if (!have_arrival && !have_completion)
                break;
            if (!scripted_ && offered_ >= horizon_)
                break; // metrics window closes at the last offered packet
            // Completions fire before arrivals carrying the same timestamp.
            if (have_completion && (!have_arrival || cycle_end_ <= next_arrival_time_))
                process_completion();
            else
                process_arrival();
        }
        return finalize();
    }

private:
    void draw_next_arrival() {
        if (scripted_) {
            if (script_index_ < cfg_.script.size()) {
                next_arrival_time_ = cfg_.script[script_index_].time;
                next_destination_ = cfg_.script[script_index_].destination;
                ++script_index_;
                arrival_pending_ = true;
            } else {
                arrival_pending_ = false;
            }
            return;
        }
        if (offered_ >= horizon_) {
            arrival_pending_ = false;
            return;
        }
        next_arrival_time_ = clock_ + rng_.next_interarrival(rate_per_ns_);
        next_destination_ = rng_.next_destination(static_cast<std::uint32_t>(cfg_.n_stations));
        arrival_pending_ = true;
    }

    void advance_clock(Nanos t) {
        occupancy_integral_ += static_cast<std::int64_t>(buffer_.occupancy()) * (t - clock_);
        clock_ = t;
    }

    bool counted(PacketId id) const { return id >= warmup_; }

    std::size_t batch_of(PacketId id) const {
        std::uint64_t idx = id - warmup_;
        std::size_t b = static_cast<std::size_t>(idx * batches_.size() / counted_span_);
        return std::min(b, batches_.size() - 1);
    }

    void process_arrival() {
        advance_clock(next_arrival_time_);
        Packet p{next_id_++, next_destination_, clock_};
        ++offered_;

        OfferResult res = buffer_.offer(p);
        if (counted(p.id)) {
            BatchAcc& acc = batches_[batch_of(p.id)];
            ++acc.offered;
            if (acc.start_time < 0)
                acc.start_time = clock_;
            if (res == OfferResult::blocked)
                ++acc.blocked;
        }
        if (!warm_started_ && offered_ == warmup_) {
            warm_start_time_ = clock_;
            warm_occupancy_integral_ = occupancy_integral_;
            warm_started_ = true;
        }

        if (trace_) {
            TraceEvent ev;
            ev.time = clock_;
            ev.kind = TraceKind::arrival;
            ev.destination = static_cast<int>(p.destination);
            ev.blocked = (res == OfferResult::blocked);
            ev.queued = buffer_.queued_count();
            ev.in_flight = buffer_.in_flight_count();
            trace_(ev);
        }

        if (res == OfferResult::accepted && !cycle_active_)
            start_cycle();
        draw_next_arrival();
    }

    void start_cycle() {
        TransmissionPlan plan;
        if (cfg_.policy == Policy::reference) {
            auto maybe = plan_reference(buffer_.census(), cfg_.m_antennas, cfg_.max_ampdu);
            if (!maybe)
                return;
            plan = std::move(*maybe);
        } else {
            auto shape = plan_ideal(buffer_.queued_count(), cfg_.m_antennas, cfg_.max_ampdu);
            if (!shape)
                return;
            plan = materialize_ideal(*shape);
        }

        buffer_.dequeue_for_transmission(plan.all_ids());

        Nanos backoff = (cfg_.backoff_mode == BackoffMode::sampled)
                            ? rng_.next_backoff(cfg_.phy.slot_time, backoff_window_)
                            : mean_backoff_;
        CycleBreakdown c = cycle_duration_with_backoff(cfg_.phy, plan.m, plan.b,
                                                       cfg_.m_antennas, backoff);
        cycle_active_ = true;
        cycle_end_ = clock_ + c.total;
        cycle_m_ = plan.m;
        cycle_b_ = plan.b;

        if (offered_ > warmup_) {
            BatchAcc& acc = batches_[batch_of(offered_ - 1)];
            ++acc.cycles;
            acc.m_sum += static_cast<std::uint64_t>(plan.m);
            acc.b_sum += static_cast<std::uint64_t>(plan.b);
            acc.l_sum += static_cast<std::uint64_t>(plan.m) * plan.b;
        }

        if (trace_) {
            TraceEvent ev;
            ev.time = clock_;
            ev.kind = TraceKind::tx_start;
            ev.queued = buffer_.queued_count();
            ev.in_flight = buffer_.in_flight_count();
            ev.m = plan.m;
            ev.b = plan.b;
            ev.stations = plan.stations;
            trace_(ev);
        }
    }

    // The ideal scheduler drains the oldest m*b packets no matter where they
    // are headed; stream labels are cosmetic.
    TransmissionPlan materialize_ideal(const IdealPlanShape& shape) const {
        TransmissionPlan plan;
        plan.m = shape.m;
        plan.b = shape.b;
        plan.stations.reserve(shape.m);
        plan.per_stream.assign(shape.m, {});
        auto it = buffer_.queued().begin();
        for (int s = 0; s < shape.m; ++s) {
            plan.stations.push_back(it->destination);
            auto& stream = plan.per_stream[s];
            stream.reserve(shape.b);
            for (int k = 0; k < shape.b; ++k, ++it)
                stream.push_back(it->id);
        }
        return plan;
    }

    void process_completion() {
        advance_clock(cycle_end_);
        std::vector<PacketId> acked;
        acked.reserve(buffer_.in_flight_count());
        for (const Packet& p : buffer_.in_flight())
            acked.push_back(p.id); // error-free channel: everything is acked
        std::vector<Packet> delivered = buffer_.complete_transmission(acked);
        for (const Packet& p : delivered) {
            if (!counted(p.id))
                continue;
            BatchAcc& acc = batches_[batch_of(p.id)];
            ++acc.delivered;
            acc.delay_sum += clock_ - p.arrival_time;
        }
        cycle_active_ = false;

        if (trace_) {
            TraceEvent ev;
            ev.time = clock_;
            ev.kind = TraceKind::tx_end;
            ev.queued = buffer_.queued_count();
            ev.in_flight = buffer_.in_flight_count();
            ev.m = cycle_m_;
            ev.b = cycle_b_;
            trace_(ev);
        }

        if (buffer_.queued_count() > 0)
            start_cycle();
    }

    RunMetrics finalize() const {
        RunMetrics r;
        std::int64_t delay_sum = 0;
        std::uint64_t m_sum = 0, b_sum = 0, l_sum = 0;
        for (const BatchAcc& acc : batches_) {
            r.offered += acc.offered;
            r.blocked += acc.blocked;
            r.delivered += acc.delivered;
            r.cycles += acc.cycles;
            delay_sum += acc.delay_sum;
            m_sum += acc.m_sum;
            b_sum += acc.b_sum;
            l_sum += acc.l_sum;
        }
        r.accepted = r.offered - r.blocked;
        if (r.accepted < r.delivered)
            throw std::logic_error("packet accounting: delivered exceeds accepted");
        r.residual = r.accepted - r.delivered;

        const Nanos span = clock_ - warm_start_time_;
        r.sim_time_s = nanos_to_seconds(span);
        if (r.offered > 0)
            r.blocking_probability =
                static_cast<double>(r.blocked) / static_cast<double>(r.offered);
        if (r.delivered > 0)
            r.mean_delay_s = nanos_to_seconds(delay_sum) / static_cast<double>(r.delivered);
        if (span > 0) {
            r.throughput_bps = static_cast<double>(r.delivered)
                               * static_cast<double>(cfg_.phy.packet_payload_bits)
                               / nanos_to_seconds(span);
            r.mean_occupancy =
                static_cast<double>(occupancy_integral_ - warm_occupancy_integral_)
                / static_cast<double>(span);
        }
        if (r.cycles > 0) {
            r.mean_streams = static_cast<double>(m_sum) / static_cast<double>(r.cycles);
            r.mean_ampdu = static_cast<double>(b_sum) / static_cast<double>(r.cycles);
            r.mean_aggregated = static_cast<double>(l_sum) / static_cast<double>(r.cycles);
        }

        r.blocking_probability_ci = ci_over_batches([](const BatchAcc& a) {
            return a.offered > 0
                       ? std::optional<double>(static_cast<double>(a.blocked)
                                               / static_cast<double>(a.offered))
                       : std::nullopt;
        });
        r.mean_delay_s_ci = ci_over_batches([](const BatchAcc& a) {
            return a.delivered > 0
                       ? std::optional<double>(nanos_to_seconds(a.delay_sum)
                                               / static_cast<double>(a.delivered))
                       : std::nullopt;
        });
        r.throughput_bps_ci = throughput_ci();
        r.mean_streams_ci = ci_over_batches([](const BatchAcc& a) {
            return a.cycles > 0
                       ? std::optional<double>(static_cast<double>(a.m_sum)
                                               / static_cast<double>(a.cycles))
                       : std::nullopt;
        });
        r.mean_ampdu_ci = ci_over_batches([](const BatchAcc& a) {
            return a.cycles > 0
                       ? std::optional<double>(static_cast<double>(a.b_sum)
                                               / static_cast<double>(a.cycles))
                       : std::nullopt;
        });
        r.mean_aggregated_ci = ci_over_batches([](const BatchAcc& a) {
            return a.cycles > 0
                       ? std::optional<double>(static_cast<double>(a.l_sum)
                                               / static_cast<double>(a.cycles))
                       : std::nullopt;
        });
        return r;
    }

    template <typename F>
    double ci_over_batches(F&& value_of) const {
        std::vector<double> means;
        means.reserve(batches_.size());
        for (const BatchAcc& acc : batches_)
            if (auto v = value_of(acc))
                means.push_back(*v);
        if (means.size() < 2)
            return std::numeric_limits<double>::quiet_NaN();
        return batch_half_width(means);
    }

    double throughput_ci() const {
        // Batch spans run from each batch's first counted arrival to the
        // next batch's (the clock for the last one).
        std::vector<double> rates;
        for (std::size_t i = 0; i < batches_.size(); ++i) {
            if (batches_[i].start_time < 0)
                continue;
            Nanos end = clock_;
            for (std::size_t j = i + 1; j < batches_.size(); ++j) {
                if (batches_[j].start_time >= 0) {
                    end = batches_[j].start_time;
                    break;
                }
            }
            Nanos span = end - batches_[i].start_time;
            if (span <= 0)
                continue;
            rates.push_back(static_cast<double>(batches_[i].delivered)
                            * static_cast<double>(cfg_.phy.packet_payload_bits)
                            / nanos_to_seconds(span));
        }
        if (rates.size() < 2)
            return std::numeric_limits<double>::quiet_NaN();
        return batch_half_width(rates);
    }

    const SimConfig& cfg_;
    const TraceSink& trace_;
    SharedBuffer buffer_;
    SplitRng rng_;

    std::uint64_t warmup_ = 0;
    bool scripted_ = false;
    std::uint64_t horizon_ = 0;
    std::uint64_t counted_span_ = 0;
    double rate_per_ns_ = 0.0;
    Nanos mean_backoff_ = 0;
    std::uint32_t backoff_window_ = 32;

    Nanos clock_ = 0;
    PacketId next_id_ = 0;
    std::uint64_t offered_ = 0;
    std::size_t script_index_ = 0;
    bool arrival_pending_ = false;
    Nanos next_arrival_time_ = 0;
    StationId next_destination_ = 0;

    bool cycle_active_ = false;
    Nanos cycle_end_ = 0;
    int cycle_m_ = 0;
    int cycle_b_ = 0;

    std::int64_t occupancy_integral_ = 0;
    std::int64_t warm_occupancy_integral_ = 0;
    Nanos warm_start_time_ = 0;
    bool warm_started_ = false;

    std::vector<BatchAcc> batches_;
};

} // namespace

Engine::Engine(SimConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
}

RunMetrics Engine::run() {
    RunState state(cfg_, trace_);
    return state.run();
}

} // namespace muagg
