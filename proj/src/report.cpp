#include "report.hpp"

#include <iomanip>
#include <sstream>

namespace muagg {

nlohmann::json metrics_to_json(const RunMetrics& m) {
    // NaN half-widths (too few batches) serialize as null.
    return nlohmann::json{
        {"blocking_probability", m.blocking_probability},
        {"blocking_probability_ci", m.blocking_probability_ci},
        {"mean_delay_s", m.mean_delay_s},
        {"mean_delay_s_ci", m.mean_delay_s_ci},
        {"throughput_bps", m.throughput_bps},
        {"throughput_bps_ci", m.throughput_bps_ci},
        {"mean_streams", m.mean_streams},
        {"mean_streams_ci", m.mean_streams_ci},
        {"mean_ampdu", m.mean_ampdu},
        {"mean_ampdu_ci", m.mean_ampdu_ci},
        {"mean_aggregated", m.mean_aggregated},
        {"mean_aggregated_ci", m.mean_aggregated_ci},
        {"offered", m.offered},
        {"accepted", m.accepted},
        {"blocked", m.blocked},
        {"delivered", m.delivered},
        {"residual", m.residual},
        {"cycles", m.cycles},
        {"sim_time_s", m.sim_time_s},
        {"mean_occupancy", m.mean_occupancy},
    };
}

nlohmann::json run_report_json(const SimConfig& cfg, const RunMetrics& m) {
    return nlohmann::json{
        {"config", config_to_json(cfg)},
        {"seed", cfg.seed},
        {"metrics", metrics_to_json(m)},
    };
}

std::string trace_header() {
    return "time_us\tevent\tdest\tblocked\tqueued\tin_flight\tm\tb\tstations";
}

std::string trace_line(const TraceEvent& ev) {
    std::ostringstream out;
    // Nanosecond-grained microsecond values print exactly.
    out << std::setprecision(15) << nanos_to_us(ev.time) << '\t';
    switch (ev.kind) {
    case TraceKind::arrival: out << "arrival"; break;
    case TraceKind::tx_start: out << "tx_start"; break;
    case TraceKind::tx_end: out << "tx_end"; break;
    }
    out << '\t' << ev.destination << '\t' << (ev.blocked ? 1 : 0) << '\t'
        << ev.queued << '\t' << ev.in_flight << '\t' << ev.m << '\t' << ev.b << '\t';
    for (std::size_t i = 0; i < ev.stations.size(); ++i) {
        if (i > 0)
            out << '+';
        out << ev.stations[i];
    }
    return out.str();
}

} // namespace muagg
