#pragma once

#include "config.hpp"
#include "metrics.hpp"
#include "sim_engine.hpp"

#include <json.hpp>

#include <string>

namespace muagg {

nlohmann::json metrics_to_json(const RunMetrics& m);

// Full run report: config echo, seed, metrics.
nlohmann::json run_report_json(const SimConfig& cfg, const RunMetrics& m);

// Tab-separated event trace (one line per event, no trailing newline).
std::string trace_header();
std::string trace_line(const TraceEvent& ev);

} // namespace muagg
