#include "muagg/muagg.h"

#include "config.hpp"
#include "report.hpp"
#include "sim_engine.hpp"

#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <string>

struct muagg_config_s {
    muagg::SimConfig cfg;
    std::string json_cache;
};

struct muagg_result_s {
    muagg::SimConfig cfg;
    muagg::RunMetrics metrics;
    std::string json_cache;
};

struct muagg_sweep_s {
    muagg::SweepSpec spec;
    std::string json_cache;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Runs f, translating exceptions into status codes.
template <typename F>
muagg_status guarded(F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return MUAGG_ERR_INVALID_ARGUMENT;
    } catch (const std::logic_error& e) {
        set_error(e.what());
        return MUAGG_ERR_INTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return MUAGG_ERR_INVALID_ARGUMENT;
    } catch (...) {
        set_error("unknown error");
        return MUAGG_ERR_INTERNAL;
    }
}

muagg_status run_impl(const muagg_config* cfg, const char* trace_path,
                      muagg_result** out) {
    return guarded([&]() -> muagg_status {
        if (!cfg || !out) {
            set_error("null argument");
            return MUAGG_ERR_INVALID_ARGUMENT;
        }
        *out = nullptr;
        muagg::Engine engine(cfg->cfg);
        std::ofstream trace_out;
        if (trace_path) {
            trace_out.open(trace_path);
            if (!trace_out) {
                set_error(std::string("cannot open trace file: ") + trace_path);
                return MUAGG_ERR_IO;
            }
            trace_out << muagg::trace_header() << '\n';
            engine.set_trace([&trace_out](const muagg::TraceEvent& ev) {
                trace_out << muagg::trace_line(ev) << '\n';
            });
        }
        auto res = new muagg_result_s{cfg->cfg, engine.run(), {}};
        *out = res;
        return MUAGG_OK;
    });
}

} // namespace

extern "C" {

const char* muagg_version(void) { return "1.0.0"; }

const char* muagg_last_error(void) { return g_last_error.c_str(); }

muagg_config* muagg_config_new(void) {
    return new (std::nothrow) muagg_config_s{};
}

muagg_config* muagg_config_preset(const char* name) {
    if (!name)
        return nullptr;
    auto cfg = muagg::preset_config(name);
    if (!cfg) {
        set_error(std::string("unknown preset: ") + name);
        return nullptr;
    }
    return new (std::nothrow) muagg_config_s{std::move(*cfg), {}};
}

muagg_config* muagg_config_clone(const muagg_config* cfg) {
    if (!cfg)
        return nullptr;
    return new (std::nothrow) muagg_config_s{cfg->cfg, {}};
}

void muagg_config_free(muagg_config* cfg) { delete cfg; }

muagg_status muagg_config_load(muagg_config* cfg, const char* path) {
    return guarded([&]() -> muagg_status {
        if (!cfg || !path) {
            set_error("null argument");
            return MUAGG_ERR_INVALID_ARGUMENT;
        }
        try {
            muagg::load_config_file(cfg->cfg, path);
        } catch (const std::runtime_error& e) {
            set_error(e.what());
            return std::string(e.what()).starts_with("cannot open")
                       ? MUAGG_ERR_IO
                       : MUAGG_ERR_INVALID_ARGUMENT;
        }
        return MUAGG_OK;
    });
}

muagg_status muagg_config_set(muagg_config* cfg, const char* key, const char* value) {
    return guarded([&]() -> muagg_status {
        if (!cfg || !key || !value) {
            set_error("null argument");
            return MUAGG_ERR_INVALID_ARGUMENT;
        }
        try {
            muagg::set_config_value(cfg->cfg, key, value);
        } catch (const std::runtime_error& e) {
            set_error(e.what());
            return std::string(e.what()).starts_with("unknown config key")
                       ? MUAGG_ERR_UNKNOWN_NAME
                       : MUAGG_ERR_INVALID_ARGUMENT;
        }
        return MUAGG_OK;
    });
}

muagg_status muagg_config_get(const muagg_config* cfg, const char* key,
                              char* buf, size_t bufsize) {
    return guarded([&]() -> muagg_status {
        if (!cfg || !key || !buf || bufsize == 0) {
            set_error("null argument");
            return MUAGG_ERR_INVALID_ARGUMENT;
        }
        std::string value;
        try {
            value = muagg::get_config_value(cfg->cfg, key);
        } catch (const std::runtime_error& e) {
            set_error(e.what());
            return MUAGG_ERR_UNKNOWN_NAME;
        }
        if (value.size() + 1 > bufsize) {
            set_error("buffer too small");
            return MUAGG_ERR_INVALID_ARGUMENT;
        }
        std::memcpy(buf, value.c_str(), value.size() + 1);
        return MUAGG_OK;
    });
}

const char* muagg_config_json(muagg_config* cfg) {
    if (!cfg)
        return nullptr;
    cfg->json_cache = muagg::config_to_json(cfg->cfg).dump(2);
    return cfg->json_cache.c_str();
}

muagg_status muagg_config_script_arrival(muagg_config* cfg, double time_us,
                                         unsigned destination) {
    return guarded([&]() -> muagg_status {
        if (!cfg) {
            set_error("null argument");
            return MUAGG_ERR_INVALID_ARGUMENT;
        }
        if (time_us < 0) {
            set_error("script time must be non-negative");
            return MUAGG_ERR_INVALID_ARGUMENT;
        }
        cfg->cfg.script.push_back(
            {muagg::us_to_nanos(time_us), static_cast<muagg::StationId>(destination)});
        return MUAGG_OK;
    });
}

muagg_status muagg_run(const muagg_config* cfg, muagg_result** out) {
    return run_impl(cfg, nullptr, out);
}

muagg_status muagg_run_traced(const muagg_config* cfg, const char* trace_path,
                              muagg_result** out) {
    if (!trace_path) {
        set_error("null trace path");
        return MUAGG_ERR_INVALID_ARGUMENT;
    }
    return run_impl(cfg, trace_path, out);
}

muagg_status muagg_result_metric(const muagg_result* res, const char* name,
                                 double* out) {
    return guarded([&]() -> muagg_status {
        if (!res || !name || !out) {
            set_error("null argument");
            return MUAGG_ERR_INVALID_ARGUMENT;
        }
        nlohmann::json j = muagg::metrics_to_json(res->metrics);
        auto it = j.find(name);
        if (it == j.end()) {
            set_error(std::string("unknown metric: ") + name);
            return MUAGG_ERR_UNKNOWN_NAME;
        }
        *out = it->is_null() ? std::numeric_limits<double>::quiet_NaN()
                             : it->get<double>();
        return MUAGG_OK;
    });
}

const char* muagg_result_json(const muagg_result* res) {
    if (!res)
        return nullptr;
    auto* mutable_res = const_cast<muagg_result_s*>(res);
    mutable_res->json_cache = muagg::run_report_json(res->cfg, res->metrics).dump(2);
    return mutable_res->json_cache.c_str();
}

void muagg_result_free(muagg_result* res) { delete res; }

muagg_sweep* muagg_sweep_load(const char* path) {
    if (!path) {
        set_error("null path");
        return nullptr;
    }
    try {
        return new muagg_sweep_s{muagg::load_sweep_file(path), {}};
    } catch (const std::exception& e) {
        set_error(e.what());
        return nullptr;
    }
}

muagg_sweep* muagg_sweep_preset(const char* name) {
    if (!name) {
        set_error("null name");
        return nullptr;
    }
    auto spec = muagg::preset_sweep(name);
    if (!spec) {
        set_error(std::string("unknown sweep preset: ") + name);
        return nullptr;
    }
    return new (std::nothrow) muagg_sweep_s{std::move(*spec), {}};
}

void muagg_sweep_free(muagg_sweep* sweep) { delete sweep; }

const char* muagg_sweep_axis(const muagg_sweep* sweep) {
    return sweep ? sweep->spec.axis.c_str() : nullptr;
}

size_t muagg_sweep_point_count(const muagg_sweep* sweep) {
    return sweep ? sweep->spec.values.size() : 0;
}

double muagg_sweep_point_value(const muagg_sweep* sweep, size_t i) {
    if (!sweep || i >= sweep->spec.values.size())
        return 0.0;
    return sweep->spec.values[i];
}

int muagg_sweep_replications(const muagg_sweep* sweep) {
    return sweep ? sweep->spec.replications : 0;
}

const char* muagg_sweep_json(muagg_sweep* sweep) {
    if (!sweep)
        return nullptr;
    nlohmann::json j{
        {"axis", sweep->spec.axis},
        {"values", sweep->spec.values},
        {"replications", sweep->spec.replications},
        {"base", muagg::config_to_json(sweep->spec.base)},
    };
    sweep->json_cache = j.dump(2);
    return sweep->json_cache.c_str();
}

muagg_config* muagg_sweep_point_config(const muagg_sweep* sweep, size_t i,
                                       int replication) {
    if (!sweep || i >= sweep->spec.values.size() || replication < 0
        || replication >= sweep->spec.replications) {
        set_error("sweep point out of range");
        return nullptr;
    }
    try {
        muagg::SimConfig cfg = sweep->spec.base;
        muagg::apply_axis_value(cfg, sweep->spec.axis, sweep->spec.values[i]);
        cfg.seed = sweep->spec.base.seed + static_cast<std::uint64_t>(replication);
        return new muagg_config_s{std::move(cfg), {}};
    } catch (const std::exception& e) {
        set_error(e.what());
        return nullptr;
    }
}

muagg_status muagg_timing(const muagg_config* cfg, int m, int b,
                          muagg_cycle_breakdown* out) {
    return guarded([&]() -> muagg_status {
        if (!cfg || !out) {
            set_error("null argument");
            return MUAGG_ERR_INVALID_ARGUMENT;
        }
        muagg::CycleBreakdown c =
            muagg::cycle_duration(cfg->cfg.phy, m, b, cfg->cfg.m_antennas);
        out->backoff_us = muagg::nanos_to_us(c.backoff);
        out->difs_us = muagg::nanos_to_us(c.difs);
        out->rts_us = muagg::nanos_to_us(c.rts);
        out->cts_phase_us = muagg::nanos_to_us(c.cts_phase);
        out->ampdu_us = muagg::nanos_to_us(c.ampdu);
        out->ba_phase_us = muagg::nanos_to_us(c.ba_phase);
        out->total_us = muagg::nanos_to_us(c.total);
        return MUAGG_OK;
    });
}

muagg_status muagg_smax(const muagg_config* cfg, double* out_bps) {
    return guarded([&]() -> muagg_status {
        if (!cfg || !out_bps) {
            set_error("null argument");
            return MUAGG_ERR_INVALID_ARGUMENT;
        }
        *out_bps = muagg::s_max_bps(cfg->cfg.phy, cfg->cfg.m_antennas,
                                    cfg->cfg.max_ampdu);
        return MUAGG_OK;
    });
}

} // extern "C"
