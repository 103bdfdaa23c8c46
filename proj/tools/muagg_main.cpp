// Command-line front end for the muagg simulator. Talks to the core only
// through the public C API in muagg/muagg.h.

#include <muagg/muagg.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

namespace {

using json = nlohmann::json;

struct ConfigDeleter {
    void operator()(muagg_config* c) const { muagg_config_free(c); }
};
struct ResultDeleter {
    void operator()(muagg_result* r) const { muagg_result_free(r); }
};
struct SweepDeleter {
    void operator()(muagg_sweep* s) const { muagg_sweep_free(s); }
};

using ConfigPtr = std::unique_ptr<muagg_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<muagg_result, ResultDeleter>;
using SweepPtr = std::unique_ptr<muagg_sweep, SweepDeleter>;

struct ConfigOpts {
    std::string preset;
    std::string config_path;
    std::vector<std::string> sets;
    std::string seed;
};

void add_config_opts(CLI::App* cmd, ConfigOpts& opts) {
    cmd->add_option("--preset", opts.preset, "Start from a named preset");
    cmd->add_option("--config", opts.config_path, "Configuration file (key = value)");
    cmd->add_option("--set", opts.sets, "Override key=value (repeatable)");
    cmd->add_option("--seed", opts.seed, "RNG seed");
}

// Builds the run configuration: preset, then file, then --set overrides,
// then --seed. Exits with code 2 when the config file cannot be read and 1
// on any other error.
ConfigPtr build_config(const ConfigOpts& opts) {
    ConfigPtr cfg;
    if (!opts.preset.empty()) {
        cfg.reset(muagg_config_preset(opts.preset.c_str()));
        if (!cfg) {
            std::cerr << "error: " << muagg_last_error() << "\n";
            std::exit(1);
        }
    } else {
        cfg.reset(muagg_config_new());
    }
    if (!opts.config_path.empty()) {
        muagg_status st = muagg_config_load(cfg.get(), opts.config_path.c_str());
        if (st != MUAGG_OK) {
            std::cerr << "error: " << muagg_last_error() << "\n";
            std::exit(st == MUAGG_ERR_IO ? 2 : 1);
        }
    }
    for (const std::string& assignment : opts.sets) {
        auto eq = assignment.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --set expects key=value, got '" << assignment << "'\n";
            std::exit(1);
        }
        if (muagg_config_set(cfg.get(), assignment.substr(0, eq).c_str(),
                             assignment.substr(eq + 1).c_str()) != MUAGG_OK) {
            std::cerr << "error: " << muagg_last_error() << "\n";
            std::exit(1);
        }
    }
    if (!opts.seed.empty()
        && muagg_config_set(cfg.get(), "seed", opts.seed.c_str()) != MUAGG_OK) {
        std::cerr << "error: " << muagg_last_error() << "\n";
        std::exit(1);
    }
    return cfg;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        std::exit(1);
    }
    out << text;
}

int cmd_run(const ConfigOpts& opts, const std::string& output) {
    ConfigPtr cfg = build_config(opts);
    muagg_result* raw = nullptr;
    if (muagg_run(cfg.get(), &raw) != MUAGG_OK) {
        std::cerr << "error: " << muagg_last_error() << "\n";
        return 1;
    }
    ResultPtr res(raw);
    write_text(output, std::string(muagg_result_json(res.get())) + "\n");
    return 0;
}

int cmd_trace(const ConfigOpts& opts, const std::string& output,
              const std::string& json_path) {
    ConfigPtr cfg = build_config(opts);
    std::string path = (output.empty() || output == "-") ? "/dev/stdout" : output;
    muagg_result* raw = nullptr;
    if (muagg_run_traced(cfg.get(), path.c_str(), &raw) != MUAGG_OK) {
        std::cerr << "error: " << muagg_last_error() << "\n";
        return 1;
    }
    ResultPtr res(raw);
    if (!json_path.empty())
        write_text(json_path, std::string(muagg_result_json(res.get())) + "\n");
    return 0;
}

int print_smax_table(const ConfigOpts& opts) {
    std::printf("%-10s", "S_max Mbps");
    const int bs[] = {1, 2, 4, 8, 16, 32, 64};
    const int ms[] = {1, 2, 4, 8};
    for (int b : bs)
        std::printf("%12s", ("B=" + std::to_string(b)).c_str());
    std::printf("\n");
    for (int m : ms) {
        std::printf("M=%-8d", m);
        for (int b : bs) {
            ConfigPtr cfg = build_config(opts);
            muagg_config_set(cfg.get(), "m_antennas", std::to_string(m).c_str());
            muagg_config_set(cfg.get(), "max_ampdu", std::to_string(b).c_str());
            double smax = 0.0;
            if (muagg_smax(cfg.get(), &smax) != MUAGG_OK) {
                std::cerr << "error: " << muagg_last_error() << "\n";
                return 1;
            }
            std::printf("%12.2f", smax / 1e6);
        }
        std::printf("\n");
    }
    return 0;
}

int cmd_timing(ConfigOpts opts, int m_antennas, int b_packets) {
    if (opts.preset == "smax-table") {
        opts.preset.clear();
        return print_smax_table(opts);
    }
    if (m_antennas < 1 || b_packets < 1) {
        std::cerr << "error: antennas and ampdu size must be >= 1\n";
        return 1;
    }
    ConfigPtr cfg = build_config(opts);
    muagg_config_set(cfg.get(), "m_antennas", std::to_string(m_antennas).c_str());
    muagg_config_set(cfg.get(), "max_ampdu", std::to_string(b_packets).c_str());

    muagg_cycle_breakdown c{};
    if (muagg_timing(cfg.get(), m_antennas, b_packets, &c) != MUAGG_OK) {
        std::cerr << "error: " << muagg_last_error() << "\n";
        return 1;
    }
    double smax = 0.0;
    if (muagg_smax(cfg.get(), &smax) != MUAGG_OK) {
        std::cerr << "error: " << muagg_last_error() << "\n";
        return 1;
    }

    std::printf("cycle with M=%d antennas, m=%d streams, b=%d packets/stream\n",
                m_antennas, m_antennas, b_packets);
    std::printf("%-12s %12s\n", "component", "duration_us");
    std::printf("%-12s %12.1f\n", "backoff", c.backoff_us);
    std::printf("%-12s %12.1f\n", "difs", c.difs_us);
    std::printf("%-12s %12.1f\n", "rts", c.rts_us);
    std::printf("%-12s %12.1f\n", "cts_phase", c.cts_phase_us);
    std::printf("%-12s %12.1f\n", "ampdu", c.ampdu_us);
    std::printf("%-12s %12.1f\n", "ba_phase", c.ba_phase_us);
    std::printf("%-12s %12.1f\n", "total", c.total_us);
    std::printf("S_max(%d,%d) %10.2f Mbps\n", m_antennas, b_packets, smax / 1e6);
    return 0;
}

const char* const kCsvColumns[] = {
    "axis", "axis_value", "replication", "seed", "scheduler", "m_antennas",
    "n_stations", "buffer_capacity", "max_ampdu", "offered_load_mbps",
    "arrival_rate_pps", "blocking_probability", "blocking_probability_ci",
    "mean_delay_s", "mean_delay_s_ci", "throughput_bps", "throughput_bps_ci",
    "mean_streams", "mean_streams_ci", "mean_ampdu", "mean_ampdu_ci",
    "mean_aggregated", "mean_aggregated_ci", "offered", "accepted", "blocked",
    "delivered", "residual", "cycles", "sim_time_s"};

std::string csv_number(const json& v) {
    return v.is_null() ? "nan" : v.dump();
}

struct SweepJob {
    std::size_t point;
    int replication;
};

int cmd_sweep(const std::string& spec_path, const std::string& preset,
              const std::string& output, int parallel, bool timings) {
    SweepPtr sweep;
    if (!preset.empty())
        sweep.reset(muagg_sweep_preset(preset.c_str()));
    else if (!spec_path.empty())
        sweep.reset(muagg_sweep_load(spec_path.c_str()));
    else {
        std::cerr << "error: sweep needs --spec or --preset\n";
        return 1;
    }
    if (!sweep) {
        std::cerr << "error: " << muagg_last_error() << "\n";
        return 2;
    }
    if (output.empty()) {
        std::cerr << "error: sweep needs --output\n";
        return 1;
    }

    const std::string axis = muagg_sweep_axis(sweep.get());
    const std::size_t points = muagg_sweep_point_count(sweep.get());
    const int reps = muagg_sweep_replications(sweep.get());

    std::vector<SweepJob> jobs;
    for (std::size_t p = 0; p < points; ++p)
        for (int r = 0; r < reps; ++r)
            jobs.push_back({p, r});

    std::vector<std::string> rows(jobs.size());
    std::vector<std::string> errors(jobs.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size())
                return;
            const SweepJob& job = jobs[i];
            ConfigPtr cfg(muagg_sweep_point_config(sweep.get(), job.point,
                                                   job.replication));
            if (!cfg) {
                errors[i] = muagg_last_error();
                continue;
            }
            auto started = std::chrono::steady_clock::now();
            muagg_result* raw = nullptr;
            if (muagg_run(cfg.get(), &raw) != MUAGG_OK) {
                errors[i] = muagg_last_error();
                continue;
            }
            ResultPtr res(raw);
            double runtime_ms = std::chrono::duration<double, std::milli>(
                                    std::chrono::steady_clock::now() - started)
                                    .count();

            json report = json::parse(muagg_result_json(res.get()));
            const json& c = report["config"];
            const json& m = report["metrics"];
            std::string row;
            row += axis;
            row += ',' + json(muagg_sweep_point_value(sweep.get(), job.point)).dump();
            row += ',' + std::to_string(job.replication);
            row += ',' + report["seed"].dump();
            row += ',' + c["scheduler"].get<std::string>();
            for (const char* key : {"m_antennas", "n_stations", "buffer_capacity",
                                    "max_ampdu"})
                row += ',' + c[key].get<std::string>();
            row += ',' + csv_number(c["offered_load_mbps"]);
            row += ',' + csv_number(c["arrival_rate_pps"]);
            for (const char* key :
                 {"blocking_probability", "blocking_probability_ci", "mean_delay_s",
                  "mean_delay_s_ci", "throughput_bps", "throughput_bps_ci",
                  "mean_streams", "mean_streams_ci", "mean_ampdu", "mean_ampdu_ci",
                  "mean_aggregated", "mean_aggregated_ci", "offered", "accepted",
                  "blocked", "delivered", "residual", "cycles", "sim_time_s"})
                row += ',' + csv_number(m[key]);
            if (timings)
                row += ',' + json(runtime_ms).dump();
            rows[i] = std::move(row);
        }
    };

    int workers = std::max(1, parallel);
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w)
        pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool)
        t.join();

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!errors[i].empty()) {
            std::cerr << "error: sweep point " << axis << "="
                      << muagg_sweep_point_value(sweep.get(), jobs[i].point)
                      << " replication " << jobs[i].replication << ": "
                      << errors[i] << "\n";
            return 1;
        }
    }

    std::ofstream out(output);
    if (!out) {
        std::cerr << "error: cannot write " << output << "\n";
        return 1;
    }
    for (std::size_t i = 0; i < std::size(kCsvColumns); ++i)
        out << (i ? "," : "") << kCsvColumns[i];
    if (timings)
        out << ",runtime_ms";
    out << "\n";
    for (const std::string& row : rows)
        out << row << "\n";
    out.close();

    std::ofstream sidecar(output + ".spec.json");
    if (!sidecar) {
        std::cerr << "error: cannot write " << output << ".spec.json\n";
        return 1;
    }
    sidecar << muagg_sweep_json(sweep.get()) << "\n";
    return 0;
}

int default_parallel() {
    if (const char* env = std::getenv("MUAGG_PARALLEL")) {
        int v = std::atoi(env);
        if (v >= 1)
            return v;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MU-MIMO downlink aggregation simulator"};
    app.require_subcommand(1);

    ConfigOpts run_opts;
    std::string run_output = "-";
    CLI::App* run = app.add_subcommand("run", "Run one simulation, print JSON metrics");
    add_config_opts(run, run_opts);
    run->add_option("--output,-o", run_output, "Output file (default stdout)");

    std::string sweep_spec, sweep_preset, sweep_output;
    int sweep_parallel = default_parallel();
    bool sweep_timings = false;
    CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep, write CSV");
    sweep->add_option("--spec", sweep_spec, "Sweep spec file");
    sweep->add_option("--preset", sweep_preset, "Named sweep preset");
    sweep->add_option("--output,-o", sweep_output, "CSV output path");
    sweep->add_option("--parallel", sweep_parallel,
                      "Worker count (default $MUAGG_PARALLEL or 1)");
    sweep->add_flag("--timings", sweep_timings, "Append a runtime_ms column");

    ConfigOpts timing_opts;
    int timing_m = 4, timing_b = 64;
    CLI::App* timing = app.add_subcommand("timing", "Print cycle breakdown and S_max");
    add_config_opts(timing, timing_opts);
    timing->add_option("-M,--antennas", timing_m, "Antennas / spatial streams");
    timing->add_option("-B,--ampdu", timing_b, "Packets per A-MPDU");

    ConfigOpts trace_opts;
    std::string trace_output = "-", trace_json;
    CLI::App* trace = app.add_subcommand("trace", "Run and emit the event trace");
    add_config_opts(trace, trace_opts);
    trace->add_option("--output,-o", trace_output, "Trace file (default stdout)");
    trace->add_option("--json", trace_json, "Also write JSON metrics to this file");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed())
        return cmd_run(run_opts, run_output);
    if (sweep->parsed())
        return cmd_sweep(sweep_spec, sweep_preset, sweep_output, sweep_parallel,
                         sweep_timings);
    if (timing->parsed())
        return cmd_timing(timing_opts, timing_m, timing_b);
    if (trace->parsed())
        return cmd_trace(trace_opts, trace_output, trace_json);
    return 1;
}
