#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace muagg {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
    throw std::runtime_error("invalid value for " + key + ": '" + value + "'");
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size())
            bad_value(key, value);
        return v;
    } catch (const std::runtime_error&) {
        throw;
    } catch (...) {
        bad_value(key, value);
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        bad_value(key, value);
    return v;
}

struct KeyDef {
    const char* name;
    std::function<void(SimConfig&, const std::string&)> set;
    std::function<std::string(const SimConfig&)> get;
};

std::string fmt_double(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

const std::vector<KeyDef>& registry() {
    auto int_key = [](const char* name, auto member) {
        return KeyDef{
            name,
            [name, member](SimConfig& c, const std::string& v) {
                c.*member = static_cast<std::remove_reference_t<decltype(c.*member)>>(
                    parse_int(name, v));
            },
            [member](const SimConfig& c) { return std::to_string(c.*member); }};
    };
    auto dbl_key = [](const char* name, auto member) {
        return KeyDef{
            name,
            [name, member](SimConfig& c, const std::string& v) {
                c.*member = parse_double(name, v);
            },
            [member](const SimConfig& c) { return fmt_double(c.*member); }};
    };
    auto phy_ns_key = [](const char* name, auto member) {
        return KeyDef{
            name,
            [name, member](SimConfig& c, const std::string& v) {
                c.phy.*member = us_to_nanos(parse_double(name, v));
            },
            [member](const SimConfig& c) { return fmt_double(nanos_to_us(c.phy.*member)); }};
    };
    auto phy_bits_key = [](const char* name, auto member) {
        return KeyDef{
            name,
            [name, member](SimConfig& c, const std::string& v) {
                c.phy.*member = parse_int(name, v);
            },
            [member](const SimConfig& c) { return std::to_string(c.phy.*member); }};
    };

    static const std::vector<KeyDef> defs = {
        int_key("m_antennas", &SimConfig::m_antennas),
        int_key("n_stations", &SimConfig::n_stations),
        int_key("buffer_capacity", &SimConfig::buffer_capacity),
        int_key("max_ampdu", &SimConfig::max_ampdu),
        dbl_key("arrival_rate_pps", &SimConfig::arrival_rate_pps),
        dbl_key("offered_load_mbps", &SimConfig::offered_load_mbps),
        KeyDef{"scheduler",
               [](SimConfig& c, const std::string& v) {
                   if (v == "reference")
                       c.policy = Policy::reference;
                   else if (v == "ideal")
                       c.policy = Policy::ideal;
                   else
                       bad_value("scheduler", v);
               },
               [](const SimConfig& c) { return to_string(c.policy); }},
        KeyDef{"backoff_mode",
               [](SimConfig& c, const std::string& v) {
                   if (v == "sampled")
                       c.backoff_mode = BackoffMode::sampled;
                   else if (v == "fixed-mean")
                       c.backoff_mode = BackoffMode::fixed_mean;
                   else
                       bad_value("backoff_mode", v);
               },
               [](const SimConfig& c) { return to_string(c.backoff_mode); }},
        KeyDef{"seed",
               [](SimConfig& c, const std::string& v) {
                   c.seed = static_cast<std::uint64_t>(parse_int("seed", v));
               },
               [](const SimConfig& c) { return std::to_string(c.seed); }},
        KeyDef{"horizon_packets",
               [](SimConfig& c, const std::string& v) {
                   c.horizon_packets = static_cast<std::uint64_t>(parse_int("horizon_packets", v));
               },
               [](const SimConfig& c) { return std::to_string(c.horizon_packets); }},
        int_key("warmup_packets", &SimConfig::warmup_packets),
        int_key("batches", &SimConfig::batches),
        phy_ns_key("phy.symbol_time_us", &PhyMacParams::symbol_time),
        phy_ns_key("phy.preamble_base_us", &PhyMacParams::preamble_base),
        phy_ns_key("phy.sifs_us", &PhyMacParams::sifs),
        phy_ns_key("phy.difs_us", &PhyMacParams::difs),
        phy_ns_key("phy.slot_time_us", &PhyMacParams::slot_time),
        KeyDef{"phy.mean_backoff_slots",
               [](SimConfig& c, const std::string& v) {
                   c.phy.mean_backoff_slots = parse_double("phy.mean_backoff_slots", v);
               },
               [](const SimConfig& c) { return fmt_double(c.phy.mean_backoff_slots); }},
        phy_bits_key("phy.bits_per_symbol", &PhyMacParams::bits_per_symbol),
        phy_bits_key("phy.service_field_bits", &PhyMacParams::service_field_bits),
        phy_bits_key("phy.tail_bits", &PhyMacParams::tail_bits),
        phy_bits_key("phy.mpdu_delimiter_bits", &PhyMacParams::mpdu_delimiter_bits),
        phy_bits_key("phy.mac_header_bits", &PhyMacParams::mac_header_bits),
        phy_bits_key("phy.ba_bits", &PhyMacParams::ba_bits),
        phy_bits_key("phy.rts_base_bits", &PhyMacParams::rts_base_bits),
        phy_bits_key("phy.rts_per_extra_addr_bits", &PhyMacParams::rts_per_extra_addr_bits),
        phy_bits_key("phy.cts_base_bits", &PhyMacParams::cts_base_bits),
        phy_bits_key("phy.csi_bits_per_antenna", &PhyMacParams::csi_bits_per_antenna),
        phy_bits_key("phy.packet_payload_bits", &PhyMacParams::packet_payload_bits),
    };
    return defs;
}

const KeyDef* find_key(const std::string& key) {
    for (const KeyDef& def : registry())
        if (key == def.name)
            return &def;
    return nullptr;
}

} // namespace

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const KeyDef& def : registry())
        keys.emplace_back(def.name);
    return keys;
}

void set_config_value(SimConfig& cfg, const std::string& key, const std::string& value) {
    const KeyDef* def = find_key(key);
    if (!def)
        throw std::runtime_error("unknown config key: " + key);
    def->set(cfg, value);
}

std::string get_config_value(const SimConfig& cfg, const std::string& key) {
    const KeyDef* def = find_key(key);
    if (!def)
        throw std::runtime_error("unknown config key: " + key);
    return def->get(cfg);
}

namespace {

// Shared by config and sweep files: hand each key/value to sink.
void parse_kv_file(const std::string& path,
                   const std::function<void(const std::string&, const std::string&)>& sink) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno)
                                     + ": expected key = value");
        sink(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

} // namespace

void load_config_file(SimConfig& cfg, const std::string& path) {
    parse_kv_file(path, [&cfg](const std::string& k, const std::string& v) {
        set_config_value(cfg, k, v);
    });
}

void apply_override(SimConfig& cfg, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::runtime_error("override must be key=value: " + assignment);
    set_config_value(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

nlohmann::json config_to_json(const SimConfig& cfg) {
    nlohmann::json j;
    for (const std::string& key : config_keys())
        j[key] = get_config_value(cfg, key);
    // Echo the resolved load in both spellings.
    const double lambda = cfg.lambda_pps();
    j["arrival_rate_pps"] = lambda;
    j["offered_load_mbps"] =
        lambda * static_cast<double>(cfg.phy.packet_payload_bits) / 1e6;
    j["warmup_packets_resolved"] = cfg.resolved_warmup();
    j["scripted"] = !cfg.script.empty();
    return j;
}

void SweepSpec::validate() const {
    if (values.empty())
        throw std::runtime_error("sweep values must be non-empty");
    if (replications < 1)
        throw std::runtime_error("replications must be >= 1");
    if (axis != "offered_load_mbps" && axis != "n_stations" && axis != "buffer_capacity"
        && axis != "m_antennas" && axis != "alpha")
        throw std::runtime_error("unknown sweep axis: " + axis);
}

void apply_axis_value(SimConfig& cfg, const std::string& axis, double value) {
    if (axis == "offered_load_mbps") {
        cfg.offered_load_mbps = value;
    } else if (axis == "n_stations") {
        cfg.n_stations = static_cast<int>(std::llround(value));
    } else if (axis == "buffer_capacity") {
        cfg.buffer_capacity = static_cast<int>(std::llround(value));
    } else if (axis == "m_antennas") {
        cfg.m_antennas = static_cast<int>(std::llround(value));
    } else if (axis == "alpha") {
        cfg.buffer_capacity = static_cast<int>(
            std::llround(value * cfg.m_antennas * cfg.max_ampdu));
    } else {
        throw std::runtime_error("unknown sweep axis: " + axis);
    }
}

namespace {

std::vector<double> parse_values(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(parse_double(key, item));
    }
    return out;
}

std::vector<double> parse_range(const std::string& text) {
    // start:stop:step, stop inclusive
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':'))
        parts.push_back(parse_double("range", trim(item)));
    if (parts.size() != 3 || parts[2] <= 0.0)
        throw std::runtime_error("range must be start:stop:step with step > 0");
    std::vector<double> out;
    for (double v = parts[0]; v <= parts[1] + 1e-9 * parts[2]; v += parts[2])
        out.push_back(v);
    return out;
}

} // namespace

SweepSpec load_sweep_file(const std::string& path) {
    SweepSpec spec;
    parse_kv_file(path, [&spec](const std::string& k, const std::string& v) {
        if (k == "axis")
            spec.axis = v;
        else if (k == "values")
            spec.values = parse_values("values", v);
        else if (k == "range")
            spec.values = parse_range(v);
        else if (k == "replications")
            spec.replications = static_cast<int>(parse_int("replications", v));
        else
            set_config_value(spec.base, k, v);
    });
    spec.validate();
    return spec;
}

namespace {

SimConfig fig3a_base(int m, int k, double load_mbps) {
    SimConfig cfg;
    cfg.m_antennas = m;
    cfg.n_stations = 2 * m;
    cfg.buffer_capacity = k;
    cfg.max_ampdu = 64;
    cfg.offered_load_mbps = load_mbps;
    cfg.horizon_packets = 5'000'000;
    return cfg;
}

// Queue evolution fixture with M=2 antennas, B=2 and K=8: one packet served
// alone, then batches of arrivals landing inside each transmission, with the
// ninth arrival finding the buffer full.
SimConfig fig2_trace_config() {
    SimConfig cfg;
    cfg.m_antennas = 2;
    cfg.n_stations = 5; // station labels 1..4 as drawn
    cfg.buffer_capacity = 8;
    cfg.max_ampdu = 2;
    cfg.backoff_mode = BackoffMode::fixed_mean;
    cfg.batches = 2;
    auto at = [](double us, StationId dest) {
        return ScriptedArrival{us_to_nanos(us), dest};
    };
    cfg.script = {
        at(0, 1),
        at(50, 4), at(60, 4), at(70, 2), at(80, 2),
        at(500, 3), at(510, 3), at(520, 1), at(530, 2), at(540, 2),
        at(1100, 3), at(1110, 2), at(1120, 1), at(1130, 1),
    };
    return cfg;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig3a-m4",       "fig3a-m4-k500", "fig3a-m4-k1000", "fig3a-m4-k2000",
            "fig3a-m8",       "fig3a-m8-k1000", "fig3a-m8-k2000", "fig3b-3c",
            "fig2-trace"};
}

std::optional<SimConfig> preset_config(const std::string& name) {
    if (name == "fig3a-m4" || name == "fig3a-m4-k1000")
        return fig3a_base(4, 1000, 1098.0);
    if (name == "fig3a-m4-k500")
        return fig3a_base(4, 500, 930.0);
    if (name == "fig3a-m4-k2000")
        return fig3a_base(4, 2000, 1098.0);
    if (name == "fig3a-m8" || name == "fig3a-m8-k1000")
        return fig3a_base(8, 1000, 1390.0);
    if (name == "fig3a-m8-k2000")
        return fig3a_base(8, 2000, 1740.0);
    if (name == "fig3b-3c")
        return fig3a_base(4, 500, 930.0);
    if (name == "fig2-trace")
        return fig2_trace_config();
    return std::nullopt;
}

std::optional<SweepSpec> preset_sweep(const std::string& name) {
    SweepSpec spec;
    spec.replications = 3;
    if (name == "fig3a-m4") {
        spec.base = fig3a_base(4, 1000, 0.0);
        spec.axis = "offered_load_mbps";
        for (double v = 700; v <= 1200; v += 50)
            spec.values.push_back(v);
        return spec;
    }
    if (name == "fig3a-m8") {
        spec.base = fig3a_base(8, 1000, 0.0);
        spec.axis = "offered_load_mbps";
        for (double v = 1100; v <= 1800; v += 50)
            spec.values.push_back(v);
        return spec;
    }
    if (name == "fig3b-3c") {
        spec.base = fig3a_base(4, 500, 930.0);
        spec.axis = "n_stations";
        spec.values = {4, 5, 6, 8, 10, 12, 16, 20, 24, 28, 32};
        return spec;
    }
    return std::nullopt;
}

} // namespace muagg
