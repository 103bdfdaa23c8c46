#include "phy_timing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace muagg {

void PhyMacParams::validate() const {
    auto positive = [](Nanos v, const char* name) {
        if (v <= 0)
            throw std::invalid_argument(std::string(name) + " must be positive");
    };
    positive(symbol_time, "symbol_time");
    positive(preamble_base, "preamble_base");
    positive(sifs, "sifs");
    positive(difs, "difs");
    positive(slot_time, "slot_time");
    if (mean_backoff_slots < 0.0)
        throw std::invalid_argument("mean_backoff_slots must be non-negative");
    if (bits_per_symbol <= 0)
        throw std::invalid_argument("bits_per_symbol must be positive");
    for (auto [v, name] : {std::pair<std::int64_t, const char*>{service_field_bits, "service_field_bits"},
                           {tail_bits, "tail_bits"},
                           {mpdu_delimiter_bits, "mpdu_delimiter_bits"},
                           {mac_header_bits, "mac_header_bits"},
                           {ba_bits, "ba_bits"},
                           {rts_base_bits, "rts_base_bits"},
                           {rts_per_extra_addr_bits, "rts_per_extra_addr_bits"},
                           {cts_base_bits, "cts_base_bits"},
                           {csi_bits_per_antenna, "csi_bits_per_antenna"},
                           {packet_payload_bits, "packet_payload_bits"}}) {
        if (v < 0)
            throw std::invalid_argument(std::string(name) + " must be non-negative");
    }
}

Nanos preamble_duration(const PhyMacParams& p, int num_ltf) {
    if (num_ltf < 1)
        throw std::invalid_argument("preamble needs at least one LTF");
    return p.preamble_base + p.symbol_time * num_ltf;
}

std::int64_t symbols_for_bits(const PhyMacParams& p, std::int64_t payload_bits) {
    if (payload_bits < 0)
        throw std::invalid_argument("payload_bits must be non-negative");
    return (payload_bits + p.bits_per_symbol - 1) / p.bits_per_symbol;
}

namespace {

Nanos framed_duration(const PhyMacParams& p, int num_ltf, std::int64_t body_bits) {
    std::int64_t bits = p.service_field_bits + body_bits + p.tail_bits;
    return preamble_duration(p, num_ltf) + symbols_for_bits(p, bits) * p.symbol_time;
}

} // namespace

Nanos rts_duration(const PhyMacParams& p, int m_antennas) {
    if (m_antennas < 1)
        throw std::invalid_argument("rts_duration: m_antennas must be >= 1");
    std::int64_t body = p.rts_base_bits + p.rts_per_extra_addr_bits * (m_antennas - 1);
    return framed_duration(p, m_antennas, body);
}

Nanos cts_duration(const PhyMacParams& p, int m_antennas) {
    if (m_antennas < 1)
        throw std::invalid_argument("cts_duration: m_antennas must be >= 1");
    std::int64_t body = p.cts_base_bits + p.csi_bits_per_antenna * m_antennas;
    return framed_duration(p, 1, body);
}

Nanos ampdu_duration(const PhyMacParams& p, int b, int m_antennas) {
    if (b < 1)
        throw std::invalid_argument("ampdu_duration: b must be >= 1");
    if (m_antennas < 1)
        throw std::invalid_argument("ampdu_duration: m_antennas must be >= 1");
    std::int64_t per_packet = p.mac_header_bits + p.packet_payload_bits;
    if (b > 1)
        per_packet += p.mpdu_delimiter_bits;
    return framed_duration(p, m_antennas, static_cast<std::int64_t>(b) * per_packet);
}

Nanos ba_duration(const PhyMacParams& p) {
    return framed_duration(p, 1, p.ba_bits);
}

Nanos mean_backoff_duration(const PhyMacParams& p) {
    return static_cast<Nanos>(std::llround(p.mean_backoff_slots
                                           * static_cast<double>(p.slot_time)));
}

CycleBreakdown cycle_duration_with_backoff(const PhyMacParams& p, int m, int b,
                                           int m_antennas, Nanos backoff) {
    if (m < 1 || m > m_antennas)
        throw std::invalid_argument("cycle_duration: m out of [1, m_antennas]");
    CycleBreakdown c;
    c.backoff = backoff;
    c.difs = p.difs;
    c.rts = rts_duration(p, m_antennas);
    c.cts_phase = static_cast<Nanos>(m) * (p.sifs + cts_duration(p, m_antennas));
    c.ampdu = ampdu_duration(p, b, m_antennas);
    c.ba_phase = static_cast<Nanos>(m) * (p.sifs + ba_duration(p));
    c.total = c.backoff + c.difs + c.rts + c.cts_phase + c.ampdu + c.ba_phase;
    return c;
}

CycleBreakdown cycle_duration(const PhyMacParams& p, int m, int b, int m_antennas) {
    return cycle_duration_with_backoff(p, m, b, m_antennas, mean_backoff_duration(p));
}

double s_max_bps(const PhyMacParams& p, int m_antennas, int b_max) {
    if (m_antennas < 1)
        throw std::invalid_argument("s_max: m_antennas must be >= 1");
    if (b_max < 1)
        throw std::invalid_argument("s_max: b_max must be >= 1");
    CycleBreakdown c = cycle_duration(p, m_antennas, b_max, m_antennas);
    double payload_bits = static_cast<double>(m_antennas) * b_max
                          * static_cast<double>(p.packet_payload_bits);
    return payload_bits / nanos_to_seconds(c.total);
}

} // namespace muagg
