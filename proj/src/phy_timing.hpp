#pragma once

#include "types.hpp"

namespace muagg {

/// PHY/MAC constants for the downlink frame exchange. Defaults correspond to
/// an 80 MHz 802.11ac channel with QAM-256 5/6 coding (1560 bits per OFDM
/// symbol) and 12000-bit packets. Every operation in this module reads its
/// constants from here; nothing is hard-coded.
struct PhyMacParams {
    Nanos symbol_time = us_to_nanos(4.0);     // OFDM symbol duration
    Nanos preamble_base = us_to_nanos(36.0);  // fixed part of the VHT preamble
    Nanos sifs = us_to_nanos(16.0);
    Nanos difs = us_to_nanos(34.0);
    Nanos slot_time = us_to_nanos(9.0);
    double mean_backoff_slots = 15.5;         // 15.5 slots * 9 us = 139.5 us

    std::int64_t bits_per_symbol = 1560;      // L_DBPS
    std::int64_t service_field_bits = 16;
    std::int64_t tail_bits = 6;
    std::int64_t mpdu_delimiter_bits = 32;    // present only when b > 1
    std::int64_t mac_header_bits = 288;
    std::int64_t ba_bits = 256;
    std::int64_t rts_base_bits = 160;         // extended RTS: 160 + 46*(M-1)
    std::int64_t rts_per_extra_addr_bits = 46;
    std::int64_t cts_base_bits = 112;         // extended CTS: 112 + CSI
    std::int64_t csi_bits_per_antenna = 1872; // CSI feedback per antenna
    std::int64_t packet_payload_bits = 12000; // L_d

    void validate() const; // throws std::invalid_argument
};

/// One transmission cycle split into its serial components. All durations in
/// nanoseconds; total is the exact sum of the parts.
struct CycleBreakdown {
    Nanos backoff = 0;
    Nanos difs = 0;
    Nanos rts = 0;
    Nanos cts_phase = 0;  // m * (SIFS + CTS*)
    Nanos ampdu = 0;
    Nanos ba_phase = 0;   // m * (SIFS + BA)
    Nanos total = 0;
};

// VHT preamble with num_ltf long training fields: 36 us + num_ltf symbols.
Nanos preamble_duration(const PhyMacParams& p, int num_ltf);

// Number of OFDM symbols needed for payload_bits (caller adds SF and TB).
std::int64_t symbols_for_bits(const PhyMacParams& p, std::int64_t payload_bits);

// Extended RTS naming the selected stations; preamble carries M LTFs.
Nanos rts_duration(const PhyMacParams& p, int m_antennas);

// Extended CTS carrying the CSI feedback for M antennas; single-LTF preamble.
Nanos cts_duration(const PhyMacParams& p, int m_antennas);

// A-MPDU of b packets; the MPDU delimiter is only present when b > 1.
Nanos ampdu_duration(const PhyMacParams& p, int b, int m_antennas);

// Block ACK; single-LTF preamble.
Nanos ba_duration(const PhyMacParams& p);

Nanos mean_backoff_duration(const PhyMacParams& p);

// Full cycle BO + DIFS + RTS* + m(SIFS + CTS*) + A-MPDU + m(SIFS + BA) with
// an explicit backoff value (the engine passes per-cycle draws).
CycleBreakdown cycle_duration_with_backoff(const PhyMacParams& p, int m, int b,
                                           int m_antennas, Nanos backoff);

// Same, with the deterministic mean backoff.
CycleBreakdown cycle_duration(const PhyMacParams& p, int m, int b, int m_antennas);

// Saturation throughput M*B*L_d / T(M,B) in bits per second.
double s_max_bps(const PhyMacParams& p, int m_antennas, int b_max);

} // namespace muagg
