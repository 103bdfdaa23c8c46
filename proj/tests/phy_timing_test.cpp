#include "phy_timing.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace muagg;

namespace {
const PhyMacParams kDefaults{};

Nanos us(double v) { return us_to_nanos(v); }
} // namespace

TEST_CASE("preamble grows one symbol per LTF") {
    CHECK(preamble_duration(kDefaults, 1) == us(40));
    CHECK(preamble_duration(kDefaults, 4) == us(52));
    CHECK(preamble_duration(kDefaults, 8) == us(68));
    CHECK_THROWS_AS(preamble_duration(kDefaults, 0), std::invalid_argument);
}

TEST_CASE("symbol count is the ceiling of bits over bits-per-symbol") {
    CHECK(symbols_for_bits(kDefaults, 320) == 1);
    CHECK(symbols_for_bits(kDefaults, 1560) == 1);
    CHECK(symbols_for_bits(kDefaults, 1561) == 2);
    CHECK(symbols_for_bits(kDefaults, 788502) == 506); // 64-packet A-MPDU body
    CHECK(symbols_for_bits(kDefaults, 0) == 0);
}

TEST_CASE("extended RTS duration") {
    // M=4: preamble 52 us, body 16+298+6=320 bits -> one symbol
    CHECK(rts_duration(kDefaults, 4) == us(56));
    CHECK(rts_duration(kDefaults, 1) == us(44));
    CHECK(rts_duration(kDefaults, 8) == us(72));
    CHECK_THROWS_AS(rts_duration(kDefaults, 0), std::invalid_argument);
}

TEST_CASE("extended CTS duration carries the CSI payload") {
    // Single-LTF preamble regardless of M; body includes 1872*M CSI bits.
    CHECK(cts_duration(kDefaults, 4) == us(60));
    CHECK(cts_duration(kDefaults, 1) == us(48));
    CHECK(cts_duration(kDefaults, 8) == us(80));
}

TEST_CASE("A-MPDU duration uses the delimiter only when aggregating") {
    CHECK(ampdu_duration(kDefaults, 1, 4) == us(84));    // 12310 bits -> 8 symbols
    CHECK(ampdu_duration(kDefaults, 64, 4) == us(2076)); // 788502 bits -> 506 symbols
    CHECK(ampdu_duration(kDefaults, 2, 2) == us(108));
    CHECK_THROWS_AS(ampdu_duration(kDefaults, 0, 4), std::invalid_argument);
}

TEST_CASE("delimiter accounting between b=1 and b=2") {
    // The bit difference before rounding is one extra packet plus one
    // delimiter: (MD+MH+L_d) + MD.
    const std::int64_t per_packet = kDefaults.mpdu_delimiter_bits
                                    + kDefaults.mac_header_bits
                                    + kDefaults.packet_payload_bits;
    const std::int64_t b1_bits = kDefaults.mac_header_bits + kDefaults.packet_payload_bits;
    const std::int64_t b2_bits = 2 * per_packet;
    CHECK(b2_bits - b1_bits == per_packet + kDefaults.mpdu_delimiter_bits);

    const Nanos extra = ampdu_duration(kDefaults, 2, 4) - ampdu_duration(kDefaults, 1, 4);
    const Nanos expected_symbols =
        symbols_for_bits(kDefaults, kDefaults.service_field_bits + b2_bits + kDefaults.tail_bits)
        - symbols_for_bits(kDefaults, kDefaults.service_field_bits + b1_bits + kDefaults.tail_bits);
    CHECK(extra == expected_symbols * kDefaults.symbol_time);
}

TEST_CASE("block ACK duration") {
    CHECK(ba_duration(kDefaults) == us(44));

    PhyMacParams low_rate = kDefaults;
    low_rate.bits_per_symbol = 26;
    CHECK(ba_duration(low_rate) == us(84)); // 40 + 11 symbols

    PhyMacParams no_ba = kDefaults;
    no_ba.ba_bits = 0;
    CHECK(ba_duration(no_ba) == us(44)); // still one symbol for SF+TB
}

TEST_CASE("cycle duration matches the hand-summed expansion") {
    SUBCASE("m=4 b=64 M=4") {
        CycleBreakdown c = cycle_duration(kDefaults, 4, 64, 4);
        CHECK(c.backoff == us(139.5));
        CHECK(c.difs == us(34));
        CHECK(c.rts == us(56));
        CHECK(c.cts_phase == 4 * (us(16) + us(60)));
        CHECK(c.ampdu == us(2076));
        CHECK(c.ba_phase == 4 * (us(16) + us(44)));
        CHECK(c.total == us(2849.5));
    }
    SUBCASE("m=4 b=1 M=4") {
        CHECK(cycle_duration(kDefaults, 4, 1, 4).total == us(857.5));
    }
    SUBCASE("m=1 b=1 M=1") {
        CHECK(cycle_duration(kDefaults, 1, 1, 1).total == us(413.5));
    }
    SUBCASE("m out of range") {
        CHECK_THROWS_AS(cycle_duration(kDefaults, 0, 1, 4), std::invalid_argument);
        CHECK_THROWS_AS(cycle_duration(kDefaults, 5, 1, 4), std::invalid_argument);
    }
}

TEST_CASE("RTS and A-MPDU preambles always carry M LTFs") {
    // Scheduling fewer streams than antennas must not shorten the preambles.
    CycleBreakdown narrow = cycle_duration(kDefaults, 1, 8, 4);
    CHECK(narrow.rts == rts_duration(kDefaults, 4));
    CHECK(narrow.ampdu == ampdu_duration(kDefaults, 8, 4));
}

TEST_CASE("saturation throughput") {
    CHECK(s_max_bps(kDefaults, 4, 1) == doctest::Approx(55e6).epsilon(0.02));
    CHECK(s_max_bps(kDefaults, 4, 64) == doctest::Approx(1070e6).epsilon(0.02));
    CHECK(s_max_bps(kDefaults, 1, 1) == doctest::Approx(12000.0 / 413.5e-6).epsilon(1e-9));
}

TEST_CASE("cycle total is non-decreasing in m and b") {
    const int M = 8;
    Nanos prev_b = 0;
    for (int b = 1; b <= 128; ++b) {
        Nanos t = cycle_duration(kDefaults, M, b, M).total;
        CHECK(t >= prev_b);
        prev_b = t;
    }
    Nanos prev_m = 0;
    for (int m = 1; m <= M; ++m) {
        Nanos t = cycle_duration(kDefaults, m, 16, M).total;
        CHECK(t >= prev_m);
        prev_m = t;
    }
}

TEST_CASE("s_max strictly increases with the aggregation limit") {
    for (int m : {1, 4, 8}) {
        double prev = 0.0;
        for (int b = 1; b <= 64; b *= 2) {
            double s = s_max_bps(kDefaults, m, b);
            CHECK(s > prev);
            prev = s;
        }
    }
}

TEST_CASE("frame bodies are whole symbols on top of the preamble") {
    for (int m : {1, 2, 4, 8}) {
        CHECK((rts_duration(kDefaults, m) - preamble_duration(kDefaults, m))
                  % kDefaults.symbol_time == 0);
        CHECK((cts_duration(kDefaults, m) - preamble_duration(kDefaults, 1))
                  % kDefaults.symbol_time == 0);
        for (int b : {1, 2, 7, 64})
            CHECK((ampdu_duration(kDefaults, b, m) - preamble_duration(kDefaults, m))
                      % kDefaults.symbol_time == 0);
    }
    CHECK((ba_duration(kDefaults) - preamble_duration(kDefaults, 1))
              % kDefaults.symbol_time == 0);
}

TEST_CASE("breakdown parts sum to the total exactly") {
    for (int m = 1; m <= 4; ++m) {
        for (int b : {1, 3, 64}) {
            CycleBreakdown c = cycle_duration(kDefaults, m, b, 4);
            CHECK(c.backoff + c.difs + c.rts + c.cts_phase + c.ampdu + c.ba_phase
                  == c.total);
        }
    }
}

TEST_CASE("parameter validation") {
    PhyMacParams p = kDefaults;
    p.bits_per_symbol = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = kDefaults;
    p.sifs = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK_NOTHROW(kDefaults.validate());
}
