#include "scheduler.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <vector>

using namespace muagg;

namespace {

// Builds a buffer-backed census from a destination sequence (ids 0..n-1).
Census census_of(const std::vector<StationId>& dests) {
    SharedBuffer buf(dests.size() + 1);
    PacketId id = 0;
    for (StationId d : dests)
        REQUIRE(buf.offer(Packet{id++, d, 0}) == OfferResult::accepted);
    return buf.census();
}

// Independent recomputation of (m, psi, b) by exhaustive search: psi is the
// largest threshold met by at least m destinations.
struct BruteResult {
    int m = 0;
    std::size_t psi = 0;
    int b = 0;
};

BruteResult brute_force(const std::vector<StationId>& dests, int M, int B) {
    std::map<StationId, std::size_t> counts;
    for (StationId d : dests)
        ++counts[d];
    BruteResult r;
    r.m = std::min<int>(static_cast<int>(counts.size()), M);
    for (std::size_t threshold = 1; threshold <= dests.size(); ++threshold) {
        int holders = 0;
        for (const auto& [dest, count] : counts)
            if (count >= threshold)
                ++holders;
        if (holders >= r.m)
            r.psi = threshold;
    }
    r.b = static_cast<int>(std::min<std::size_t>(r.psi, B));
    return r;
}

} // namespace

TEST_CASE("reference plan on the queue-evolution fixtures") {
    SUBCASE("psi=1 serves two stations with one packet each") {
        auto plan = plan_reference(census_of({3, 3, 1, 2}), 2, 2);
        REQUIRE(plan.has_value());
        CHECK(plan->m == 2);
        CHECK(plan->b == 1);
        REQUIRE(plan->stations.size() == 2);
        CHECK(plan->stations[0] == 3);
        CHECK(plan->stations[1] == 1); // FIFO among the three eligible
    }
    SUBCASE("three stations tied at two packets: FIFO picks the oldest two") {
        // Queue [3,2,3,2,1,1]: all counts are 2, first positions 0,1,4.
        auto plan = plan_reference(census_of({3, 2, 3, 2, 1, 1}), 2, 2);
        REQUIRE(plan.has_value());
        CHECK(plan->m == 2);
        CHECK(plan->b == 2);
        CHECK(plan->stations == std::vector<StationId>{3, 2});
    }
    SUBCASE("single destination caps the streams at one") {
        std::vector<StationId> dests(200, 7);
        auto plan = plan_reference(census_of(dests), 4, 64);
        REQUIRE(plan.has_value());
        CHECK(plan->m == 1);
        CHECK(plan->b == 64);
    }
    SUBCASE("empty census yields no plan") {
        CHECK_FALSE(plan_reference({}, 4, 64).has_value());
    }
}

TEST_CASE("streams carry each station's oldest packets") {
    // Queue: dest 5 at ids {0,2,4}, dest 9 at ids {1,3}.
    auto plan = plan_reference(census_of({5, 9, 5, 9, 5}), 2, 2);
    REQUIRE(plan.has_value());
    CHECK(plan->m == 2);
    CHECK(plan->b == 2);
    REQUIRE(plan->per_stream.size() == 2);
    CHECK(plan->per_stream[0] == std::vector<PacketId>{0, 2});
    CHECK(plan->per_stream[1] == std::vector<PacketId>{1, 3});
}

TEST_CASE("eligibility threshold is psi even when b is capped at B") {
    // dest 1 holds 5, dest 2 holds 5, dest 3 holds 3 (older first packet).
    // With M=2 psi=5, so dest 3 is not eligible despite holding >= b=2.
    std::vector<StationId> dests = {3, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 3, 3};
    auto plan = plan_reference(census_of(dests), 2, 2);
    REQUIRE(plan.has_value());
    CHECK(plan->b == 2);
    CHECK(plan->stations == std::vector<StationId>{1, 2});
}

TEST_CASE("ideal plan shape") {
    auto p = plan_ideal(10, 4, 64);
    REQUIRE(p.has_value());
    CHECK(p->m == 4);
    CHECK(p->b == 2);

    p = plan_ideal(1, 8, 64);
    REQUIRE(p.has_value());
    CHECK(p->m == 1);
    CHECK(p->b == 1);

    p = plan_ideal(1000, 4, 64);
    REQUIRE(p.has_value());
    CHECK(p->m == 4);
    CHECK(p->b == 64);

    CHECK_FALSE(plan_ideal(0, 4, 64).has_value());
}

TEST_CASE("random censuses match the brute-force rules") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n_dests = 1 + rng() % 10;
        const std::size_t q = 1 + rng() % 50;
        const int M = 1 + rng() % 8;
        const int B = 1 + rng() % 64;

        std::vector<StationId> dests(q);
        for (auto& d : dests)
            d = rng() % n_dests;

        Census census = census_of(dests);
        auto plan = plan_reference(census, M, B);
        REQUIRE(plan.has_value());
        BruteResult expected = brute_force(dests, M, B);

        CHECK(plan->m == expected.m);
        CHECK(plan->b == expected.b);
        CHECK(plan->stations.size() == static_cast<std::size_t>(plan->m));

        // Payload balance: every stream holds exactly b ids of its station,
        // and they are that station's oldest ones.
        std::map<StationId, const CensusEntry*> by_dest;
        for (const CensusEntry& e : census)
            by_dest[e.destination] = &e;
        for (std::size_t s = 0; s < plan->stations.size(); ++s) {
            const auto& stream = plan->per_stream[s];
            REQUIRE(stream.size() == static_cast<std::size_t>(plan->b));
            const CensusEntry* entry = by_dest.at(plan->stations[s]);
            REQUIRE(entry->count() >= stream.size());
            CHECK(std::equal(stream.begin(), stream.end(), entry->ids.begin()));
        }

        // Distinct stations.
        auto sorted = plan->stations;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());

        // FIFO tie-break: every selected station's first position is at most
        // every unselected eligible station's.
        std::size_t max_selected_pos = 0;
        for (StationId s : plan->stations)
            max_selected_pos = std::max(max_selected_pos, by_dest.at(s)->first_pos);
        for (const CensusEntry& e : census) {
            if (e.count() < expected.psi)
                continue;
            bool selected = std::find(plan->stations.begin(), plan->stations.end(),
                                      e.destination) != plan->stations.end();
            if (!selected)
                CHECK(e.first_pos >= max_selected_pos);
        }

        // Pure function: same census, same plan.
        auto again = plan_reference(census, M, B);
        REQUIRE(again.has_value());
        CHECK(again->stations == plan->stations);
        CHECK(again->per_stream == plan->per_stream);
    }
}
