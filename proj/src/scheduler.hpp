#pragma once

#include "buffer.hpp"

#include <optional>
#include <vector>

namespace muagg {

enum class Policy {
    reference, // destination-aware scheme driven by the queue census
    ideal      // destination-blind upper bound: m=min(q,M), b=min(q/m,B)
};

/// One air-time grant: m streams, each carrying the b oldest queued packets
/// of its station. Streams are listed in selection (FIFO) order.
struct TransmissionPlan {
    std::vector<StationId> stations;
    std::vector<std::vector<PacketId>> per_stream;
    int m = 0;
    int b = 0;

    std::size_t packet_count() const { return static_cast<std::size_t>(m) * b; }
    std::vector<PacketId> all_ids() const;
};

// The reference scheme. With xi distinct destinations queued, m = min(xi, M);
// psi is the largest count such that m destinations hold at least psi packets
// (the m-th count in descending order); b = min(psi, B). When more than m
// destinations hold >= psi packets, the m with the oldest first packet win.
// Returns nothing on an empty census.
std::optional<TransmissionPlan> plan_reference(const Census& census,
                                               int max_streams, int max_ampdu);

struct IdealPlanShape {
    int m = 0;
    int b = 0;
};

// The ideal-scheduler shape for q queued packets: m = min(q, M) and
// b = min(floor(q/m), B), destinations ignored. Returns nothing when q == 0.
std::optional<IdealPlanShape> plan_ideal(std::size_t queued,
                                         int max_streams, int max_ampdu);

} // namespace muagg
