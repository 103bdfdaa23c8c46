#include "scheduler.hpp"

#include <algorithm>
#include <stdexcept>

namespace muagg {

std::vector<PacketId> TransmissionPlan::all_ids() const {
    std::vector<PacketId> ids;
    ids.reserve(packet_count());
    for (const auto& stream : per_stream)
        ids.insert(ids.end(), stream.begin(), stream.end());
    return ids;
}

std::optional<TransmissionPlan> plan_reference(const Census& census,
                                               int max_streams, int max_ampdu) {
    if (max_streams < 1 || max_ampdu < 1)
        throw std::invalid_argument("plan_reference: max_streams and max_ampdu must be >= 1");
    if (census.empty())
        return std::nullopt;

    const int xi = static_cast<int>(census.size());
    const int m = std::min(xi, max_streams);

    // Descending count; ties resolved by the older first packet. Census
    // entries are already ordered by first_pos, so a stable sort suffices.
    std::vector<std::size_t> order(census.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return census[a].count() > census[b].count();
    });

    const std::size_t psi = census[order[m - 1]].count();
    const int b = static_cast<int>(std::min<std::size_t>(psi, max_ampdu));

    // Eligible stations hold at least psi packets; pick the m whose first
    // waiting packet is oldest. Census order is first_pos order already.
    TransmissionPlan plan;
    plan.m = m;
    plan.b = b;
    plan.stations.reserve(m);
    plan.per_stream.reserve(m);
    for (const CensusEntry& entry : census) {
        if (entry.count() < psi)
            continue;
        plan.stations.push_back(entry.destination);
        plan.per_stream.emplace_back(entry.ids.begin(), entry.ids.begin() + b);
        if (static_cast<int>(plan.stations.size()) == m)
            break;
    }
    return plan;
}

std::optional<IdealPlanShape> plan_ideal(std::size_t queued,
                                         int max_streams, int max_ampdu) {
    if (max_streams < 1 || max_ampdu < 1)
        throw std::invalid_argument("plan_ideal: max_streams and max_ampdu must be >= 1");
    if (queued == 0)
        return std::nullopt;
    IdealPlanShape shape;
    shape.m = static_cast<int>(std::min<std::size_t>(queued, max_streams));
    shape.b = static_cast<int>(std::min<std::size_t>(queued / shape.m, max_ampdu));
    return shape;
}

} // namespace muagg
