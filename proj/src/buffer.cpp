#include "buffer.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace muagg {

OfferResult SharedBuffer::offer(const Packet& p) {
    if (occupancy() >= capacity_)
        return OfferResult::blocked;
    queued_.push_back(p);
    return OfferResult::accepted;
}

void SharedBuffer::dequeue_for_transmission(std::span<const PacketId> ids) {
    if (ids.empty())
        return;
    std::unordered_set<PacketId> wanted(ids.begin(), ids.end());
    std::deque<Packet> remaining;
    for (const Packet& p : queued_) {
        auto it = wanted.find(p.id);
        if (it != wanted.end()) {
            in_flight_.push_back(p);
            wanted.erase(it);
        } else {
            remaining.push_back(p);
        }
    }
    if (!wanted.empty())
        throw std::logic_error("dequeue_for_transmission: packet not in queue");
    queued_.swap(remaining);
}

std::vector<Packet> SharedBuffer::complete_transmission(std::span<const PacketId> acked) {
    std::unordered_set<PacketId> acked_set(acked.begin(), acked.end());
    for (PacketId id : acked_set) {
        bool found = std::any_of(in_flight_.begin(), in_flight_.end(),
                                 [id](const Packet& p) { return p.id == id; });
        if (!found)
            throw std::logic_error("complete_transmission: acked id not in flight");
    }
    std::vector<Packet> delivered;
    std::vector<Packet> requeue;
    delivered.reserve(acked_set.size());
    for (const Packet& p : in_flight_) {
        if (acked_set.count(p.id))
            delivered.push_back(p);
        else
            requeue.push_back(p);
    }
    in_flight_.clear();
    // Unacked packets go back to the head, oldest first.
    for (auto it = requeue.rbegin(); it != requeue.rend(); ++it)
        queued_.push_front(*it);
    return delivered;
}

Census SharedBuffer::census() const {
    Census result;
    std::unordered_map<StationId, std::size_t> index;
    index.reserve(16);
    std::size_t pos = 0;
    for (const Packet& p : queued_) {
        auto [it, inserted] = index.try_emplace(p.destination, result.size());
        if (inserted)
            result.push_back(CensusEntry{p.destination, pos, {}});
        result[it->second].ids.push_back(p.id);
        ++pos;
    }
    return result;
}

std::vector<PacketId> SharedBuffer::oldest_ids(std::size_t n) const {
    std::vector<PacketId> ids;
    ids.reserve(std::min(n, queued_.size()));
    for (const Packet& p : queued_) {
        if (ids.size() >= n)
            break;
        ids.push_back(p.id);
    }
    return ids;
}

} // namespace muagg
