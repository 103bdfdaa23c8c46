#pragma once

#include "types.hpp"

#include <deque>
#include <span>
#include <vector>

namespace muagg {

struct Packet {
    PacketId id = 0;
    StationId destination = 0;
    Nanos arrival_time = 0;
};

/// Queued packets of one destination: count, position of the oldest packet in
/// the queue, and the packet ids in arrival order. Entries of a Census are
/// ordered by first_pos, which is strictly increasing.
struct CensusEntry {
    StationId destination = 0;
    std::size_t first_pos = 0;
    std::vector<PacketId> ids;

    std::size_t count() const { return ids.size(); }
};

using Census = std::vector<CensusEntry>;

enum class OfferResult { accepted, blocked };

/// The AP's single shared finite FIFO buffer of K packets. Packets being
/// transmitted (in flight) keep occupying buffer space until the block ACK
/// completes; a full buffer tail-drops the arriving packet.
class SharedBuffer {
public:
    explicit SharedBuffer(std::size_t capacity) : capacity_(capacity) {}

    std::size_t capacity() const { return capacity_; }
    std::size_t queued_count() const { return queued_.size(); }
    std::size_t in_flight_count() const { return in_flight_.size(); }
    std::size_t occupancy() const { return queued_.size() + in_flight_.size(); }

    const std::deque<Packet>& queued() const { return queued_; }
    const std::vector<Packet>& in_flight() const { return in_flight_; }

    // Appends p when there is free space, otherwise reports blocked and
    // leaves the buffer untouched. Blocking is a normal outcome.
    OfferResult offer(const Packet& p);

    // Moves the identified packets from the queue to in-flight, preserving
    // the relative order of the remaining queue. Throws std::logic_error if
    // an id is not currently queued.
    void dequeue_for_transmission(std::span<const PacketId> ids);

    // Ends the transmission: acked packets leave the buffer and are returned;
    // any unacked in-flight packets re-enter the queue head in arrival order.
    // Throws std::logic_error if an acked id is not in flight.
    std::vector<Packet> complete_transmission(std::span<const PacketId> acked);

    // Per-destination view of the queued packets (in-flight excluded),
    // ordered by each destination's oldest packet.
    Census census() const;

    // The n oldest queued packet ids regardless of destination (used by the
    // ideal-scheduler mode).
    std::vector<PacketId> oldest_ids(std::size_t n) const;

private:
    std::size_t capacity_;
    std::deque<Packet> queued_;
    std::vector<Packet> in_flight_; // arrival order
};

} // namespace muagg
