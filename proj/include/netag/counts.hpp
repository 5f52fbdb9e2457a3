#ifndef NETAG_COUNTS_HPP
#define NETAG_COUNTS_HPP

#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace netag {

/// Packed conditioning context.  Each table fixes its own packing; keys are
/// only ever compared within one table.  The empty context is key 0.
using ContextKey = std::uint64_t;

/// Packed predicted event (a word id, a class id, or a fused class-word).
using EventId = std::uint32_t;

using Count = std::uint64_t;

/// Occurrence counts of (context, event) pairs plus per-context totals.
class CountTable {
public:
    void add(ContextKey ctx, EventId event, Count n = 1);

    Count count(ContextKey ctx, EventId event) const;
    Count context_total(ContextKey ctx) const;
    bool has_context(ContextKey ctx) const;

    std::size_t num_contexts() const { return contexts_.size(); }
    bool empty() const { return contexts_.empty(); }
    Count total() const { return total_; }

    struct ContextCounts {
        std::unordered_map<EventId, Count> events;
        Count total = 0;
    };

    const std::unordered_map<ContextKey, ContextCounts>& contexts() const {
        return contexts_;
    }

    bool operator==(const CountTable& other) const;

private:
    std::unordered_map<ContextKey, ContextCounts> contexts_;
    Count total_ = 0;
};

/// Builds a table from a stream of (context, event) observations.  The
/// result is independent of stream order.
CountTable count_ngrams(std::span<const std::pair<ContextKey, EventId>> events);

/// n_r: how many distinct (context, event) entries occurred exactly r times.
/// Satisfies sum_r r * n_r == table.total().
std::map<Count, std::uint64_t> frequency_of_frequencies(const CountTable& t);

}  // namespace netag

#endif  // NETAG_COUNTS_HPP
