#include "netag/counts.hpp"

namespace netag {

void CountTable::add(ContextKey ctx, EventId event, Count n) {
    auto& c = contexts_[ctx];
    c.events[event] += n;
    c.total += n;
    total_ += n;
}

Count CountTable::count(ContextKey ctx, EventId event) const {
    auto it = contexts_.find(ctx);
    if (it == contexts_.end()) return 0;
    auto jt = it->second.events.find(event);
    return jt == it->second.events.end() ? 0 : jt->second;
}

Count CountTable::context_total(ContextKey ctx) const {
    auto it = contexts_.find(ctx);
    return it == contexts_.end() ? 0 : it->second.total;
}

bool CountTable::has_context(ContextKey ctx) const {
    return contexts_.count(ctx) != 0;
}

bool CountTable::operator==(const CountTable& other) const {
    if (total_ != other.total_ || contexts_.size() != other.contexts_.size())
        return false;
    for (const auto& [ctx, cc] : contexts_) {
        auto it = other.contexts_.find(ctx);
        if (it == other.contexts_.end()) return false;
        if (it->second.total != cc.total || it->second.events != cc.events)
            return false;
    }
    return true;
}

CountTable count_ngrams(
    std::span<const std::pair<ContextKey, EventId>> events) {
    CountTable t;
    for (const auto& [ctx, e] : events) t.add(ctx, e);
    return t;
}

std::map<Count, std::uint64_t> frequency_of_frequencies(const CountTable& t) {
    std::map<Count, std::uint64_t> n_r;
    for (const auto& [ctx, cc] : t.contexts()) {
        for (const auto& [event, r] : cc.events) ++n_r[r];
    }
    return n_r;
}

}  // namespace netag
