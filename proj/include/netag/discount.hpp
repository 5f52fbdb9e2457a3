#ifndef NETAG_DISCOUNT_HPP
#define NETAG_DISCOUNT_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "netag/counts.hpp"

namespace netag {

enum class DiscountKind {
    GoodTuring,
    Absolute,
    GtAbsCombined,
    DeletedInterpolation,
};

std::string_view discount_kind_name(DiscountKind k);
std::optional<DiscountKind> discount_kind_from_name(std::string_view name);

struct DiscountScheme {
    DiscountKind kind = DiscountKind::GtAbsCombined;
    /// Absolute-discount constant; when unset, n1/(n1 + 2*n2) per table.
    std::optional<double> absolute_b;
    /// Largest count the Good-Turing formula is applied to.
    Count gt_max_r = 7;
};

/// A discounted conditional distribution.  Per context: event frequencies
/// that sum to the retained mass (< 1 whenever anything was discounted),
/// leaving 1 - retained_mass for events unseen in that context.
class DiscountedCpd {
public:
    struct Entry {
        /// Sorted by event id; every frequency is > 0.
        std::vector<std::pair<EventId, double>> events;
        double retained_mass = 0.0;
        /// Multiplier applied to the weaker model's probability: the
        /// back-off factor under the back-off regime, the escape mass
        /// 1 - retained_mass under interpolation.  Filled in by the chain's
        /// finalize step; 0 until then.
        double weaker_weight = 0.0;

        const double* find(EventId e) const;
    };

    const Entry* find(ContextKey ctx) const;
    Entry& at(ContextKey ctx) { return contexts_.at(ctx); }
    void insert(ContextKey ctx, Entry entry);

    std::unordered_map<ContextKey, Entry>& contexts() { return contexts_; }
    const std::unordered_map<ContextKey, Entry>& contexts() const {
        return contexts_;
    }
    bool empty() const { return contexts_.empty(); }

private:
    std::unordered_map<ContextKey, Entry> contexts_;
};

/// Turns raw counts into discounted relative frequencies under the given
/// scheme (deleted interpolation is handled by the chain builder, not here).
///
/// When alphabet_size is given and a context has observed every possible
/// event, that context keeps maximum-likelihood estimates with retained
/// mass exactly 1: there are no unseen events to reserve mass for, and
/// discounting would leave the distribution unnormalized under back-off.
///
/// Throws SchemeInapplicableError when pure Good-Turing needs n_{r+1} for
/// a count r with n_{r+1} == 0 (the combined scheme covers that case).
DiscountedCpd discount(const CountTable& t, const DiscountScheme& s,
                       std::optional<std::uint64_t> alphabet_size = {});

/// One held-out observation for interpolation-weight estimation: the
/// per-level conditioning contexts (strongest first) plus the event.
struct HeldoutEvent {
    std::vector<ContextKey> contexts;
    EventId event = 0;
};

/// Level weights per context-count bucket, plus the held-out log-likelihood
/// after each EM iteration (nondecreasing).
struct InterpolationWeights {
    /// weights[bucket][level]; each row is nonnegative and sums to 1.
    std::vector<std::vector<double>> weights;
    std::vector<double> log_likelihood_trace;
};

inline constexpr std::size_t kNumCountBuckets = 16;

/// Bucket index for a context by its training count (log2 buckets).
std::size_t count_bucket(Count context_total);

/// Generic EM estimation of per-bucket mixture weights over arbitrary
/// component scorers.  scorers[k](ev) returns the level-k probability of a
/// held-out event; bucket_of(ev) assigns the event to a weight bucket.
/// Events with zero probability under every component are skipped.
InterpolationWeights em_mixture_weights(
    const std::vector<std::function<double(const HeldoutEvent&)>>& scorers,
    const std::vector<HeldoutEvent>& heldout,
    const std::function<std::size_t(const HeldoutEvent&)>& bucket_of,
    std::size_t max_iterations = 100, double tolerance = 1e-9);

/// Deleted-interpolation weights across levels of count tables: mixes the
/// maximum-likelihood distributions of the given levels (strongest first)
/// to maximize held-out likelihood, bucketed by the strongest-level
/// context count.  Requires at least two levels and nonempty held-out data.
InterpolationWeights deleted_interpolation_weights(
    const std::vector<const CountTable*>& levels,
    const std::vector<HeldoutEvent>& heldout);

}  // namespace netag

#endif  // NETAG_DISCOUNT_HPP
