#include "netag/discount.hpp"

#include <algorithm>
#include <cmath>

#include "netag/errors.hpp"

namespace netag {

std::string_view discount_kind_name(DiscountKind k) {
    switch (k) {
        case DiscountKind::GoodTuring: return "gt";
        case DiscountKind::Absolute: return "abs";
        case DiscountKind::GtAbsCombined: return "gt-abs";
        case DiscountKind::DeletedInterpolation: return "del";
    }
    return "gt-abs";
}

std::optional<DiscountKind> discount_kind_from_name(std::string_view name) {
    if (name == "gt") return DiscountKind::GoodTuring;
    if (name == "abs") return DiscountKind::Absolute;
    if (name == "gt-abs") return DiscountKind::GtAbsCombined;
    if (name == "del") return DiscountKind::DeletedInterpolation;
    return std::nullopt;
}

const double* DiscountedCpd::Entry::find(EventId e) const {
    auto it = std::lower_bound(
        events.begin(), events.end(), e,
        [](const auto& a, EventId b) { return a.first < b; });
    if (it == events.end() || it->first != e) return nullptr;
    return &it->second;
}

const DiscountedCpd::Entry* DiscountedCpd::find(ContextKey ctx) const {
    auto it = contexts_.find(ctx);
    return it == contexts_.end() ? nullptr : &it->second;
}

void DiscountedCpd::insert(ContextKey ctx, Entry entry) {
    contexts_.emplace(ctx, std::move(entry));
}

namespace {

double lookup_nr(const std::map<Count, std::uint64_t>& n_r, Count r) {
    auto it = n_r.find(r);
    return it == n_r.end() ? 0.0 : static_cast<double>(it->second);
}

double default_absolute_b(const std::map<Count, std::uint64_t>& n_r) {
    double n1 = lookup_nr(n_r, 1);
    double n2 = lookup_nr(n_r, 2);
    double b = (n1 + 2.0 * n2) > 0.0 ? n1 / (n1 + 2.0 * n2) : 0.5;
    if (!(b > 0.0 && b < 1.0)) b = 0.5;
    return b;
}

}  // namespace

std::size_t count_bucket(Count context_total) {
    std::size_t b = 0;
    Count v = context_total;
    while (v > 1 && b + 1 < kNumCountBuckets) {
        v >>= 1;
        ++b;
    }
    return b;
}

DiscountedCpd discount(const CountTable& t, const DiscountScheme& s,
                       std::optional<std::uint64_t> alphabet_size) {
    if (t.empty()) throw DataError("cannot discount an empty count table");
    if (s.kind == DiscountKind::DeletedInterpolation) {
        throw DataError(
            "deleted interpolation needs held-out data; use the chain builder");
    }
    if (s.absolute_b && !(*s.absolute_b > 0.0 && *s.absolute_b < 1.0)) {
        throw DataError("absolute discount constant must lie in (0, 1)");
    }

    const auto n_r = frequency_of_frequencies(t);
    const double b = s.absolute_b ? *s.absolute_b : default_absolute_b(n_r);

    // Good-Turing discounted count for r, or nullopt where the formula does
    // not yield a genuine discount (r* must satisfy 0 < r* < r).
    auto gt_discounted = [&](Count r) -> std::optional<double> {
        if (r > s.gt_max_r) return std::nullopt;
        double nr = lookup_nr(n_r, r);
        double nr1 = lookup_nr(n_r, r + 1);
        if (nr <= 0.0 || nr1 <= 0.0) return std::nullopt;
        double r_star = (static_cast<double>(r) + 1.0) * nr1 / nr;
        if (r_star <= 0.0 || r_star >= static_cast<double>(r))
            return std::nullopt;
        return r_star;
    };

    DiscountedCpd cpd;
    for (const auto& [ctx, cc] : t.contexts()) {
        DiscountedCpd::Entry entry;
        entry.events.reserve(cc.events.size());
        for (const auto& [event, r] : cc.events) {
            entry.events.emplace_back(event, static_cast<double>(r));
        }
        std::sort(entry.events.begin(), entry.events.end());

        const double total = static_cast<double>(cc.total);
        const bool saturated =
            alphabet_size && cc.events.size() >= *alphabet_size;
        if (saturated) {
            for (auto& [event, freq] : entry.events) freq /= total;
            entry.retained_mass = 1.0;
        } else {
            double mass = 0.0;
            for (auto& [event, freq] : entry.events) {
                const Count r = static_cast<Count>(freq);
                double discounted = freq;
                switch (s.kind) {
                    case DiscountKind::GoodTuring: {
                        if (r <= s.gt_max_r && lookup_nr(n_r, r + 1) <= 0.0) {
                            throw SchemeInapplicableError(
                                "Good-Turing is inapplicable: no events of "
                                "count " + std::to_string(r + 1) +
                                " to estimate the discount for count " +
                                std::to_string(r) +
                                "; use the combined gt-abs scheme");
                        }
                        if (auto d = gt_discounted(r)) discounted = *d;
                        break;
                    }
                    case DiscountKind::Absolute:
                        discounted = freq - b;
                        break;
                    case DiscountKind::GtAbsCombined: {
                        if (auto d = gt_discounted(r)) {
                            discounted = *d;
                        } else {
                            discounted = freq - b;
                        }
                        break;
                    }
                    case DiscountKind::DeletedInterpolation:
                        break;  // unreachable
                }
                freq = discounted / total;
                mass += freq;
            }
            // A context where nothing was discounted sums to 1 only up to
            // rounding; the retained mass must never exceed 1.
            entry.retained_mass = std::min(mass, 1.0);
        }
        cpd.insert(ctx, std::move(entry));
    }
    return cpd;
}

InterpolationWeights em_mixture_weights(
    const std::vector<std::function<double(const HeldoutEvent&)>>& scorers,
    const std::vector<HeldoutEvent>& heldout,
    const std::function<std::size_t(const HeldoutEvent&)>& bucket_of,
    std::size_t max_iterations, double tolerance) {
    const std::size_t levels = scorers.size();
    if (levels < 2) throw DataError("mixture estimation needs >= 2 levels");
    if (heldout.empty()) throw DataError("mixture estimation needs held-out data");

    // Precompute component probabilities and bucket per event; drop events
    // with no support under any component.
    struct Item {
        std::vector<double> p;
        std::size_t bucket;
    };
    std::vector<Item> items;
    items.reserve(heldout.size());
    for (const auto& ev : heldout) {
        Item item;
        item.p.resize(levels);
        double support = 0.0;
        for (std::size_t k = 0; k < levels; ++k) {
            item.p[k] = scorers[k](ev);
            support += item.p[k];
        }
        if (support <= 0.0) continue;
        item.bucket = std::min(bucket_of(ev), kNumCountBuckets - 1);
        items.push_back(std::move(item));
    }

    InterpolationWeights out;
    out.weights.assign(kNumCountBuckets,
                       std::vector<double>(levels, 1.0 / levels));
    if (items.empty()) return out;

    auto log_likelihood = [&]() {
        double ll = 0.0;
        for (const auto& item : items) {
            double p = 0.0;
            for (std::size_t k = 0; k < levels; ++k) {
                p += out.weights[item.bucket][k] * item.p[k];
            }
            ll += std::log(p);
        }
        return ll;
    };

    double prev_ll = log_likelihood();
    out.log_likelihood_trace.push_back(prev_ll);
    std::vector<std::vector<double>> resp(kNumCountBuckets,
                                          std::vector<double>(levels, 0.0));
    std::vector<double> bucket_n(kNumCountBuckets, 0.0);
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        for (auto& row : resp) std::fill(row.begin(), row.end(), 0.0);
        std::fill(bucket_n.begin(), bucket_n.end(), 0.0);
        for (const auto& item : items) {
            double denom = 0.0;
            for (std::size_t k = 0; k < levels; ++k) {
                denom += out.weights[item.bucket][k] * item.p[k];
            }
            for (std::size_t k = 0; k < levels; ++k) {
                resp[item.bucket][k] +=
                    out.weights[item.bucket][k] * item.p[k] / denom;
            }
            bucket_n[item.bucket] += 1.0;
        }
        for (std::size_t bkt = 0; bkt < kNumCountBuckets; ++bkt) {
            if (bucket_n[bkt] <= 0.0) continue;
            for (std::size_t k = 0; k < levels; ++k) {
                out.weights[bkt][k] = resp[bkt][k] / bucket_n[bkt];
            }
        }
        double ll = log_likelihood();
        out.log_likelihood_trace.push_back(ll);
        if (ll - prev_ll < tolerance * (std::abs(prev_ll) + 1.0)) break;
        prev_ll = ll;
    }
    return out;
}

InterpolationWeights deleted_interpolation_weights(
    const std::vector<const CountTable*>& levels,
    const std::vector<HeldoutEvent>& heldout) {
    if (levels.size() < 2)
        throw DataError("deleted interpolation needs >= 2 levels");
    std::vector<std::function<double(const HeldoutEvent&)>> scorers;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const CountTable* table = levels[k];
        scorers.push_back([table, k](const HeldoutEvent& ev) {
            Count total = table->context_total(ev.contexts[k]);
            if (total == 0) return 0.0;
            return static_cast<double>(table->count(ev.contexts[k], ev.event)) /
                   static_cast<double>(total);
        });
    }
    const CountTable* strongest = levels.front();
    auto bucket_of = [strongest](const HeldoutEvent& ev) {
        return count_bucket(strongest->context_total(ev.contexts[0]));
    };
    return em_mixture_weights(scorers, heldout, bucket_of);
}

}  // namespace netag
