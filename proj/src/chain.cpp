#include "netag/chain.hpp"

#include <algorithm>
#include <cmath>

#include "netag/errors.hpp"

namespace netag {

std::string_view regime_name(Regime r) {
    return r == Regime::Interpolation ? "interp" : "backoff";
}

std::optional<Regime> regime_from_name(std::string_view name) {
    if (name == "interp") return Regime::Interpolation;
    if (name == "backoff") return Regime::Backoff;
    return std::nullopt;
}

Terminal Terminal::uniform(double denominator, std::vector<EventId> excluded) {
    Terminal t;
    t.kind = Kind::Uniform;
    t.denominator = denominator;
    t.excluded = std::move(excluded);
    std::sort(t.excluded.begin(), t.excluded.end());
    return t;
}

Terminal Terminal::distribution(std::vector<std::pair<EventId, double>> p) {
    Terminal t;
    t.kind = Kind::Distribution;
    std::sort(p.begin(), p.end());
    t.probs = std::move(p);
    return t;
}

double Terminal::prob(EventId e) const {
    if (kind == Kind::Uniform) {
        if (std::binary_search(excluded.begin(), excluded.end(), e))
            return 0.0;
        return 1.0 / denominator;
    }
    auto it = std::lower_bound(
        probs.begin(), probs.end(), e,
        [](const auto& a, EventId b) { return a.first < b; });
    if (it == probs.end() || it->first != e) return 0.0;
    return it->second;
}

double SmoothingChain::prob_from(std::size_t k,
                                 std::span<const ContextKey> contexts,
                                 EventId event) const {
    if (k == levels_.size()) return terminal_.prob(event);
    const DiscountedCpd::Entry* entry = levels_[k].find(contexts[k]);
    if (entry == nullptr) return prob_from(k + 1, contexts, event);
    if (regime_ == Regime::Backoff) {
        if (const double* f = entry->find(event)) return *f;
        return entry->weaker_weight * prob_from(k + 1, contexts, event);
    }
    const double* f = entry->find(event);
    double base = f ? *f : 0.0;
    return base + entry->weaker_weight * prob_from(k + 1, contexts, event);
}

double SmoothingChain::prob(std::span<const ContextKey> contexts,
                            EventId event) const {
    return prob_from(0, contexts, event);
}

double SmoothingChain::log10_prob(std::span<const ContextKey> contexts,
                                  EventId event) const {
    return std::log10(prob(contexts, event));
}

void SmoothingChain::finalize_weaker_weights(
    const std::vector<std::function<ContextKey(ContextKey)>>& project_weaker,
    const std::function<std::string(std::size_t, ContextKey)>& describe) {
    if (regime_ == Regime::Interpolation) {
        for (auto& level : levels_) {
            for (auto& [ctx, entry] : level.contexts()) {
                entry.weaker_weight =
                    std::max(0.0, 1.0 - entry.retained_mass);
            }
        }
        return;
    }
    // Weakest level first: its weights only involve the terminal, and each
    // stronger level then queries a fully weighted suffix chain.
    for (std::size_t k = levels_.size(); k-- > 0;) {
        for (auto& [ctx, entry] : levels_[k].contexts()) {
            double numerator = 1.0 - entry.retained_mass;
            if (numerator <= 0.0) {
                entry.weaker_weight = 0.0;
                continue;
            }
            // Weaker-chain context keys for this context.
            std::vector<ContextKey> weaker_ctx(levels_.size(), 0);
            ContextKey c = ctx;
            for (std::size_t j = k + 1; j < levels_.size(); ++j) {
                c = project_weaker[j - 1](c);
                weaker_ctx[j] = c;
            }
            double seen_mass = 0.0;
            for (const auto& [event, freq] : entry.events) {
                seen_mass += prob_from(k + 1, weaker_ctx, event);
            }
            double denominator = 1.0 - seen_mass;
            if (denominator <= 0.0) {
                std::string where =
                    describe ? describe(k, ctx)
                             : ("level " + std::to_string(k) + " context " +
                                std::to_string(ctx));
                throw DegeneracyError(
                    "back-off weight denominator is not positive for " +
                    where + " (weaker model mass on seen events = " +
                    std::to_string(seen_mass) + ")");
            }
            entry.weaker_weight = numerator / denominator;
        }
    }
}

namespace {

// Deleted interpolation realized per level: EM fits per-bucket weights
// between the level's maximum-likelihood estimate (from the training part
// of the split) and the already-built weaker chain; the stored frequencies
// are full-data relative frequencies scaled by the bucket weight.
DiscountedCpd deleted_interpolation_cpd(
    const CountTable& full, const CountTable& train90,
    const std::vector<HeldoutEvent>& heldout, std::size_t level_index,
    const SmoothingChain& weaker_chain,
    const std::vector<std::function<ContextKey(ContextKey)>>& projections,
    std::optional<std::uint64_t> alphabet_size) {
    // Scorer 0: held-out probability under the split-training ML estimate.
    // Scorer 1: the weaker chain (levels below level_index).
    std::vector<std::function<double(const HeldoutEvent&)>> scorers;
    scorers.push_back([&](const HeldoutEvent& ev) {
        Count total = train90.context_total(ev.contexts[level_index]);
        if (total == 0) return 0.0;
        return static_cast<double>(
                   train90.count(ev.contexts[level_index], ev.event)) /
               static_cast<double>(total);
    });
    scorers.push_back([&](const HeldoutEvent& ev) {
        std::span<const ContextKey> tail(
            ev.contexts.data() + level_index + 1,
            ev.contexts.size() - level_index - 1);
        return weaker_chain.prob(tail, ev.event);
    });
    (void)projections;
    auto bucket_of = [&](const HeldoutEvent& ev) {
        return count_bucket(full.context_total(ev.contexts[level_index]));
    };
    InterpolationWeights w = em_mixture_weights(scorers, heldout, bucket_of);

    constexpr double kMinWeight = 1e-6;
    DiscountedCpd cpd;
    for (const auto& [ctx, cc] : full.contexts()) {
        DiscountedCpd::Entry entry;
        entry.events.reserve(cc.events.size());
        double total = static_cast<double>(cc.total);
        const bool saturated =
            alphabet_size && cc.events.size() >= *alphabet_size;
        double lambda =
            saturated ? 1.0 : w.weights[count_bucket(cc.total)][0];
        lambda = std::clamp(lambda, kMinWeight, saturated ? 1.0 : 1.0 - kMinWeight);
        for (const auto& [event, r] : cc.events) {
            entry.events.emplace_back(
                event, lambda * static_cast<double>(r) / total);
        }
        std::sort(entry.events.begin(), entry.events.end());
        entry.retained_mass = saturated ? 1.0 : lambda;
        cpd.insert(ctx, std::move(entry));
    }
    return cpd;
}

}  // namespace

SmoothingChain build_chain(
    std::vector<LevelData> levels, Terminal terminal, Regime regime,
    const DiscountScheme& scheme, std::optional<std::uint64_t> alphabet_size,
    const DeletedInterpolationData* del,
    const std::function<std::string(std::size_t, ContextKey)>& describe) {
    if (levels.empty()) throw DataError("a smoothing chain needs >= 1 level");
    if (scheme.kind == DiscountKind::DeletedInterpolation &&
        (del == nullptr || del->train_counts.size() != levels.size())) {
        throw DataError("deleted interpolation requires split data per level");
    }

    std::vector<std::function<ContextKey(ContextKey)>> projections;
    for (const auto& lv : levels) projections.push_back(lv.project_weaker);

    const std::size_t n = levels.size();
    std::vector<DiscountedCpd> built(n);
    // Weakest level first so each deleted-interpolation fit can query the
    // chain below it.
    for (std::size_t k = n; k-- > 0;) {
        if (scheme.kind == DiscountKind::DeletedInterpolation) {
            std::vector<DiscountedCpd> weaker_levels(built.begin() + k + 1,
                                                     built.end());
            SmoothingChain weaker(std::move(weaker_levels), terminal, regime);
            std::vector<std::function<ContextKey(ContextKey)>> weaker_proj(
                projections.begin() + k + 1, projections.end());
            weaker.finalize_weaker_weights(weaker_proj, {});
            built[k] = deleted_interpolation_cpd(
                levels[k].counts, del->train_counts[k], del->heldout, k,
                weaker, projections, alphabet_size);
        } else {
            built[k] = discount(levels[k].counts, scheme, alphabet_size);
        }
    }

    SmoothingChain chain(std::move(built), std::move(terminal), regime);
    chain.finalize_weaker_weights(projections, describe);
    return chain;
}

}  // namespace netag
