#ifndef NETAG_CHAIN_HPP
#define NETAG_CHAIN_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "netag/discount.hpp"

namespace netag {

enum class Regime { Interpolation, Backoff };

std::string_view regime_name(Regime r);
std::optional<Regime> regime_from_name(std::string_view name);

/// The distribution a chain bottoms out in.
struct Terminal {
    enum class Kind { Uniform, Distribution } kind = Kind::Uniform;

    /// Uniform: 1/denominator for every event except the excluded ones
    /// (which must be covered by upper levels, e.g. the end-of-line event).
    double denominator = 1.0;
    std::vector<EventId> excluded;

    /// Distribution: explicit probabilities over a small event alphabet.
    std::vector<std::pair<EventId, double>> probs;  // sorted by event

    double prob(EventId e) const;

    static Terminal uniform(double denominator,
                            std::vector<EventId> excluded = {});
    static Terminal distribution(std::vector<std::pair<EventId, double>> p);
};

/// A conditional probability estimate smoothed over progressively weaker
/// contexts.  Levels are ordered strongest first; queries supply one packed
/// context key per level.  Under interpolation every level blends with the
/// weaker one, weighted by the mass left after discounting; under back-off
/// the weaker level is consulted only for events unseen in the context,
/// scaled by the precomputed back-off weight.  Total for every query.
class SmoothingChain {
public:
    SmoothingChain() = default;
    SmoothingChain(std::vector<DiscountedCpd> levels, Terminal terminal,
                   Regime regime)
        : levels_(std::move(levels)), terminal_(std::move(terminal)),
          regime_(regime) {}

    double prob(std::span<const ContextKey> contexts, EventId event) const;
    double log10_prob(std::span<const ContextKey> contexts,
                      EventId event) const;

    std::size_t num_levels() const { return levels_.size(); }
    const DiscountedCpd& level(std::size_t k) const { return levels_[k]; }
    DiscountedCpd& level(std::size_t k) { return levels_[k]; }
    const Terminal& terminal() const { return terminal_; }
    Regime regime() const { return regime_; }

    /// Recomputes every context's weaker-model weight.  Under interpolation
    /// this is 1 - retained_mass; under back-off it is the Katz factor,
    /// computed weakest level first.  project_weaker[k] maps a level-k
    /// context key to the level-k+1 key.  Throws DegeneracyError when a
    /// weaker model puts mass >= 1 on a context's seen events while unseen
    /// mass remains.
    void finalize_weaker_weights(
        const std::vector<std::function<ContextKey(ContextKey)>>& project_weaker,
        const std::function<std::string(std::size_t, ContextKey)>& describe);

private:
    double prob_from(std::size_t k, std::span<const ContextKey> contexts,
                     EventId event) const;

    std::vector<DiscountedCpd> levels_;
    Terminal terminal_;
    Regime regime_ = Regime::Backoff;
};

/// Inputs for building one chain level from data.
struct LevelData {
    /// Full-data counts for this level.
    CountTable counts;
    /// Maps this level's context key to the next-weaker level's key.
    std::function<ContextKey(ContextKey)> project_weaker;
};

/// Held-out material for the deleted-interpolation scheme: counts from the
/// training part of the split per level, plus the held-out events carrying
/// per-level context keys.
struct DeletedInterpolationData {
    std::vector<CountTable> train_counts;  // one per level, strongest first
    std::vector<HeldoutEvent> heldout;
};

/// Builds a smoothing chain bottom-up: discounts each level (or fits
/// per-bucket interpolation weights for the deleted-interpolation scheme)
/// and fills in back-off weights.  alphabet_size enables the saturated-
/// context maximum-likelihood rule for small alphabets.
SmoothingChain build_chain(
    std::vector<LevelData> levels, Terminal terminal, Regime regime,
    const DiscountScheme& scheme,
    std::optional<std::uint64_t> alphabet_size = {},
    const DeletedInterpolationData* del = nullptr,
    const std::function<std::string(std::size_t, ContextKey)>& describe = {});

}  // namespace netag

#endif  // NETAG_CHAIN_HPP
