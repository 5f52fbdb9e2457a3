#ifndef NETAG_MODEL_IMPLICIT_HPP
#define NETAG_MODEL_IMPLICIT_HPP

#include <memory>

#include "netag/chain.hpp"
#include "netag/classes.hpp"
#include "netag/symbols.hpp"
#include "netag/transcript.hpp"
#include "netag/vocabulary.hpp"

namespace netag {

/// A class-word token: the event alphabet of the implicit model.  Tokens
/// with the same word but different classes are distinct events.
struct ClassWordToken {
    ClassLabel cls = ClassLabel::Other;
    WordId word = 0;

    bool operator==(const ClassWordToken&) const = default;
};

/// An n-gram model (default trigram) over fused class-word tokens with
/// back-off or interpolation smoothing.  Utterances are padded with two
/// start tokens and closed with an end token.  Immutable after training;
/// concurrent scoring is safe.
class ImplicitNEModel {
public:
    ImplicitNEModel(SmoothingChain chain, Vocabulary vocab,
                    SymbolTable symbols, int order);

    /// log10 p(current | two-token history).  Total: every query is finite.
    double token_score(ClassWordToken prev2, ClassWordToken prev1,
                       ClassWordToken current) const;

    /// All decoding candidates for a surface word: each class paired with
    /// the word itself when in vocabulary, with the unknown token when the
    /// model has one, and with a reserved novel id otherwise.
    std::vector<ClassWordToken> candidate_tokens(const Token& word) const;

    /// Probability of an event never seen anywhere in the model, given the
    /// history (the full back-off path to the uniform floor).
    double novel_event_prob(ClassWordToken prev2, ClassWordToken prev1) const;

    ClassWordToken start_token() const { return start_; }
    ClassWordToken end_token() const { return end_; }

    /// Start/end sentinels are fused like any token; their word strings
    /// contain lowercase letters, so no corpus token can collide with them.
    static EventId fuse(ClassWordToken t) {
        return (static_cast<EventId>(class_index(t.cls)) << 24) |
               (t.word & 0x00FFFFFF);
    }

    const SmoothingChain& chain() const { return chain_; }
    const Vocabulary& vocabulary() const { return vocab_; }
    const SymbolTable& symbols() const { return symbols_; }
    int order() const { return order_; }
    double floor_denominator() const { return floor_denominator_; }

    const DiscountScheme& scheme() const { return scheme_; }
    void set_scheme(const DiscountScheme& s) { scheme_ = s; }

    /// Context keys for the chain given a two-token history.
    std::vector<ContextKey> context_keys(ClassWordToken prev2,
                                         ClassWordToken prev1) const;

    double event_log10_prob(std::span<const ContextKey> ctx, EventId e) const {
        return chain_.log10_prob(ctx, e);
    }

private:
    SmoothingChain chain_;
    Vocabulary vocab_;
    SymbolTable symbols_;
    DiscountScheme scheme_;
    int order_;
    ClassWordToken start_{ClassLabel::Other, 0};
    ClassWordToken end_{ClassLabel::Other, 0};
    double floor_denominator_ = 0.0;
};

/// Maximum-likelihood counts over padded class-word token sequences,
/// discounted and smoothed per the scheme/regime.
ImplicitNEModel train_implicit(const Corpus& corpus, const Vocabulary& v,
                               const DiscountScheme& s,
                               Regime regime = Regime::Backoff, int order = 3);

}  // namespace netag

#endif  // NETAG_MODEL_IMPLICIT_HPP
