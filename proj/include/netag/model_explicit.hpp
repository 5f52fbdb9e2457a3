#ifndef NETAG_MODEL_EXPLICIT_HPP
#define NETAG_MODEL_EXPLICIT_HPP

#include "netag/chain.hpp"
#include "netag/classes.hpp"
#include "netag/symbols.hpp"
#include "netag/transcript.hpp"
#include "netag/vocabulary.hpp"

namespace netag {

/// Geometric mixture factor between the two decompositions: 0 selects the
/// word-given-class decomposition (A), 1 the class-given-word one (B).
struct MixtureSetting {
    double k = 0.0;
};

/// A flat state machine over (class, word) pairs: the joint transition
/// p(class_i, word_i | class_{i-1}, word_{i-1}) factored two ways.
///
/// Decomposition A:  p(w | c_i, c_{i-1}, w_{i-1}) * p(c_i | c_{i-1}, w_{i-1})
///   word chain   p(w|c_i,c_{i-1},w_{i-1}) -> p(w|c_i,c_{i-1}) -> p(w|c_i)
///                -> p(w) -> uniform floor
///   class chain  p(c|c_{i-1},w_{i-1}) -> p(c|c_{i-1}) -> p(c)
///
/// Decomposition B:  p(c_i | w_i, c_{i-1}) * p(w | c_{i-1}, w_{i-1})
///   word chain   p(w|c_{i-1},w_{i-1}) -> p(w|c_{i-1}) -> p(w) -> floor
///   class chain  p(c|w_i,c_{i-1}) -> p(c|w_i) -> p(c)
///
/// Utterances start from the boundary state (Other, <s>).  Immutable after
/// training; concurrent scoring is safe.
class ExplicitNEModel {
public:
    ExplicitNEModel(SmoothingChain word_a, SmoothingChain class_a,
                    SmoothingChain word_b, SmoothingChain class_b,
                    Vocabulary vocab, SymbolTable symbols);

    struct State {
        ClassLabel cls = ClassLabel::Other;
        WordId word = 0;
    };

    double transition_score_a(State prev, State cur) const;
    double transition_score_b(State prev, State cur) const;

    /// (1-k) * score_a + k * score_b in log10 space; the endpoints are
    /// bit-identical to the pure decompositions.
    double transition_score_mixture(MixtureSetting k, State prev,
                                    State cur) const;

    State boundary_state() const { return {ClassLabel::Other, bos_}; }

    /// Maps a surface word to the id used for scoring (vocabulary member,
    /// unknown token, or the reserved novel id).
    WordId word_id_for_scoring(const Token& word) const;

    const SmoothingChain& word_chain_a() const { return word_a_; }
    const SmoothingChain& class_chain_a() const { return class_a_; }
    const SmoothingChain& word_chain_b() const { return word_b_; }
    const SmoothingChain& class_chain_b() const { return class_b_; }
    const Vocabulary& vocabulary() const { return vocab_; }
    const SymbolTable& symbols() const { return symbols_; }

    const DiscountScheme& scheme() const { return scheme_; }
    void set_scheme(const DiscountScheme& s) { scheme_ = s; }

    // Context packings, shared with training and serialization.
    static ContextKey key_ccw(ClassLabel a, ClassLabel b, WordId w) {
        return (static_cast<ContextKey>(class_index(a)) << 40) |
               (static_cast<ContextKey>(class_index(b)) << 32) | w;
    }
    static ContextKey key_cc(ClassLabel a, ClassLabel b) {
        return (static_cast<ContextKey>(class_index(a)) << 8) |
               class_index(b);
    }
    static ContextKey key_cw(ClassLabel a, WordId w) {
        return (static_cast<ContextKey>(class_index(a)) << 32) | w;
    }
    static ContextKey key_wc(WordId w, ClassLabel a) {
        return (static_cast<ContextKey>(w) << 8) | class_index(a);
    }
    static ContextKey key_c(ClassLabel a) { return class_index(a); }
    static ContextKey key_w(WordId w) { return w; }

    std::vector<ContextKey> word_a_contexts(State prev, ClassLabel cur) const;
    std::vector<ContextKey> class_a_contexts(State prev) const;
    std::vector<ContextKey> word_b_contexts(State prev) const;
    std::vector<ContextKey> class_b_contexts(WordId cur_word,
                                             ClassLabel prev_cls) const;

private:
    SmoothingChain word_a_;
    SmoothingChain class_a_;
    SmoothingChain word_b_;
    SmoothingChain class_b_;
    Vocabulary vocab_;
    SymbolTable symbols_;
    DiscountScheme scheme_;
    WordId bos_ = 0;
};

/// Estimates all conditional chains from the class-sequence-encoded corpus
/// (words OOV-mapped first).  Throws DataError when any of the nine classes
/// never occurs: the class chains terminate in the empirical class unigram,
/// which must be strictly positive everywhere.
ExplicitNEModel train_explicit(const Corpus& corpus, const Vocabulary& v,
                               const DiscountScheme& s,
                               Regime regime = Regime::Backoff);

}  // namespace netag

#endif  // NETAG_MODEL_EXPLICIT_HPP
