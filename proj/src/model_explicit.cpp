#include "netag/model_explicit.hpp"

#include <cmath>

namespace netag {

ExplicitNEModel::ExplicitNEModel(SmoothingChain word_a, SmoothingChain class_a,
                                 SmoothingChain word_b, SmoothingChain class_b,
                                 Vocabulary vocab, SymbolTable symbols)
    : word_a_(std::move(word_a)), class_a_(std::move(class_a)),
      word_b_(std::move(word_b)), class_b_(std::move(class_b)),
      vocab_(std::move(vocab)), symbols_(std::move(symbols)) {
    bos_ = *symbols_.find(kBosWord);
}

std::vector<ContextKey> ExplicitNEModel::word_a_contexts(
    State prev, ClassLabel cur) const {
    return {key_ccw(cur, prev.cls, prev.word), key_cc(cur, prev.cls),
            key_c(cur), 0};
}

std::vector<ContextKey> ExplicitNEModel::class_a_contexts(State prev) const {
    return {key_cw(prev.cls, prev.word), key_c(prev.cls)};
}

std::vector<ContextKey> ExplicitNEModel::word_b_contexts(State prev) const {
    return {key_cw(prev.cls, prev.word), key_c(prev.cls), 0};
}

std::vector<ContextKey> ExplicitNEModel::class_b_contexts(
    WordId cur_word, ClassLabel prev_cls) const {
    return {key_wc(cur_word, prev_cls), key_w(cur_word)};
}

double ExplicitNEModel::transition_score_a(State prev, State cur) const {
    return word_a_.log10_prob(word_a_contexts(prev, cur.cls), cur.word) +
           class_a_.log10_prob(class_a_contexts(prev), class_index(cur.cls));
}

double ExplicitNEModel::transition_score_b(State prev, State cur) const {
    return class_b_.log10_prob(class_b_contexts(cur.word, prev.cls),
                               class_index(cur.cls)) +
           word_b_.log10_prob(word_b_contexts(prev), cur.word);
}

double ExplicitNEModel::transition_score_mixture(MixtureSetting k, State prev,
                                                 State cur) const {
    if (k.k == 0.0) return transition_score_a(prev, cur);
    if (k.k == 1.0) return transition_score_b(prev, cur);
    return (1.0 - k.k) * transition_score_a(prev, cur) +
           k.k * transition_score_b(prev, cur);
}

WordId ExplicitNEModel::word_id_for_scoring(const Token& word) const {
    if (auto id = symbols_.find(word); id && vocab_.contains(word)) return *id;
    if (vocab_.has_unknown()) return *symbols_.find(kUnknownWord);
    return kNovelWordId;
}

ExplicitNEModel train_explicit(const Corpus& corpus, const Vocabulary& v,
                               const DiscountScheme& s, Regime regime) {
    if (corpus.empty()) throw DataError("cannot train on an empty corpus");

    SymbolTable symbols;
    symbols.intern(kBosWord);
    symbols.intern(kEosWord);
    symbols.intern(kUnknownWord);
    for (const auto& w : v.words()) symbols.intern(w);

    const bool use_del = s.kind == DiscountKind::DeletedInterpolation;

    // Chain layouts: per level a context packer over (cur class, prev state,
    // cur word as applicable).
    enum { kWordA, kClassA, kWordB, kClassB };
    struct ChainAccum {
        std::vector<CountTable> full;
        std::vector<CountTable> split;
        std::vector<HeldoutEvent> heldout;
        explicit ChainAccum(std::size_t levels)
            : full(levels), split(levels) {}
    };
    ChainAccum word_a(4), class_a(2), word_b(3), class_b(2);
    CountTable class_unigram;

    std::size_t line_index = 0;
    for (const auto& t : corpus) {
        const ClassSequence classes = to_class_sequence(t);
        const std::vector<Token> words = map_oov(t.tokens, v);
        const bool is_heldout = use_del && (line_index % 10 == 9);
        ++line_index;

        ExplicitNEModel::State prev{ClassLabel::Other, *symbols.find(kBosWord)};
        for (std::size_t i = 0; i < words.size(); ++i) {
            const ClassLabel c = classes[i];
            const WordId w = symbols.intern(words[i]);

            std::vector<ContextKey> wa = {
                ExplicitNEModel::key_ccw(c, prev.cls, prev.word),
                ExplicitNEModel::key_cc(c, prev.cls),
                ExplicitNEModel::key_c(c), 0};
            std::vector<ContextKey> ca = {
                ExplicitNEModel::key_cw(prev.cls, prev.word),
                ExplicitNEModel::key_c(prev.cls)};
            std::vector<ContextKey> wb = {
                ExplicitNEModel::key_cw(prev.cls, prev.word),
                ExplicitNEModel::key_c(prev.cls), 0};
            std::vector<ContextKey> cb = {ExplicitNEModel::key_wc(w, prev.cls),
                                          ExplicitNEModel::key_w(w)};

            auto accumulate = [&](ChainAccum& acc,
                                  const std::vector<ContextKey>& ctx,
                                  EventId event) {
                for (std::size_t k = 0; k < ctx.size(); ++k) {
                    acc.full[k].add(ctx[k], event);
                    if (use_del && !is_heldout) acc.split[k].add(ctx[k], event);
                }
                if (is_heldout) acc.heldout.push_back({ctx, event});
            };
            accumulate(word_a, wa, w);
            accumulate(class_a, ca, class_index(c));
            accumulate(word_b, wb, w);
            accumulate(class_b, cb, class_index(c));
            class_unigram.add(0, class_index(c));

            prev = {c, w};
        }
    }

    // Empirical class unigram; every class must occur.
    std::vector<std::pair<EventId, double>> class_probs;
    for (ClassLabel c : kAllClasses) {
        Count n = class_unigram.count(0, class_index(c));
        if (n == 0) {
            throw DataError(
                "class " + std::string(class_name(c)) +
                " never occurs in the training data; the class chains "
                "cannot terminate in a positive class unigram");
        }
        class_probs.emplace_back(
            class_index(c),
            static_cast<double>(n) /
                static_cast<double>(class_unigram.context_total(0)));
    }
    Terminal class_terminal = Terminal::distribution(std::move(class_probs));
    Terminal word_floor =
        Terminal::uniform(static_cast<double>(v.possible_size()));

    // Context projections between adjacent levels.
    auto ccw_to_cc = [](ContextKey k) {
        return (k >> 32);  // (c, c') << then word; top 16 bits hold (c, c')
    };
    auto cc_to_c = [](ContextKey k) { return k >> 8; };
    auto to_empty = [](ContextKey) -> ContextKey { return 0; };
    auto cw_to_c = [](ContextKey k) { return k >> 32; };
    auto wc_to_w = [](ContextKey k) { return k >> 8; };

    auto build = [&](ChainAccum& acc,
                     std::vector<std::function<ContextKey(ContextKey)>> proj,
                     Terminal terminal,
                     std::optional<std::uint64_t> alphabet,
                     const char* label) {
        std::vector<LevelData> levels;
        for (std::size_t k = 0; k < acc.full.size(); ++k) {
            levels.push_back({std::move(acc.full[k]), proj[k]});
        }
        DeletedInterpolationData del_data;
        if (use_del) {
            del_data.train_counts = std::move(acc.split);
            del_data.heldout = std::move(acc.heldout);
        }
        auto describe = [label](std::size_t level, ContextKey ctx) {
            return std::string(label) + " level " + std::to_string(level) +
                   " context " + std::to_string(ctx);
        };
        return build_chain(std::move(levels), std::move(terminal), regime, s,
                           alphabet, use_del ? &del_data : nullptr, describe);
    };

    SmoothingChain chain_word_a =
        build(word_a, {ccw_to_cc, cc_to_c, to_empty, to_empty}, word_floor,
              v.possible_size(), "word-chain-a");
    SmoothingChain chain_class_a =
        build(class_a, {cw_to_c, to_empty}, class_terminal, kNumClasses,
              "class-chain-a");
    SmoothingChain chain_word_b =
        build(word_b, {cw_to_c, to_empty, to_empty}, word_floor,
              v.possible_size(), "word-chain-b");
    SmoothingChain chain_class_b =
        build(class_b, {wc_to_w, to_empty}, class_terminal, kNumClasses,
              "class-chain-b");

    ExplicitNEModel model(std::move(chain_word_a), std::move(chain_class_a),
                          std::move(chain_word_b), std::move(chain_class_b),
                          v, std::move(symbols));
    model.set_scheme(s);
    return model;
}

}  // namespace netag
