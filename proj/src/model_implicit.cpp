#include "netag/model_implicit.hpp"

namespace netag {

namespace {

ContextKey pack2(EventId a, EventId b) {
    return (static_cast<ContextKey>(a) << 32) | b;
}

}  // namespace

ImplicitNEModel::ImplicitNEModel(SmoothingChain chain, Vocabulary vocab,
                                 SymbolTable symbols, int order)
    : chain_(std::move(chain)), vocab_(std::move(vocab)),
      symbols_(std::move(symbols)), order_(order) {
    start_ = {ClassLabel::Other, *symbols_.find(kBosWord)};
    end_ = {ClassLabel::Other, *symbols_.find(kEosWord)};
    floor_denominator_ = static_cast<double>(kNumClasses) *
                         static_cast<double>(vocab_.possible_size());
}

std::vector<ContextKey> ImplicitNEModel::context_keys(
    ClassWordToken prev2, ClassWordToken prev1) const {
    std::vector<ContextKey> ctx;
    if (order_ >= 3) ctx.push_back(pack2(fuse(prev2), fuse(prev1)));
    if (order_ >= 2) ctx.push_back(fuse(prev1));
    ctx.push_back(0);
    return ctx;
}

double ImplicitNEModel::token_score(ClassWordToken prev2, ClassWordToken prev1,
                                    ClassWordToken current) const {
    return chain_.log10_prob(context_keys(prev2, prev1), fuse(current));
}

double ImplicitNEModel::novel_event_prob(ClassWordToken prev2,
                                         ClassWordToken prev1) const {
    ClassWordToken novel{ClassLabel::Other, kNovelWordId};
    return chain_.prob(context_keys(prev2, prev1), fuse(novel));
}

std::vector<ClassWordToken> ImplicitNEModel::candidate_tokens(
    const Token& word) const {
    WordId id;
    if (auto found = symbols_.find(word); found && vocab_.contains(word)) {
        id = *found;
    } else if (vocab_.has_unknown()) {
        id = *symbols_.find(kUnknownWord);
    } else {
        id = kNovelWordId;
    }
    std::vector<ClassWordToken> out;
    out.reserve(kNumClasses);
    for (ClassLabel c : kAllClasses) out.push_back({c, id});
    return out;
}

ImplicitNEModel train_implicit(const Corpus& corpus, const Vocabulary& v,
                               const DiscountScheme& s, Regime regime,
                               int order) {
    if (corpus.empty()) throw DataError("cannot train on an empty corpus");
    if (order < 1 || order > 3) throw DataError("implicit model order must be 1..3");

    SymbolTable symbols;
    symbols.intern(kBosWord);
    symbols.intern(kEosWord);
    symbols.intern(kUnknownWord);
    for (const auto& w : v.words()) symbols.intern(w);

    const EventId bos = ImplicitNEModel::fuse(
        {ClassLabel::Other, *symbols.find(kBosWord)});
    const EventId eos = ImplicitNEModel::fuse(
        {ClassLabel::Other, *symbols.find(kEosWord)});

    const bool use_del = s.kind == DiscountKind::DeletedInterpolation;
    const std::size_t num_levels = static_cast<std::size_t>(order);

    std::vector<CountTable> full(num_levels), split_train(num_levels);
    std::vector<HeldoutEvent> heldout;

    std::size_t line_index = 0;
    for (const auto& t : corpus) {
        const ClassSequence classes = to_class_sequence(t);
        const std::vector<Token> words = map_oov(t.tokens, v);
        // Every tenth line is held out for deleted-interpolation weights.
        const bool is_heldout = use_del && (line_index % 10 == 9);
        ++line_index;

        std::vector<EventId> seq;
        seq.reserve(words.size() + 3);
        seq.push_back(bos);
        seq.push_back(bos);
        for (std::size_t i = 0; i < words.size(); ++i) {
            seq.push_back(ImplicitNEModel::fuse(
                {classes[i], symbols.intern(words[i])}));
        }
        seq.push_back(eos);
        for (std::size_t i = 2; i < seq.size(); ++i) {
            std::vector<ContextKey> ctx;
            if (order >= 3) ctx.push_back(pack2(seq[i - 2], seq[i - 1]));
            if (order >= 2) ctx.push_back(seq[i - 1]);
            ctx.push_back(0);
            for (std::size_t k = 0; k < num_levels; ++k) {
                full[k].add(ctx[k], seq[i]);
                if (use_del && !is_heldout) split_train[k].add(ctx[k], seq[i]);
            }
            if (is_heldout) heldout.push_back({std::move(ctx), seq[i]});
        }
    }

    auto drop_older = [](ContextKey ctx) -> ContextKey {
        return ctx & 0xFFFFFFFFull;  // (e1, e2) -> (e2)
    };
    auto drop_last = [](ContextKey) -> ContextKey { return 0; };

    std::vector<LevelData> levels;
    for (std::size_t k = 0; k < num_levels; ++k) {
        bool is_top_of_three = order >= 3 && k == 0;
        levels.push_back({std::move(full[k]),
                          is_top_of_three ? std::function<ContextKey(ContextKey)>(drop_older)
                                          : drop_last});
    }

    Terminal floor = Terminal::uniform(
        static_cast<double>(kNumClasses) *
            static_cast<double>(v.possible_size()),
        {eos});

    DeletedInterpolationData del_data;
    if (use_del) {
        del_data.train_counts = std::move(split_train);
        del_data.heldout = std::move(heldout);
    }
    SmoothingChain chain =
        build_chain(std::move(levels), std::move(floor), regime, s, {},
                    use_del ? &del_data : nullptr);
    ImplicitNEModel model(std::move(chain), v, std::move(symbols), order);
    model.set_scheme(s);
    return model;
}

}  // namespace netag
