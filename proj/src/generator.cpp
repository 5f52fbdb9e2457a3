#include "netag/generator.hpp"

#include <algorithm>
#include <cmath>

#include "netag/errors.hpp"

namespace netag {

namespace {

// Cumulative transition table for one conditioning state, candidates in
// (class, word-id) order.
struct Categorical {
    std::vector<double> cumulative;          // all candidates
    std::vector<double> cumulative_no_plus;  // line-start variant
    std::vector<ExplicitNEModel::State> states;
};

class TransitionCache {
public:
    TransitionCache(const ExplicitNEModel& m) : model_(m) {
        for (const auto& w : m.vocabulary().words()) {
            word_ids_.push_back(*m.symbols().find(w));
        }
        std::sort(word_ids_.begin(), word_ids_.end());
    }

    const Categorical& table(ExplicitNEModel::State prev) {
        ContextKey key = ExplicitNEModel::key_cw(prev.cls, prev.word);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;

        Categorical cat;
        cat.states.reserve(kNumClasses * word_ids_.size());
        cat.cumulative.reserve(cat.states.capacity());
        cat.cumulative_no_plus.reserve(cat.states.capacity());
        double acc = 0.0, acc_np = 0.0;
        for (ClassLabel c : kAllClasses) {
            for (WordId w : word_ids_) {
                ExplicitNEModel::State cur{c, w};
                double p =
                    std::pow(10.0, model_.transition_score_a(prev, cur));
                acc += p;
                if (c != ClassLabel::Plus) acc_np += p;
                cat.states.push_back(cur);
                cat.cumulative.push_back(acc);
                cat.cumulative_no_plus.push_back(acc_np);
            }
        }
        return cache_.emplace(key, std::move(cat)).first->second;
    }

private:
    const ExplicitNEModel& model_;
    std::vector<WordId> word_ids_;
    std::unordered_map<ContextKey, Categorical> cache_;
};

ExplicitNEModel::State draw(const Categorical& cat, bool line_start,
                            std::mt19937_64& rng) {
    const auto& cum =
        line_start ? cat.cumulative_no_plus : cat.cumulative;
    double total = cum.back();
    if (total <= 0.0) {
        throw DegeneracyError("generator: no probability mass to sample from");
    }
    double u = next_double(rng) * total;
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cum.begin());
    if (idx >= cat.states.size()) idx = cat.states.size() - 1;
    if (line_start) {
        // Plus candidates occupy a zero-width suffix of the no-plus table.
        while (idx > 0 && cat.states[idx].cls == ClassLabel::Plus) --idx;
    }
    return cat.states[idx];
}

}  // namespace

Corpus sample_corpus(const ExplicitNEModel& m, const GeneratorOptions& opts) {
    if (opts.line_length == 0 || opts.lines_per_doc == 0) {
        throw DataError("generator needs positive line length and doc size");
    }
    std::mt19937_64 rng(opts.seed);
    TransitionCache cache(m);

    Corpus corpus;
    std::uint64_t emitted = 0;
    std::size_t line_in_doc = 0;
    std::size_t doc_index = 0;
    while (emitted < opts.token_count) {
        std::size_t want = static_cast<std::size_t>(
            std::min<std::uint64_t>(opts.line_length,
                                    opts.token_count - emitted));
        AnnotatedTranscript t;
        t.doc_id = opts.doc_prefix + "-" + std::to_string(doc_index);
        ClassSequence classes;
        ExplicitNEModel::State prev = m.boundary_state();
        for (std::size_t i = 0; i < want; ++i) {
            ExplicitNEModel::State cur =
                draw(cache.table(prev), i == 0, rng);
            classes.push_back(cur.cls);
            t.tokens.push_back(m.symbols().name(cur.word));
            prev = cur;
        }
        t.spans = extract_entities(t.tokens, classes);
        corpus.push_back(std::move(t));
        emitted += want;
        if (++line_in_doc == opts.lines_per_doc) {
            line_in_doc = 0;
            ++doc_index;
        }
    }
    return corpus;
}

}  // namespace netag
