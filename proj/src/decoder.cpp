#include "netag/decoder.hpp"

#include <algorithm>
#include <cmath>

#include "netag/errors.hpp"

namespace netag {

namespace {

// Candidate indices refer to positions in DecodeOptions::candidates, so
// lexicographic comparison of index paths is comparison under the declared
// tie-break order.
using IndexPath = std::vector<std::uint8_t>;

struct Cell {
    double score = -std::numeric_limits<double>::infinity();
    IndexPath path;
    bool reached = false;
};

void validate(const std::vector<Token>& words, const DecodeOptions& opts) {
    if (words.empty()) throw DataError("cannot decode an empty utterance");
    if (opts.candidates.empty())
        throw DataError("decoder needs a nonempty candidate class set");
    bool non_plus = false;
    for (ClassLabel c : opts.candidates) {
        if (c != ClassLabel::Plus) non_plus = true;
    }
    if (!non_plus)
        throw DataError("position 0 admits no class (only Plus supplied)");
}

bool better(double score, const IndexPath& path, const Cell& cur) {
    if (!cur.reached) return true;
    if (score > cur.score) return true;
    if (score < cur.score) return false;
    return std::lexicographical_compare(path.begin(), path.end(),
                                        cur.path.begin(), cur.path.end());
}

ClassSequence to_classes(const IndexPath& path, const DecodeOptions& opts) {
    ClassSequence out;
    out.reserve(path.size());
    for (auto idx : path) out.push_back(opts.candidates[idx]);
    return out;
}

// Candidate indices admissible at a position (Plus excluded at 0).
std::vector<std::uint8_t> admissible(const DecodeOptions& opts,
                                     bool first_position) {
    std::vector<std::uint8_t> out;
    for (std::size_t i = 0; i < opts.candidates.size(); ++i) {
        if (first_position && opts.candidates[i] == ClassLabel::Plus) continue;
        out.push_back(static_cast<std::uint8_t>(i));
    }
    return out;
}

std::uint64_t sequence_count(std::size_t num_candidates, std::size_t length) {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < length; ++i) {
        n *= num_candidates;
        if (n > 2'000'000) return n;  // early out, caller only compares
    }
    return n;
}

template <typename ScoreFn>
ClassSequence brute_force(const std::vector<Token>& words,
                          const DecodeOptions& opts, ScoreFn&& score_of) {
    validate(words, opts);
    if (sequence_count(opts.candidates.size(), words.size()) > 1'000'000) {
        throw DataError("brute-force decode refused: more than 10^6 sequences");
    }
    IndexPath current(words.size(), 0);
    Cell best;
    auto recurse = [&](auto&& self, std::size_t pos) -> void {
        if (pos == words.size()) {
            double s = score_of(current);
            // Enumeration is lexicographic, so on ties the first stays.
            if (!best.reached || s > best.score) {
                best.reached = true;
                best.score = s;
                best.path = current;
            }
            return;
        }
        for (std::uint8_t idx : admissible(opts, pos == 0)) {
            current[pos] = idx;
            self(self, pos + 1);
        }
    };
    recurse(recurse, 0);
    return to_classes(best.path, opts);
}

}  // namespace

// ---------------------------------------------------------------------------
// Implicit model: trigram Viterbi over (previous, current) candidate pairs.

namespace {

std::vector<ClassWordToken> position_candidates(const ImplicitNEModel& m,
                                                const Token& word,
                                                const DecodeOptions& opts) {
    std::vector<ClassWordToken> all = m.candidate_tokens(word);
    std::vector<ClassWordToken> out;
    for (ClassLabel c : opts.candidates) {
        out.push_back(all[class_index(c)]);
    }
    return out;
}

}  // namespace

ClassSequence decode(const ImplicitNEModel& m, const std::vector<Token>& words,
                     const DecodeOptions& opts) {
    validate(words, opts);
    const std::size_t m_len = words.size();
    const std::size_t nc = opts.candidates.size();
    std::vector<std::vector<ClassWordToken>> cands(m_len);
    for (std::size_t i = 0; i < m_len; ++i) {
        cands[i] = position_candidates(m, words[i], opts);
    }
    const ClassWordToken bos = m.start_token();
    const ClassWordToken eos = m.end_token();

    // dp[a][b]: best path ending with states (a at i-1, b at i).
    std::vector<std::vector<Cell>> dp(nc, std::vector<Cell>(nc));
    std::vector<std::vector<Cell>> next(nc, std::vector<Cell>(nc));

    auto first_admissible = admissible(opts, true);
    auto any_admissible = admissible(opts, false);

    if (m_len == 1) {
        Cell best;
        for (std::uint8_t b : first_admissible) {
            double s = m.token_score(bos, bos, cands[0][b]);
            s += m.token_score(bos, cands[0][b], eos);
            IndexPath p{b};
            if (better(s, p, best)) best = {s, std::move(p), true};
        }
        return to_classes(best.path, opts);
    }

    // Position 1 pairs seeded from position 0.
    for (std::uint8_t a : first_admissible) {
        double s0 = m.token_score(bos, bos, cands[0][a]);
        for (std::uint8_t b : any_admissible) {
            double s = s0 + m.token_score(bos, cands[0][a], cands[1][b]);
            IndexPath p{a, b};
            if (better(s, p, dp[a][b])) dp[a][b] = {s, std::move(p), true};
        }
    }

    for (std::size_t i = 2; i < m_len; ++i) {
        for (auto& row : next) {
            for (auto& cell : row) cell = Cell{};
        }
        for (std::uint8_t a : any_admissible) {
            for (std::uint8_t b : any_admissible) {
                // Transition from every pair (z, a) to (a, b).
                for (std::uint8_t z : any_admissible) {
                    const Cell& from = dp[z][a];
                    if (!from.reached) continue;
                    double s = from.score +
                               m.token_score(cands[i - 2][z], cands[i - 1][a],
                                             cands[i][b]);
                    if (!next[a][b].reached || s > next[a][b].score ||
                        (s == next[a][b].score &&
                         std::lexicographical_compare(
                             from.path.begin(), from.path.end(),
                             next[a][b].path.begin(),
                             next[a][b].path.end() - 1))) {
                        next[a][b].reached = true;
                        next[a][b].score = s;
                        next[a][b].path = from.path;
                        next[a][b].path.push_back(b);
                    }
                }
            }
        }
        dp.swap(next);
    }

    Cell best;
    for (std::uint8_t a : any_admissible) {
        for (std::uint8_t b : any_admissible) {
            const Cell& cell = dp[a][b];
            if (!cell.reached) continue;
            double s = cell.score +
                       m.token_score(cands[m_len - 2][a], cands[m_len - 1][b],
                                     eos);
            if (better(s, cell.path, best)) best = {s, cell.path, true};
        }
    }
    return to_classes(best.path, opts);
}

ClassSequence brute_force_decode(const ImplicitNEModel& m,
                                 const std::vector<Token>& words,
                                 const DecodeOptions& opts) {
    std::vector<std::vector<ClassWordToken>> cands(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
        cands[i] = position_candidates(m, words[i], opts);
    }
    const ClassWordToken bos = m.start_token();
    const ClassWordToken eos = m.end_token();
    return brute_force(words, opts, [&](const IndexPath& path) {
        double s = 0.0;
        ClassWordToken p2 = bos, p1 = bos;
        for (std::size_t i = 0; i < path.size(); ++i) {
            ClassWordToken cur = cands[i][path[i]];
            s += m.token_score(p2, p1, cur);
            p2 = p1;
            p1 = cur;
        }
        s += m.token_score(p2, p1, eos);
        return s;
    });
}

double path_score(const ImplicitNEModel& m, const std::vector<Token>& words,
                  const ClassSequence& classes) {
    if (words.size() != classes.size())
        throw DataError("token/class length mismatch in path_score");
    double s = 0.0;
    ClassWordToken p2 = m.start_token(), p1 = m.start_token();
    for (std::size_t i = 0; i < words.size(); ++i) {
        ClassWordToken cur =
            m.candidate_tokens(words[i])[class_index(classes[i])];
        s += m.token_score(p2, p1, cur);
        p2 = p1;
        p1 = cur;
    }
    s += m.token_score(p2, p1, m.end_token());
    return s;
}

// ---------------------------------------------------------------------------
// Explicit model: first-order Viterbi over classes.

ClassSequence decode(const ExplicitNEModel& m, const std::vector<Token>& words,
                     MixtureSetting mixture, const DecodeOptions& opts) {
    validate(words, opts);
    const std::size_t m_len = words.size();
    const std::size_t nc = opts.candidates.size();

    std::vector<WordId> ids(m_len);
    for (std::size_t i = 0; i < m_len; ++i) {
        ids[i] = m.word_id_for_scoring(words[i]);
    }

    std::vector<Cell> dp(nc), next(nc);
    for (std::uint8_t b : admissible(opts, true)) {
        ExplicitNEModel::State cur{opts.candidates[b], ids[0]};
        double s = m.transition_score_mixture(mixture, m.boundary_state(), cur);
        dp[b] = {s, IndexPath{b}, true};
    }
    auto any_admissible = admissible(opts, false);
    for (std::size_t i = 1; i < m_len; ++i) {
        for (auto& cell : next) cell = Cell{};
        for (std::uint8_t b : any_admissible) {
            ExplicitNEModel::State cur{opts.candidates[b], ids[i]};
            for (std::uint8_t a : any_admissible) {
                if (!dp[a].reached) continue;
                ExplicitNEModel::State prev{opts.candidates[a], ids[i - 1]};
                double s =
                    dp[a].score + m.transition_score_mixture(mixture, prev, cur);
                if (!next[b].reached || s > next[b].score ||
                    (s == next[b].score &&
                     std::lexicographical_compare(dp[a].path.begin(),
                                                  dp[a].path.end(),
                                                  next[b].path.begin(),
                                                  next[b].path.end() - 1))) {
                    next[b].reached = true;
                    next[b].score = s;
                    next[b].path = dp[a].path;
                    next[b].path.push_back(b);
                }
            }
        }
        dp.swap(next);
    }
    Cell best;
    for (std::uint8_t b : any_admissible) {
        if (dp[b].reached && better(dp[b].score, dp[b].path, best)) {
            best = dp[b];
        }
    }
    return to_classes(best.path, opts);
}

ClassSequence brute_force_decode(const ExplicitNEModel& m,
                                 const std::vector<Token>& words,
                                 MixtureSetting mixture,
                                 const DecodeOptions& opts) {
    std::vector<WordId> ids(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
        ids[i] = m.word_id_for_scoring(words[i]);
    }
    return brute_force(words, opts, [&](const IndexPath& path) {
        double s = 0.0;
        ExplicitNEModel::State prev = m.boundary_state();
        for (std::size_t i = 0; i < path.size(); ++i) {
            ExplicitNEModel::State cur{opts.candidates[path[i]], ids[i]};
            s += m.transition_score_mixture(mixture, prev, cur);
            prev = cur;
        }
        return s;
    });
}

double path_score(const ExplicitNEModel& m, const std::vector<Token>& words,
                  const ClassSequence& classes, MixtureSetting mixture) {
    if (words.size() != classes.size())
        throw DataError("token/class length mismatch in path_score");
    double s = 0.0;
    ExplicitNEModel::State prev = m.boundary_state();
    for (std::size_t i = 0; i < words.size(); ++i) {
        ExplicitNEModel::State cur{classes[i],
                                   m.word_id_for_scoring(words[i])};
        s += m.transition_score_mixture(mixture, prev, cur);
        prev = cur;
    }
    return s;
}

}  // namespace netag
