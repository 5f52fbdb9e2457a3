#ifndef NETAG_TESTS_TESTUTIL_HPP
#define NETAG_TESTS_TESTUTIL_HPP

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "netag/cli.hpp"
#include "netag/errors.hpp"
#include "netag/generator.hpp"
#include "netag/transcript.hpp"

namespace netag::test {

inline double uniform(std::mt19937_64& rng) { return next_double(rng); }

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(uniform(rng) * static_cast<double>(n)) %
           n;
}

/// Small random annotated corpus.  Guarantees every class occurs (each
/// entity class as a span, Plus via a length-2 span, Other via untagged
/// words) so the explicit model always trains.
inline Corpus random_corpus(std::mt19937_64& rng, std::size_t lines,
                            std::size_t vocab_size,
                            std::size_t max_line_len = 12,
                            double entity_rate = 0.3) {
    std::vector<std::string> pool;
    for (std::size_t i = 0; i < vocab_size; ++i) {
        pool.push_back("W" + std::to_string(i));
    }
    Corpus corpus;
    for (std::size_t li = 0; li < lines; ++li) {
        AnnotatedTranscript t;
        t.doc_id = "rand-" + std::to_string(li / 10);
        std::size_t len = 3 + uniform_index(rng, max_line_len);
        std::size_t i = 0;
        while (i < len) {
            if (uniform(rng) < entity_rate) {
                ClassLabel cls =
                    kEntityClasses[uniform_index(rng, kEntityClasses.size())];
                std::size_t span_len = 1 + uniform_index(rng, 2);
                span_len = std::min(span_len, len - i);
                t.spans.push_back({cls, i, span_len});
                for (std::size_t k = 0; k < span_len; ++k) {
                    t.tokens.push_back(pool[uniform_index(rng, pool.size())]);
                }
                i += span_len;
            } else {
                t.tokens.push_back(pool[uniform_index(rng, pool.size())]);
                ++i;
            }
        }
        corpus.push_back(std::move(t));
    }
    // One deterministic line covering every class.
    AnnotatedTranscript cover;
    cover.doc_id = "rand-cover";
    std::size_t pos = 0;
    for (ClassLabel cls : kEntityClasses) {
        cover.tokens.push_back(pool[pos % pool.size()]);
        cover.tokens.push_back(pool[(pos + 1) % pool.size()]);
        cover.spans.push_back({cls, pos, 2});
        ++pos;
        ++pos;
        cover.tokens.push_back(pool[pos % pool.size()]);  // untagged
        ++pos;
    }
    corpus.push_back(std::move(cover));
    return corpus;
}

/// Random corpus plus a trained model of the requested kind; retries a few
/// seeds when a random corpus makes pure Good-Turing inapplicable.
inline AnyModel random_model(std::mt19937_64& rng, ModelKind kind,
                             const RunConfig& cfg, std::size_t lines = 60,
                             std::size_t vocab = 30) {
    for (int attempt = 0; attempt < 50; ++attempt) {
        Corpus corpus = random_corpus(rng, lines, vocab);
        try {
            return train_model(cfg, kind, corpus);
        } catch (const SchemeInapplicableError&) {
        } catch (const DegeneracyError&) {
        }
    }
    throw std::runtime_error("random_model: no trainable corpus in 50 draws");
}

/// Probability mass of the full event alphabet given a two-token history:
/// all (class, vocab word) tokens, the end token, and the novel-event block
/// covering the rest of the possible vocabulary.
inline double implicit_distribution_sum(const ImplicitNEModel& m,
                                        ClassWordToken p2, ClassWordToken p1) {
    double sum = 0.0;
    auto ctx = m.context_keys(p2, p1);
    for (ClassLabel c : kAllClasses) {
        for (const auto& w : m.vocabulary().words()) {
            ClassWordToken cur{c, *m.symbols().find(w)};
            sum += std::pow(10.0, m.token_score(p2, p1, cur));
        }
    }
    sum += std::pow(10.0, m.token_score(p2, p1, m.end_token()));
    double novel = m.novel_event_prob(p2, p1);
    double known = static_cast<double>(kNumClasses) *
                   static_cast<double>(m.vocabulary().size());
    double possible = static_cast<double>(kNumClasses) *
                      static_cast<double>(m.vocabulary().possible_size());
    sum += (possible - known) * novel;
    (void)ctx;
    return sum;
}

/// Joint mass over (class, word) of one transition, decomposition A or B.
inline double explicit_joint_sum(const ExplicitNEModel& m,
                                 ExplicitNEModel::State prev, bool decomp_b) {
    double sum = 0.0;
    for (ClassLabel c : kAllClasses) {
        for (const auto& w : m.vocabulary().words()) {
            ExplicitNEModel::State cur{c, *m.symbols().find(w)};
            double s = decomp_b ? m.transition_score_b(prev, cur)
                                : m.transition_score_a(prev, cur);
            sum += std::pow(10.0, s);
        }
        ExplicitNEModel::State novel{c, kNovelWordId};
        double s = decomp_b ? m.transition_score_b(prev, novel)
                            : m.transition_score_a(prev, novel);
        sum += static_cast<double>(m.vocabulary().possible_size() -
                                   m.vocabulary().size()) *
               std::pow(10.0, s);
    }
    return sum;
}

class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        for (int i = 0; i < 10000; ++i) {
            auto p = base / ("netag-test-" + std::to_string(::getpid()) + "-" +
                             std::to_string(counter_++));
            std::error_code ec;
            if (std::filesystem::create_directory(p, ec)) {
                path_ = p;
                return;
            }
        }
        throw std::runtime_error("cannot create temp dir");
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const {
        return (path_ / name).string();
    }

private:
    static inline int counter_ = 0;
    std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (f == nullptr) throw std::runtime_error("cannot read " + path);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) out.append(buf, n);
    std::fclose(f);
    return out;
}

inline void write_file(const std::string& path, const std::string& text) {
    FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) throw std::runtime_error("cannot write " + path);
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
}

}  // namespace netag::test

#endif  // NETAG_TESTS_TESTUTIL_HPP
