#include <cmath>

#include "doctest.h"
#include "netag/evaluation.hpp"
#include "netag/errors.hpp"
#include "testutil.hpp"

using namespace netag;

namespace {

// Independent quadratic edit-distance oracle: cost only, same weights.
int oracle_cost(const std::vector<Token>& ref, const std::vector<Token>& hyp) {
    std::vector<std::vector<int>> d(ref.size() + 1,
                                    std::vector<int>(hyp.size() + 1, 0));
    for (std::size_t i = 1; i <= ref.size(); ++i) d[i][0] = 3 * (int)i;
    for (std::size_t j = 1; j <= hyp.size(); ++j) d[0][j] = 3 * (int)j;
    for (std::size_t i = 1; i <= ref.size(); ++i) {
        for (std::size_t j = 1; j <= hyp.size(); ++j) {
            int diag = d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 4);
            d[i][j] = std::min({diag, d[i - 1][j] + 3, d[i][j - 1] + 3});
        }
    }
    return d[ref.size()][hyp.size()];
}

int alignment_cost(const Alignment& a) {
    return 4 * (int)a.substitutions + 3 * (int)a.insertions +
           3 * (int)a.deletions;
}

}  // namespace

TEST_CASE("identical sequences align as all matches with zero WER") {
    Alignment a = align_words({"A", "B", "C"}, {"A", "B", "C"});
    REQUIRE(a.ops.size() == 3);
    for (const auto& op : a.ops) CHECK(op.kind == AlignOpKind::Match);
    CHECK(a.wer == 0.0);
}

TEST_CASE("a dropped token aligns as a deletion") {
    Alignment a = align_words({"A", "B", "C"}, {"A", "C"});
    REQUIRE(a.ops.size() == 3);
    CHECK(a.ops[0].kind == AlignOpKind::Match);
    CHECK(a.ops[1].kind == AlignOpKind::Delete);
    CHECK(a.ops[1].ref == 1);
    CHECK(a.ops[2].kind == AlignOpKind::Match);
    CHECK(a.wer == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("an empty reference aligns as insertions") {
    Alignment a = align_words({}, {"A"});
    REQUIRE(a.ops.size() == 1);
    CHECK(a.ops[0].kind == AlignOpKind::Insert);
    CHECK(a.ops[0].hyp == 0);
}

TEST_CASE("alignment projections reproduce both sequences in order") {
    std::mt19937_64 rng(8);
    for (int round = 0; round < 200; ++round) {
        auto make = [&](std::size_t maxlen) {
            std::vector<Token> out;
            std::size_t n = test::uniform_index(rng, maxlen + 1);
            for (std::size_t i = 0; i < n; ++i) {
                out.push_back("W" + std::to_string(test::uniform_index(rng, 6)));
            }
            return out;
        };
        std::vector<Token> ref = make(20), hyp = make(20);
        Alignment a = align_words(ref, hyp);
        CHECK(alignment_cost(a) == oracle_cost(ref, hyp));
        std::vector<int> ref_idx, hyp_idx;
        for (const auto& op : a.ops) {
            if (op.ref >= 0) ref_idx.push_back(op.ref);
            if (op.hyp >= 0) hyp_idx.push_back(op.hyp);
        }
        CHECK(ref_idx.size() == ref.size());
        CHECK(hyp_idx.size() == hyp.size());
        for (std::size_t i = 0; i < ref_idx.size(); ++i)
            CHECK(ref_idx[i] == (int)i);
        for (std::size_t j = 0; j < hyp_idx.size(); ++j)
            CHECK(hyp_idx[j] == (int)j);
    }
}

TEST_CASE("type and extent errors each cost half a slot") {
    auto ref = parse_markup(
        "<ENAMEX TYPE=\"ORGANIZATION\">SOUTH YORKSHIRE BEEKEEPERS "
        "ASSOCIATION</ENAMEX>");
    auto hyp = parse_markup(
        "<ENAMEX TYPE=\"LOCATION\">SOUTH YORKSHIRE</ENAMEX> BEEKEEPERS "
        "ASSOCIATION");
    ScoreReport r = score(ref, hyp);
    CHECK(r.counts.correct == 0.0);
    CHECK(r.counts.incorrect == 1.0);
    CHECK(r.counts.missing == 0.0);
    CHECK(r.counts.spurious == 0.0);
    CHECK(r.metrics.recall == 0.0);
    CHECK(r.metrics.precision == 0.0);
    CHECK(r.metrics.pr == 0.0);
}

TEST_CASE("identical transcripts score perfectly") {
    auto t = parse_markup(
        "<ENAMEX TYPE=\"PERSON\">ADA</ENAMEX> MET "
        "<ENAMEX TYPE=\"PERSON\">GRACE</ENAMEX> IN "
        "<ENAMEX TYPE=\"LOCATION\">PARIS</ENAMEX>");
    ScoreReport r = score(t, t);
    CHECK(r.counts.correct == 3.0);
    CHECK(r.counts.incorrect == 0.0);
    CHECK(r.counts.missing == 0.0);
    CHECK(r.counts.spurious == 0.0);
    CHECK(r.metrics.pr == 1.0);
    CHECK(r.metrics.ser == 0.0);
    CHECK(r.wer == 0.0);
}

TEST_CASE("a content error costs a third of a slot in asr mode") {
    auto ref = parse_markup(
        "<ENAMEX TYPE=\"PERSON\">JOHN SMITH</ENAMEX> SPOKE");
    auto hyp = parse_markup(
        "<ENAMEX TYPE=\"PERSON\">JOHN SMYTHE</ENAMEX> SPOKE");
    ScoreReport r = score(ref, hyp, ScoreMode::Asr);
    CHECK(r.counts.correct == doctest::Approx(2.0 / 3.0));
    CHECK(r.counts.incorrect == doctest::Approx(1.0 / 3.0));
    // Verbatim mode sees type and extent only, both fine here.
    ScoreReport v = score(ref, hyp, ScoreMode::Verbatim);
    CHECK(v.counts.correct == 1.0);
}

TEST_CASE("metrics formulas") {
    SUBCASE("hand-applied counts") {
        Metrics m = metrics({8.0, 1.0, 1.0, 2.0});
        CHECK(m.recall == doctest::Approx(0.8));
        CHECK(m.precision == doctest::Approx(8.0 / 11.0));
        CHECK(m.ser == doctest::Approx(0.4));
    }
    SUBCASE("published hand-transcription rows") {
        // Counts chosen to yield the published recall/precision pairs.
        ErrorCounts t1{799.0, 0.0, 201.0, 799.0 / 0.865 - 799.0};
        Metrics m1 = metrics(t1);
        CHECK(m1.recall == doctest::Approx(0.799).epsilon(1e-9));
        CHECK(m1.precision == doctest::Approx(0.865).epsilon(1e-9));
        CHECK(std::abs(m1.pr - 0.831) < 0.0005);

        ErrorCounts t2{863.0, 0.0, 137.0, 863.0 / 0.922 - 863.0};
        Metrics m2 = metrics(t2);
        CHECK(std::abs(m2.pr - 0.892) < 0.0005);
    }
    SUBCASE("equal recall and precision collapse to the same value") {
        for (double x : {0.1, 0.5, 0.9}) {
            // C/(C+I+M) == C/(C+I+S) == x via symmetric counts.
            double c = x * 10.0;
            ErrorCounts counts{c, 0.0, 10.0 - c, 10.0 - c};
            Metrics m = metrics(counts);
            CHECK(m.recall == doctest::Approx(x));
            CHECK(m.precision == doctest::Approx(x));
            CHECK(m.pr == doctest::Approx(x));
        }
    }
    SUBCASE("no reference slots is an error") {
        CHECK_THROWS_AS(metrics({0.0, 0.0, 0.0, 5.0}), DataError);
    }
}

TEST_CASE("count conservation over random annotation perturbations") {
    std::mt19937_64 rng(515);
    for (int round = 0; round < 300; ++round) {
        Corpus pair = test::random_corpus(rng, 2, 8, 14, 0.4);
        const AnnotatedTranscript& ref = pair[0];
        // Perturb: reuse ref words, rebuild spans from the second line's
        // pattern, occasionally swap words.
        AnnotatedTranscript hyp = ref;
        for (auto& w : hyp.tokens) {
            if (test::uniform(rng) < 0.15) {
                w = "W" + std::to_string(test::uniform_index(rng, 8));
            }
        }
        if (test::uniform(rng) < 0.5 && !hyp.spans.empty()) {
            hyp.spans.erase(hyp.spans.begin() +
                            test::uniform_index(rng, hyp.spans.size()));
        }
        for (auto& s : hyp.spans) {
            if (test::uniform(rng) < 0.3) {
                s.cls = kEntityClasses[test::uniform_index(
                    rng, kEntityClasses.size())];
            }
        }
        ScoreMode mode =
            test::uniform(rng) < 0.5 ? ScoreMode::Verbatim : ScoreMode::Asr;
        ScoreReport r = score(ref, hyp, mode);
        CHECK(r.counts.correct + r.counts.incorrect + r.counts.missing ==
              doctest::Approx((double)ref.spans.size()).epsilon(1e-9));
        CHECK(r.counts.correct + r.counts.incorrect + r.counts.spurious ==
              doctest::Approx((double)hyp.spans.size()).epsilon(1e-9));
    }
}

TEST_CASE("self-scoring is perfect for random transcripts") {
    std::mt19937_64 rng(616);
    Corpus corpus = test::random_corpus(rng, 50, 12);
    for (const auto& t : corpus) {
        ScoreReport r = score(t, t);
        CHECK(r.metrics.ser == 0.0);
        CHECK(r.counts.incorrect == 0.0);
    }
}

TEST_CASE("dropping one slot yields exactly one missing") {
    auto ref = parse_markup(
        "<ENAMEX TYPE=\"PERSON\">ADA</ENAMEX> MET "
        "<ENAMEX TYPE=\"LOCATION\">PARIS</ENAMEX> CROWDS");
    AnnotatedTranscript hyp = ref;
    hyp.spans.pop_back();
    ScoreReport r = score(ref, hyp);
    CHECK(r.counts.missing == 1.0);
    CHECK(r.counts.correct == 1.0);
    CHECK(r.counts.incorrect == 0.0);
    CHECK(r.counts.spurious == 0.0);
}

TEST_CASE("corpus-level scoring sums counts and pools word errors") {
    Corpus ref = {parse_markup("<ENAMEX TYPE=\"PERSON\">ADA</ENAMEX> SPOKE"),
                  parse_markup("HELLO WORLD")};
    Corpus hyp = {parse_markup("<ENAMEX TYPE=\"PERSON\">ADA</ENAMEX> SPOKE"),
                  parse_markup("HELLO THERE")};
    ScoreReport r = score_corpus(ref, hyp);
    CHECK(r.counts.correct == 1.0);
    CHECK(r.metrics.pr == 1.0);
    CHECK(r.wer == doctest::Approx(0.25));
    CHECK_THROWS_AS(score_corpus(ref, {hyp[0]}), DataError);
}

TEST_CASE("report formats") {
    auto t = parse_markup("<ENAMEX TYPE=\"PERSON\">ADA</ENAMEX> SPOKE");
    ScoreReport r = score(t, t);
    std::string line = report_line(r);
    CHECK(line ==
          "C=1.000000 I=0.000000 M=0.000000 S=0.000000 R=1.000000 "
          "P=1.000000 PR=1.000000 SER=0.000000 WER=0.000000");
    CHECK(report_table(r).find("recall=1.0000") != std::string::npos);
}
