#include <cmath>

#include "doctest.h"
#include "netag/decoder.hpp"
#include "netag/model_explicit.hpp"
#include "testutil.hpp"

using namespace netag;

namespace {

ExplicitNEModel train_text(const std::string& text, std::uint64_t cutoff,
                           const DiscountScheme& s,
                           Regime regime = Regime::Backoff,
                           std::uint64_t possible = 1000) {
    Corpus corpus = parse_corpus_text(text, "t");
    Vocabulary v = build_vocabulary(corpus, cutoff, possible);
    return train_explicit(corpus, v, s, regime);
}

// One line per class so the empirical class unigram is positive everywhere.
std::string coverage_lines(int repeat = 1) {
    std::string block =
        "<ENAMEX TYPE=\"PERSON\">PAT LEE</ENAMEX> SPOKE\n"
        "IN <ENAMEX TYPE=\"LOCATION\">UTAH</ENAMEX> TODAY\n"
        "<ENAMEX TYPE=\"ORGANIZATION\">ACME</ENAMEX> GAINED\n"
        "ON <TIMEX TYPE=\"DATE\">MONDAY</TIMEX> MAYBE\n"
        "AT <TIMEX TYPE=\"TIME\">NOON</TIMEX> PERHAPS\n"
        "<NUMEX TYPE=\"MONEY\">TEN DOLLARS</NUMEX> MORE\n"
        "<NUMEX TYPE=\"PERCENT\">TEN PERCENT</NUMEX> LESS\n";
    std::string out;
    for (int i = 0; i < repeat; ++i) out += block;
    return out;
}

}  // namespace

TEST_CASE("the worked example trains the continuation class transition") {
    std::string text =
        "AT THE <ENAMEX TYPE=\"ORGANIZATION\">RONALD REAGAN CENTER</ENAMEX> "
        "IN <ENAMEX TYPE=\"LOCATION\">SIMI VALLEY</ENAMEX> "
        "<ENAMEX TYPE=\"LOCATION\">CALIFORNIA</ENAMEX>\n" +
        coverage_lines();
    DiscountScheme s{DiscountKind::Absolute, 0.5, 7};
    ExplicitNEModel m = train_text(text, 0, s);
    // p(<+> | <organization>, RONALD) has a nonzero count.
    ContextKey ctx = ExplicitNEModel::key_cw(ClassLabel::Organization,
                                             *m.symbols().find("RONALD"));
    const auto* entry = m.class_chain_a().level(0).find(ctx);
    REQUIRE(entry != nullptr);
    CHECK(entry->find(class_index(ClassLabel::Plus)) != nullptr);
}

TEST_CASE("class unigram masses sum to one") {
    DiscountScheme s{DiscountKind::Absolute, 0.5, 7};
    ExplicitNEModel m = train_text(coverage_lines(3), 0, s);
    double sum = 0.0;
    for (const auto& [event, p] : m.class_chain_a().terminal().probs) {
        CHECK(p > 0.0);
        sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a class missing from training data is an error") {
    DiscountScheme s{DiscountKind::Absolute, 0.5, 7};
    CHECK_THROWS_AS(train_text("HELLO WORLD\n", 0, s), DataError);
}

TEST_CASE("cutoff 1 makes the unknown token a conditioning word") {
    std::mt19937_64 rng(2026);
    // A wide word pool over a small corpus leaves plenty of singletons.
    Corpus corpus = test::random_corpus(rng, 80, 400);
    Vocabulary v = build_vocabulary(corpus, 1);
    DiscountScheme s{DiscountKind::GtAbsCombined, {}, 7};
    ExplicitNEModel m = train_explicit(corpus, v, s);
    WordId unk = *m.symbols().find(kUnknownWord);
    bool found = false;
    for (const auto& [ctx, entry] : m.word_chain_a().level(0).contexts()) {
        if (static_cast<WordId>(ctx & 0xFFFFFFFFull) == unk) found = true;
    }
    CHECK(found);
}

TEST_CASE("joint transition distributions normalize, both decompositions") {
    std::mt19937_64 rng(404);
    RunConfig cfg;
    cfg.cutoff = 1;
    cfg.possible_vocab = 300;
    for (int round = 0; round < 6; ++round) {
        cfg.regime = round % 2 == 0 ? Regime::Backoff : Regime::Interpolation;
        cfg.scheme.kind = round % 3 == 0 ? DiscountKind::GtAbsCombined
                                         : DiscountKind::Absolute;
        AnyModel any =
            test::random_model(rng, ModelKind::Explicit, cfg, 50, 15);
        const auto& m = std::get<ExplicitNEModel>(any);
        const auto& words = m.vocabulary().words();
        for (int probe = 0; probe < 3; ++probe) {
            ExplicitNEModel::State prev{
                kAllClasses[test::uniform_index(rng, kNumClasses)],
                *m.symbols().find(
                    words[test::uniform_index(rng, words.size())])};
            CHECK(test::explicit_joint_sum(m, prev, false) ==
                  doctest::Approx(1.0).epsilon(1e-6));
            CHECK(test::explicit_joint_sum(m, prev, true) ==
                  doctest::Approx(1.0).epsilon(1e-6));
        }
        CHECK(test::explicit_joint_sum(m, m.boundary_state(), false) ==
              doctest::Approx(1.0).epsilon(1e-6));
        CHECK(test::explicit_joint_sum(m, m.boundary_state(), true) ==
              doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("a deterministic continuation scores log(1) = 0 without discounting") {
    // Counts above the Good-Turing ceiling are left at maximum likelihood,
    // so a single observed continuation carries probability exactly 1.
    std::string text;
    for (int i = 0; i < 100; ++i) text += "START FOLLOW\n";
    text += coverage_lines(20);
    DiscountScheme s{DiscountKind::GoodTuring, {}, 7};
    ExplicitNEModel m = train_text(text, 0, s);
    ExplicitNEModel::State prev{ClassLabel::Other, *m.symbols().find("START")};
    ExplicitNEModel::State cur{ClassLabel::Plus, *m.symbols().find("FOLLOW")};
    CHECK(m.transition_score_a(prev, cur) == 0.0);
}

TEST_CASE("uniform toy model: both decompositions coincide exactly") {
    std::string text;
    for (int i = 0; i < 25; ++i) {
        text += "S <ENAMEX TYPE=\"PERSON\">A</ENAMEX>\n";
        text += "S <ENAMEX TYPE=\"PERSON\">B</ENAMEX>\n";
        text += "S A\n";
        text += "S B\n";
    }
    text += coverage_lines(10);
    DiscountScheme s{DiscountKind::GoodTuring, {}, 7};
    ExplicitNEModel m = train_text(text, 0, s);
    ExplicitNEModel::State prev{ClassLabel::Other, *m.symbols().find("S")};
    for (ClassLabel c : {ClassLabel::Person, ClassLabel::Plus}) {
        for (const char* w : {"A", "B"}) {
            ExplicitNEModel::State cur{c, *m.symbols().find(w)};
            CHECK(m.transition_score_a(prev, cur) ==
                  m.transition_score_b(prev, cur));
            CHECK(m.transition_score_a(prev, cur) ==
                  doctest::Approx(std::log10(0.25)).epsilon(1e-12));
        }
    }
}

TEST_CASE("mixture endpoints are bit-identical to the pure decompositions") {
    std::mt19937_64 rng(31);
    RunConfig cfg;
    cfg.cutoff = 1;
    AnyModel any = test::random_model(rng, ModelKind::Explicit, cfg);
    const auto& m = std::get<ExplicitNEModel>(any);
    const auto& words = m.vocabulary().words();
    for (int probe = 0; probe < 50; ++probe) {
        ExplicitNEModel::State prev{
            kAllClasses[test::uniform_index(rng, kNumClasses)],
            *m.symbols().find(words[test::uniform_index(rng, words.size())])};
        ExplicitNEModel::State cur{
            kAllClasses[test::uniform_index(rng, kNumClasses)],
            *m.symbols().find(words[test::uniform_index(rng, words.size())])};
        double a = m.transition_score_a(prev, cur);
        double b = m.transition_score_b(prev, cur);
        CHECK(m.transition_score_mixture({0.0}, prev, cur) == a);
        CHECK(m.transition_score_mixture({1.0}, prev, cur) == b);
        CHECK(m.transition_score_mixture({0.5}, prev, cur) ==
              doctest::Approx(0.5 * a + 0.5 * b).epsilon(1e-12));
    }
}

TEST_CASE("emptied top level falls through to the weaker chain") {
    std::mt19937_64 rng(77);
    RunConfig cfg;
    cfg.cutoff = 1;
    AnyModel any = test::random_model(rng, ModelKind::Explicit, cfg);
    const auto& m = std::get<ExplicitNEModel>(any);
    SmoothingChain chain = m.word_chain_a();  // copy
    chain.level(0).contexts().clear();

    const auto& words = m.vocabulary().words();
    for (int probe = 0; probe < 30; ++probe) {
        ExplicitNEModel::State prev{
            kAllClasses[test::uniform_index(rng, kNumClasses)],
            *m.symbols().find(words[test::uniform_index(rng, words.size())])};
        ClassLabel cur_cls = kAllClasses[test::uniform_index(rng, kNumClasses)];
        WordId w = *m.symbols().find(
            words[test::uniform_index(rng, words.size())]);
        std::vector<ContextKey> full = m.word_a_contexts(prev, cur_cls);
        // With the top level gone the chain must answer exactly as the
        // weaker levels would.
        std::vector<ContextKey> weaker(full.begin() + 1, full.end());
        SmoothingChain weak_chain(
            {m.word_chain_a().level(1), m.word_chain_a().level(2),
             m.word_chain_a().level(3)},
            m.word_chain_a().terminal(), m.word_chain_a().regime());
        CHECK(chain.prob(full, w) == weak_chain.prob(weaker, w));
    }
}

TEST_CASE("bundled fixture: the explicit model recovers the rare name") {
    Corpus corpus =
        read_corpus_file(std::string(NETAG_FIXTURE_DIR) + "/lajous_train.txt");
    Vocabulary v = build_vocabulary(corpus, 1);
    DiscountScheme s{DiscountKind::GtAbsCombined, {}, 7};
    ExplicitNEModel m = train_explicit(corpus, v, s, Regime::Backoff);

    std::vector<Token> words{"DIRECTOR", "ADRIAN", "LAJOUS", "SAYS"};
    ClassSequence decoded = decode(m, words);
    ClassSequence person_path{ClassLabel::Other, ClassLabel::Person,
                              ClassLabel::Plus, ClassLabel::Other};
    CHECK(decoded == person_path);
    auto spans = extract_entities(words, decoded);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0] == EntitySpan{ClassLabel::Person, 1, 2});

    // The recovery rests on the continuation factors around the unknown
    // word: p(UNKNOWN | <+>, <person>) * p(<+> | <person>, ADRIAN).
    WordId unk = m.word_id_for_scoring("LAJOUS");
    CHECK(unk == *m.symbols().find(kUnknownWord));
    ExplicitNEModel::State prev{ClassLabel::Person,
                                *m.symbols().find("ADRIAN")};
    ExplicitNEModel::State cur{ClassLabel::Plus, unk};
    double name_score = m.transition_score_a(prev, cur);
    CHECK(std::isfinite(name_score));
    ExplicitNEModel::State prev_other{ClassLabel::Plus,
                                      *m.symbols().find("ADRIAN")};
    CHECK(name_score > m.transition_score_a(prev_other, cur));
}
