#include "doctest.h"
#include "netag/errors.hpp"
#include "netag/transcript.hpp"
#include "netag/vocabulary.hpp"
#include "testutil.hpp"

using namespace netag;

TEST_CASE("parse_markup extracts tokens and spans") {
    auto t = parse_markup("<ENAMEX TYPE=\"PERSON\">ALAN TURING</ENAMEX>");
    CHECK(t.tokens == std::vector<Token>{"ALAN", "TURING"});
    REQUIRE(t.spans.size() == 1);
    CHECK(t.spans[0] == EntitySpan{ClassLabel::Person, 0, 2});
}

TEST_CASE("parse_markup plain text has no spans") {
    auto t = parse_markup("HELLO WORLD");
    CHECK(t.tokens.size() == 2);
    CHECK(t.spans.empty());
}

TEST_CASE("parse_markup uppercases and splits on whitespace") {
    auto t = parse_markup("  hello\tWorld  ");
    CHECK(t.tokens == std::vector<Token>{"HELLO", "WORLD"});
}

TEST_CASE("parse_markup rejects nesting") {
    CHECK_THROWS_AS(
        parse_markup("<ENAMEX TYPE=\"ORGANIZATION\">A <ENAMEX "
                     "TYPE=\"LOCATION\">B</ENAMEX></ENAMEX>"),
        ParseError);
}

TEST_CASE("parse_markup rejects malformed input") {
    CHECK_THROWS_AS(parse_markup("<ENAMEX TYPE=\"PERSON\">A B"), ParseError);
    CHECK_THROWS_AS(parse_markup("A</ENAMEX>"), ParseError);
    CHECK_THROWS_AS(parse_markup("<ENAMEX TYPE=\"PRESIDENT\">A</ENAMEX>"),
                    ParseError);
    CHECK_THROWS_AS(parse_markup("<TIMEX TYPE=\"MONEY\">A</TIMEX>"),
                    ParseError);
    CHECK_THROWS_AS(parse_markup("<ENAMEX TYPE=\"PERSON\"></ENAMEX>"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_markup("<ENAMEX TYPE=\"PERSON\">A</TIMEX>"), ParseError);
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_markup("AA <ENAMEX TYPE=\"X\">B</ENAMEX>", "doc", 7);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 7);
        CHECK(e.column() == 4);
    }
}

TEST_CASE("element/type combinations map to the seven entity classes") {
    CHECK(parse_markup("<TIMEX TYPE=\"DATE\">MAY</TIMEX>").spans[0].cls ==
          ClassLabel::Date);
    CHECK(parse_markup("<TIMEX TYPE=\"TIME\">NOON</TIMEX>").spans[0].cls ==
          ClassLabel::Time);
    CHECK(parse_markup("<NUMEX TYPE=\"MONEY\">FIVE DOLLARS</NUMEX>")
              .spans[0].cls == ClassLabel::Money);
    CHECK(parse_markup("<NUMEX TYPE=\"PERCENT\">TEN PERCENT</NUMEX>")
              .spans[0].cls == ClassLabel::Percent);
    CHECK(parse_markup("<ENAMEX TYPE=\"LOCATION\">UTAH</ENAMEX>")
              .spans[0].cls == ClassLabel::Location);
    CHECK(parse_markup("<ENAMEX TYPE=\"ORGANIZATION\">NIST</ENAMEX>")
              .spans[0].cls == ClassLabel::Organization);
}

namespace {

AnnotatedTranscript ronald_reagan_line() {
    return parse_markup(
        "AT THE <ENAMEX TYPE=\"ORGANIZATION\">RONALD REAGAN "
        "CENTER</ENAMEX> IN <ENAMEX TYPE=\"LOCATION\">SIMI "
        "VALLEY</ENAMEX> <ENAMEX TYPE=\"LOCATION\">CALIFORNIA</ENAMEX>");
}

}  // namespace

TEST_CASE("class sequence encoding of the nine-token worked example") {
    auto t = ronald_reagan_line();
    REQUIRE(t.tokens.size() == 9);
    REQUIRE(t.spans.size() == 3);
    CHECK(t.spans[0] == EntitySpan{ClassLabel::Organization, 2, 3});
    CHECK(t.spans[1] == EntitySpan{ClassLabel::Location, 6, 2});
    CHECK(t.spans[2] == EntitySpan{ClassLabel::Location, 8, 1});

    ClassSequence expected = {
        ClassLabel::Other,        ClassLabel::Plus, ClassLabel::Organization,
        ClassLabel::Plus,         ClassLabel::Plus, ClassLabel::Other,
        ClassLabel::Location,     ClassLabel::Plus, ClassLabel::Location,
    };
    CHECK(to_class_sequence(t) == expected);
}

TEST_CASE("single untagged token encodes as Other") {
    AnnotatedTranscript t{"d", {"HELLO"}, {}};
    CHECK(to_class_sequence(t) == ClassSequence{ClassLabel::Other});
}

TEST_CASE("adjacent same-class spans restart the class, no Plus") {
    AnnotatedTranscript t{"d",
                          {"SIMI", "CALIFORNIA"},
                          {{ClassLabel::Location, 0, 1},
                           {ClassLabel::Location, 1, 1}}};
    CHECK(to_class_sequence(t) ==
          ClassSequence{ClassLabel::Location, ClassLabel::Location});
}

TEST_CASE("extract_entities inverts the worked example") {
    auto t = ronald_reagan_line();
    CHECK(extract_entities(t.tokens, to_class_sequence(t)) == t.spans);
}

TEST_CASE("extract_entities of an all-Other run is empty") {
    std::vector<Token> tokens{"A", "B", "C"};
    ClassSequence classes{ClassLabel::Other, ClassLabel::Plus,
                          ClassLabel::Plus};
    CHECK(extract_entities(tokens, classes).empty());
}

TEST_CASE("extract_entities contract violations") {
    std::vector<Token> tokens{"A", "B"};
    CHECK_THROWS_AS(
        extract_entities(tokens, {ClassLabel::Plus, ClassLabel::Other}),
        DataError);
    CHECK_THROWS_AS(extract_entities(tokens, {ClassLabel::Other}), DataError);
}

TEST_CASE("round-trip: encode then extract reproduces spans, 1000 cases") {
    std::mt19937_64 rng(20260808);
    for (int i = 0; i < 10; ++i) {
        Corpus corpus = test::random_corpus(rng, 100, 20);
        for (const auto& t : corpus) {
            auto classes = to_class_sequence(t);
            REQUIRE(classes.size() == t.tokens.size());
            if (!classes.empty()) CHECK(classes[0] != ClassLabel::Plus);
            CHECK(extract_entities(t.tokens, classes) == t.spans);
        }
    }
}

TEST_CASE("writer emits canonical form and round-trips") {
    auto t = ronald_reagan_line();
    std::string canon = write_markup(t);
    CHECK(canon ==
          "AT THE <ENAMEX TYPE=\"ORGANIZATION\">RONALD REAGAN CENTER</ENAMEX> "
          "IN <ENAMEX TYPE=\"LOCATION\">SIMI VALLEY</ENAMEX> "
          "<ENAMEX TYPE=\"LOCATION\">CALIFORNIA</ENAMEX>");
    // Byte-identical re-serialization of canonical input.
    auto again = parse_markup(canon);
    CHECK(write_markup(again) == canon);

    std::mt19937_64 rng(11);
    for (const auto& r : test::random_corpus(rng, 50, 15)) {
        std::string s = write_markup(r);
        auto parsed = parse_markup(s, r.doc_id);
        CHECK(parsed.tokens == r.tokens);
        CHECK(parsed.spans == r.spans);
        CHECK(write_markup(parsed) == s);
    }
}

TEST_CASE("corpus files: #DOC headers, blank separators") {
    std::string text =
        "#DOC first\n"
        "HELLO WORLD\n"
        "<ENAMEX TYPE=\"PERSON\">ADA</ENAMEX> SPOKE\n"
        "\n"
        "#DOC second\n"
        "BYE\n";
    Corpus c = parse_corpus_text(text, "t");
    REQUIRE(c.size() == 3);
    CHECK(c[0].doc_id == "first");
    CHECK(c[1].doc_id == "first");
    CHECK(c[2].doc_id == "second");
    CHECK(c[1].spans.size() == 1);

    std::string round = corpus_to_text(c);
    Corpus c2 = parse_corpus_text(round, "t");
    REQUIRE(c2.size() == 3);
    CHECK(c2[2].doc_id == "second");
    CHECK(corpus_to_text(c2) == round);
}

TEST_CASE("build_vocabulary applies the frequency cutoff") {
    Corpus corpus = {
        {"d", {"A", "A", "A", "B"}, {}},
    };
    SUBCASE("cutoff 1 keeps words occurring more than once, adds unknown") {
        Vocabulary v = build_vocabulary(corpus, 1);
        CHECK(v.size() == 2);
        CHECK(v.contains("A"));
        CHECK(v.contains(kUnknownWord));
        CHECK_FALSE(v.contains("B"));
        CHECK(v.has_unknown());
    }
    SUBCASE("cutoff 0 keeps everything, no unknown") {
        Vocabulary v = build_vocabulary(corpus, 0);
        CHECK(v.size() == 2);
        CHECK(v.contains("A"));
        CHECK(v.contains("B"));
        CHECK_FALSE(v.has_unknown());
    }
    SUBCASE("empty corpus is an error") {
        CHECK_THROWS_AS(build_vocabulary({}, 1), DataError);
    }
    SUBCASE("possible size must cover the word list") {
        CHECK_THROWS_AS(build_vocabulary(corpus, 0, 1), DataError);
    }
}

TEST_CASE("map_oov replaces out-of-vocabulary words only with unknown") {
    Corpus corpus = {{"d", {"ADRIAN", "ADRIAN", "X", "X"}, {}}};
    Vocabulary with_unknown = build_vocabulary(corpus, 1);
    std::vector<Token> in{"ADRIAN", "LAJOUS"};
    CHECK(map_oov(in, with_unknown) ==
          std::vector<Token>{"ADRIAN", kUnknownWord});
    CHECK(map_oov({"ADRIAN", "X"}, with_unknown) ==
          std::vector<Token>{"ADRIAN", "X"});

    Vocabulary no_unknown = build_vocabulary(corpus, 0);
    CHECK(map_oov(in, no_unknown) == in);
}
