#ifndef NETAG_TRANSCRIPT_HPP
#define NETAG_TRANSCRIPT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "netag/classes.hpp"

namespace netag {

using Token = std::string;

/// One annotated name: class plus a [start, start+length) token range.
struct EntitySpan {
    ClassLabel cls = ClassLabel::Other;
    std::size_t start = 0;
    std::size_t length = 0;

    bool operator==(const EntitySpan&) const = default;
};

/// A single annotated utterance: uppercase tokens plus non-overlapping
/// entity spans sorted by start position.
struct AnnotatedTranscript {
    std::string doc_id;
    std::vector<Token> tokens;
    std::vector<EntitySpan> spans;
};

using Corpus = std::vector<AnnotatedTranscript>;

/// Splits plain text on whitespace and uppercases ASCII letters.
std::vector<Token> tokenize(std::string_view text);

/// Parses one utterance in the inline annotation format, e.g.
///   TALKS WITH <ENAMEX TYPE="PERSON">ALAN TURING</ENAMEX> TODAY
/// Elements: ENAMEX (PERSON/LOCATION/ORGANIZATION), TIMEX (DATE/TIME),
/// NUMEX (MONEY/PERCENT).  Nesting is rejected.  Throws ParseError with
/// line/column on malformed input.
AnnotatedTranscript parse_markup(std::string_view text,
                                 std::string doc_id = "doc",
                                 std::size_t line_no = 1);

/// Canonical serialization: single spaces, uppercase attribute values,
/// no nesting.  parse_markup(write_markup(t)) reproduces t exactly.
std::string write_markup(const AnnotatedTranscript& t);

/// Per-token class encoding.  Span-initial tokens carry the span class and
/// span continuations carry Plus; each maximal untagged run starts with
/// Other and continues with Plus.
ClassSequence to_class_sequence(const AnnotatedTranscript& t);

/// Inverse of to_class_sequence restricted to entity runs.  Throws DataError
/// if lengths mismatch or classes[0] is Plus.
std::vector<EntitySpan> extract_entities(const std::vector<Token>& tokens,
                                         const ClassSequence& classes);

/// Reads a corpus file: utterances are single lines; `#DOC <id>` lines name
/// the document the following lines belong to; blank lines end a document.
Corpus read_corpus_file(const std::string& path);
Corpus parse_corpus_text(std::string_view text, std::string_view default_id);

/// Writes one annotated line per transcript, with `#DOC` headers whenever
/// the document id changes.
void write_corpus_file(const std::string& path, const Corpus& corpus);
std::string corpus_to_text(const Corpus& corpus);

}  // namespace netag

#endif  // NETAG_TRANSCRIPT_HPP
