#ifndef NETAG_EVALUATION_HPP
#define NETAG_EVALUATION_HPP

#include "netag/transcript.hpp"

namespace netag {

enum class AlignOpKind { Match, Substitute, Insert, Delete };

/// One column of a word alignment.  Match/Substitute consume one token on
/// each side, Delete consumes a reference token, Insert a hypothesis token.
struct AlignOp {
    AlignOpKind kind = AlignOpKind::Match;
    int ref = -1;
    int hyp = -1;
};

struct Alignment {
    std::vector<AlignOp> ops;
    std::size_t substitutions = 0;
    std::size_t insertions = 0;
    std::size_t deletions = 0;
    /// (sub + ins + del) / reference length (denominator floored at 1).
    double wer = 0.0;
};

/// Minimum-cost word alignment under costs match 0, substitute 4,
/// insert/delete 3, with the deterministic preference match > substitute >
/// delete > insert on equal cost.
Alignment align_words(const std::vector<Token>& ref,
                      const std::vector<Token>& hyp);

/// Aligned-slot error counts.  A paired slot splits one slot's worth of
/// credit across its scored components, so C + I + M equals the reference
/// slot count and C + I + S the hypothesis slot count.
struct ErrorCounts {
    double correct = 0.0;    // C
    double incorrect = 0.0;  // I (fractional)
    double missing = 0.0;    // M
    double spurious = 0.0;   // S
};

struct Metrics {
    double recall = 0.0;
    double precision = 0.0;
    double pr = 0.0;   // harmonic mean of recall and precision
    double ser = 0.0;  // (I+M+S)/(C+I+M)
};

/// Exact formula application; throws DataError when C+I+M == 0.
/// recall+precision == 0 yields pr = 0.
Metrics metrics(const ErrorCounts& c);

enum class ScoreMode {
    /// Reference and hypothesis share the word sequence: paired slots are
    /// judged on type and extent, 1/2 slot each.
    Verbatim,
    /// Hypothesis words come from a recognizer: type, extent and content
    /// each weigh 1/3 of a slot.
    Asr,
};

struct ScoreReport {
    ErrorCounts counts;
    Metrics metrics;
    double wer = 0.0;
    std::size_t ref_slots = 0;
    std::size_t hyp_slots = 0;
};

/// Aligns the two token sequences, pairs slots by aligned-token overlap
/// (largest overlap first, at least one shared column), scores paired slots
/// per mode and counts unpaired reference/hypothesis slots as missing/
/// spurious.
ScoreReport score(const AnnotatedTranscript& ref,
                  const AnnotatedTranscript& hyp,
                  ScoreMode mode = ScoreMode::Verbatim);

/// Corpus-level scoring: counts summed over line pairs, metrics from the
/// totals.  Requires equally many lines.
ScoreReport score_corpus(const Corpus& ref, const Corpus& hyp,
                         ScoreMode mode = ScoreMode::Verbatim);

/// Machine-readable one-line form, 6 decimal places.
std::string report_line(const ScoreReport& r);
/// Human-readable table.
std::string report_table(const ScoreReport& r);

}  // namespace netag

#endif  // NETAG_EVALUATION_HPP
