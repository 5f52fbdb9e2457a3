#include "netag/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "netag/errors.hpp"

namespace netag {

namespace {

constexpr int kSubCost = 4;
constexpr int kInsCost = 3;
constexpr int kDelCost = 3;

}  // namespace

Alignment align_words(const std::vector<Token>& ref,
                      const std::vector<Token>& hyp) {
    const std::size_t n = ref.size();
    const std::size_t m = hyp.size();
    // cost[i][j]: best cost aligning ref[0..i) with hyp[0..j).
    std::vector<std::vector<int>> cost(n + 1, std::vector<int>(m + 1, 0));
    std::vector<std::vector<AlignOpKind>> back(
        n + 1, std::vector<AlignOpKind>(m + 1, AlignOpKind::Match));
    for (std::size_t i = 1; i <= n; ++i) {
        cost[i][0] = static_cast<int>(i) * kDelCost;
        back[i][0] = AlignOpKind::Delete;
    }
    for (std::size_t j = 1; j <= m; ++j) {
        cost[0][j] = static_cast<int>(j) * kInsCost;
        back[0][j] = AlignOpKind::Insert;
    }
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            bool match = ref[i - 1] == hyp[j - 1];
            int best = cost[i - 1][j - 1] + (match ? 0 : kSubCost);
            AlignOpKind kind = match ? AlignOpKind::Match : AlignOpKind::Substitute;
            int del = cost[i - 1][j] + kDelCost;
            if (del < best) {
                best = del;
                kind = AlignOpKind::Delete;
            }
            int ins = cost[i][j - 1] + kInsCost;
            if (ins < best) {
                best = ins;
                kind = AlignOpKind::Insert;
            }
            cost[i][j] = best;
            back[i][j] = kind;
        }
    }

    Alignment out;
    std::size_t i = n, j = m;
    std::vector<AlignOp> rev;
    while (i > 0 || j > 0) {
        AlignOpKind kind = back[i][j];
        switch (kind) {
            case AlignOpKind::Match:
            case AlignOpKind::Substitute:
                rev.push_back({kind, static_cast<int>(i) - 1,
                               static_cast<int>(j) - 1});
                --i;
                --j;
                if (kind == AlignOpKind::Substitute) ++out.substitutions;
                break;
            case AlignOpKind::Delete:
                rev.push_back({kind, static_cast<int>(i) - 1, -1});
                --i;
                ++out.deletions;
                break;
            case AlignOpKind::Insert:
                rev.push_back({kind, -1, static_cast<int>(j) - 1});
                --j;
                ++out.insertions;
                break;
        }
    }
    out.ops.assign(rev.rbegin(), rev.rend());
    double denom = std::max<std::size_t>(n, 1);
    out.wer = static_cast<double>(out.substitutions + out.insertions +
                                  out.deletions) /
              denom;
    return out;
}

Metrics metrics(const ErrorCounts& c) {
    const double ref_total = c.correct + c.incorrect + c.missing;
    if (ref_total <= 0.0) {
        throw DataError("metrics undefined: no reference slots (C+I+M == 0)");
    }
    Metrics m;
    m.recall = c.correct / ref_total;
    const double hyp_total = c.correct + c.incorrect + c.spurious;
    m.precision = hyp_total > 0.0 ? c.correct / hyp_total : 0.0;
    m.pr = (m.recall + m.precision) > 0.0
               ? 2.0 * m.recall * m.precision / (m.recall + m.precision)
               : 0.0;
    m.ser = (c.incorrect + c.missing + c.spurious) / ref_total;
    return m;
}

namespace {

struct SlotColumns {
    // Column indices of the alignment touching this slot's tokens.
    std::size_t first = 0;
    std::size_t last = 0;  // inclusive
    bool empty = true;
};

SlotColumns slot_columns(const Alignment& a, const EntitySpan& span,
                         bool ref_side) {
    SlotColumns out;
    for (std::size_t col = 0; col < a.ops.size(); ++col) {
        int idx = ref_side ? a.ops[col].ref : a.ops[col].hyp;
        if (idx < 0) continue;
        auto u = static_cast<std::size_t>(idx);
        if (u >= span.start && u < span.start + span.length) {
            if (out.empty) {
                out.first = col;
                out.empty = false;
            }
            out.last = col;
        }
    }
    return out;
}

std::size_t overlap_columns(const SlotColumns& r, const SlotColumns& h,
                            const Alignment& a, const EntitySpan& ref_span,
                            const EntitySpan& hyp_span) {
    if (r.empty || h.empty) return 0;
    std::size_t lo = std::max(r.first, h.first);
    std::size_t hi = std::min(r.last, h.last);
    std::size_t n = 0;
    for (std::size_t col = lo; col <= hi && col < a.ops.size(); ++col) {
        const AlignOp& op = a.ops[col];
        bool in_ref = op.ref >= 0 &&
                      static_cast<std::size_t>(op.ref) >= ref_span.start &&
                      static_cast<std::size_t>(op.ref) <
                          ref_span.start + ref_span.length;
        bool in_hyp = op.hyp >= 0 &&
                      static_cast<std::size_t>(op.hyp) >= hyp_span.start &&
                      static_cast<std::size_t>(op.hyp) <
                          hyp_span.start + hyp_span.length;
        if (in_ref && in_hyp) ++n;
    }
    return n;
}

}  // namespace

ScoreReport score(const AnnotatedTranscript& ref,
                  const AnnotatedTranscript& hyp, ScoreMode mode) {
    Alignment a = align_words(ref.tokens, hyp.tokens);

    const auto& rs = ref.spans;
    const auto& hs = hyp.spans;
    std::vector<SlotColumns> ref_cols, hyp_cols;
    for (const auto& s : rs) ref_cols.push_back(slot_columns(a, s, true));
    for (const auto& s : hs) hyp_cols.push_back(slot_columns(a, s, false));

    // Candidate pairs by shared aligned columns, largest overlap first;
    // ties broken by reference then hypothesis position for determinism.
    struct Pair {
        std::size_t overlap;
        std::size_t ri;
        std::size_t hi;
    };
    std::vector<Pair> pairs;
    for (std::size_t ri = 0; ri < rs.size(); ++ri) {
        for (std::size_t hi = 0; hi < hs.size(); ++hi) {
            std::size_t ov =
                overlap_columns(ref_cols[ri], hyp_cols[hi], a, rs[ri], hs[hi]);
            if (ov > 0) pairs.push_back({ov, ri, hi});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
        if (x.overlap != y.overlap) return x.overlap > y.overlap;
        if (x.ri != y.ri) return x.ri < y.ri;
        return x.hi < y.hi;
    });

    std::vector<bool> ref_used(rs.size(), false), hyp_used(hs.size(), false);
    ScoreReport report;
    report.ref_slots = rs.size();
    report.hyp_slots = hs.size();
    const double components = mode == ScoreMode::Verbatim ? 2.0 : 3.0;

    for (const Pair& p : pairs) {
        if (ref_used[p.ri] || hyp_used[p.hi]) continue;
        ref_used[p.ri] = true;
        hyp_used[p.hi] = true;

        const SlotColumns& rc = ref_cols[p.ri];
        const SlotColumns& hc = hyp_cols[p.hi];
        double failed = 0.0;
        if (rs[p.ri].cls != hs[p.hi].cls) failed += 1.0;  // type
        if (rc.first != hc.first || rc.last != hc.last) failed += 1.0;  // extent
        if (mode == ScoreMode::Asr) {
            // content: every column the pair touches must be a match
            bool clean = true;
            std::size_t lo = std::min(rc.first, hc.first);
            std::size_t hi = std::max(rc.last, hc.last);
            for (std::size_t col = lo; col <= hi; ++col) {
                if (a.ops[col].kind != AlignOpKind::Match) clean = false;
            }
            if (!clean) failed += 1.0;
        }
        report.counts.correct += (components - failed) / components;
        report.counts.incorrect += failed / components;
    }
    for (std::size_t ri = 0; ri < rs.size(); ++ri) {
        if (!ref_used[ri]) report.counts.missing += 1.0;
    }
    for (std::size_t hi = 0; hi < hs.size(); ++hi) {
        if (!hyp_used[hi]) report.counts.spurious += 1.0;
    }

    report.wer = a.wer;
    const auto& c = report.counts;
    if (c.correct + c.incorrect + c.missing > 0.0) {
        report.metrics = metrics(c);
    } else {
        // No reference slots: perfect when nothing spurious was produced.
        report.metrics.recall = c.spurious > 0.0 ? 0.0 : 1.0;
        report.metrics.precision = c.spurious > 0.0 ? 0.0 : 1.0;
        report.metrics.pr = report.metrics.recall;
        report.metrics.ser =
            c.spurious > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return report;
}

ScoreReport score_corpus(const Corpus& ref, const Corpus& hyp,
                         ScoreMode mode) {
    if (ref.size() != hyp.size()) {
        throw DataError("reference and hypothesis have different line counts ("
                        + std::to_string(ref.size()) + " vs " +
                        std::to_string(hyp.size()) + ")");
    }
    ScoreReport total;
    std::size_t ref_words = 0;
    double errors = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        ScoreReport r = score(ref[i], hyp[i], mode);
        total.counts.correct += r.counts.correct;
        total.counts.incorrect += r.counts.incorrect;
        total.counts.missing += r.counts.missing;
        total.counts.spurious += r.counts.spurious;
        total.ref_slots += r.ref_slots;
        total.hyp_slots += r.hyp_slots;
        errors += r.wer * std::max<std::size_t>(ref[i].tokens.size(), 1);
        ref_words += ref[i].tokens.size();
    }
    total.wer = errors / std::max<std::size_t>(ref_words, 1);
    const auto& c = total.counts;
    if (c.correct + c.incorrect + c.missing > 0.0) {
        total.metrics = metrics(c);
    } else {
        total.metrics.recall = c.spurious > 0.0 ? 0.0 : 1.0;
        total.metrics.precision = total.metrics.recall;
        total.metrics.pr = total.metrics.recall;
        total.metrics.ser =
            c.spurious > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return total;
}

std::string report_line(const ScoreReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "C=%.6f I=%.6f M=%.6f S=%.6f R=%.6f P=%.6f PR=%.6f "
                  "SER=%.6f WER=%.6f",
                  r.counts.correct, r.counts.incorrect, r.counts.missing,
                  r.counts.spurious, r.metrics.recall, r.metrics.precision,
                  r.metrics.pr, r.metrics.ser, r.wer);
    return buf;
}

std::string report_table(const ScoreReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "slots: ref=%zu hyp=%zu\n"
                  "counts: correct=%.3f incorrect=%.3f missing=%.3f "
                  "spurious=%.3f\n"
                  "recall=%.4f precision=%.4f P&R=%.4f SER=%.4f WER=%.4f\n",
                  r.ref_slots, r.hyp_slots, r.counts.correct,
                  r.counts.incorrect, r.counts.missing, r.counts.spurious,
                  r.metrics.recall, r.metrics.precision, r.metrics.pr,
                  r.metrics.ser, r.wer);
    return buf;
}

}  // namespace netag
