#include "netag/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "netag/errors.hpp"

namespace netag {

std::optional<ModelKind> model_kind_from_name(std::string_view name) {
    if (name == "implicit") return ModelKind::Implicit;
    if (name == "explicit") return ModelKind::Explicit;
    return std::nullopt;
}

AnyModel train_model(const RunConfig& cfg, ModelKind kind,
                     const Corpus& corpus) {
    Vocabulary v = build_vocabulary(corpus, cfg.cutoff, cfg.possible_vocab);
    if (kind == ModelKind::Implicit) {
        return train_implicit(corpus, v, cfg.scheme, cfg.regime, cfg.order);
    }
    return train_explicit(corpus, v, cfg.scheme, cfg.regime);
}

ClassSequence decode_any(const AnyModel& m, const RunConfig& cfg,
                         const std::vector<Token>& words) {
    DecodeOptions opts;
    opts.candidates = cfg.tie_break;
    if (const auto* imp = std::get_if<ImplicitNEModel>(&m)) {
        return decode(*imp, words, opts);
    }
    return decode(std::get<ExplicitNEModel>(m), words,
                  MixtureSetting{cfg.mixture_k}, opts);
}

Corpus tag_corpus(const AnyModel& m, const RunConfig& cfg, const Corpus& in) {
    Corpus out;
    out.reserve(in.size());
    for (const auto& t : in) {
        AnnotatedTranscript hyp;
        hyp.doc_id = t.doc_id;
        hyp.tokens = t.tokens;
        if (!t.tokens.empty()) {
            ClassSequence classes = decode_any(m, cfg, t.tokens);
            hyp.spans = extract_entities(hyp.tokens, classes);
        }
        out.push_back(std::move(hyp));
    }
    return out;
}

namespace {

Corpus read_corpus_files(const std::vector<std::string>& paths) {
    Corpus all;
    for (const auto& p : paths) {
        Corpus c = read_corpus_file(p);
        all.insert(all.end(), std::make_move_iterator(c.begin()),
                   std::make_move_iterator(c.end()));
    }
    if (all.empty()) throw DataError("no transcripts found in the corpus input");
    return all;
}

// Plain text for tagging: one utterance per line, annotations absent.
Corpus read_plain_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open input file: " + path);
    Corpus out;
    std::string line;
    std::string doc_id = path;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line == "#DOC" || line.starts_with("#DOC ")) {
            doc_id = line.size() > 5 ? line.substr(5) : path;
            continue;
        }
        std::vector<Token> tokens = tokenize(line);
        if (tokens.empty()) continue;
        out.push_back({doc_id, std::move(tokens), {}});
    }
    return out;
}

Corpus strip_annotations(const Corpus& in) {
    Corpus out;
    out.reserve(in.size());
    for (const auto& t : in) out.push_back({t.doc_id, t.tokens, {}});
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write output file: " + path);
    out << text;
    if (!out) throw DataError("failed writing output file: " + path);
}

double corpus_pr(const AnyModel& m, const RunConfig& cfg, const Corpus& ref) {
    Corpus hyp = tag_corpus(m, cfg, strip_annotations(ref));
    return score_corpus(ref, hyp, cfg.score_mode).metrics.pr;
}

}  // namespace

void cmd_train(const RunConfig& cfg, ModelKind kind,
               const std::vector<std::string>& corpus_paths,
               const std::string& out_path, std::ostream& out) {
    Corpus corpus = read_corpus_files(corpus_paths);

    std::size_t tokens = 0;
    std::array<std::size_t, kNumClasses> class_freq{};
    for (const auto& t : corpus) {
        tokens += t.tokens.size();
        for (ClassLabel c : to_class_sequence(t)) {
            ++class_freq[class_index(c)];
        }
    }
    AnyModel model = train_model(cfg, kind, corpus);
    write_model(out_path, model);

    const Vocabulary& v = std::visit(
        [](const auto& m) -> const Vocabulary& { return m.vocabulary(); },
        model);
    out << "transcripts " << corpus.size() << "\n";
    out << "tokens " << tokens << "\n";
    out << "vocabulary " << v.size() << "\n";
    out << "possible-vocab " << v.possible_size() << "\n";
    std::size_t present = 0;
    for (ClassLabel c : kAllClasses) {
        out << "class " << class_name(c) << " "
            << class_freq[class_index(c)] << "\n";
        if (class_freq[class_index(c)] > 0) ++present;
    }
    out << "classes-present " << present << "\n";
    out << "model " << out_path << "\n";
}

void cmd_tag(const RunConfig& cfg, const std::string& model_path,
             const std::string& input_path, const std::string& out_path,
             std::ostream& out) {
    AnyModel model = read_model(model_path);
    std::ifstream in(input_path, std::ios::binary);
    if (!in) throw DataError("cannot open input file: " + input_path);

    std::string result;
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line == "#DOC" || line.starts_with("#DOC ")) {
            result += line;
            result += '\n';
            continue;
        }
        std::vector<Token> words = tokenize(line);
        ClassSequence classes = decode_any(model, cfg, words);
        AnnotatedTranscript t;
        t.tokens = std::move(words);
        t.spans = extract_entities(t.tokens, classes);
        result += write_markup(t);
        result += '\n';
        ++lines;
    }
    write_text_file(out_path, result);
    out << "tagged " << lines << " utterances -> " << out_path << "\n";
}

void cmd_score(const RunConfig& cfg, const std::string& ref_path,
               const std::string& hyp_path, std::ostream& out) {
    Corpus ref = read_corpus_file(ref_path);
    Corpus hyp = read_corpus_file(hyp_path);
    ScoreReport report = score_corpus(ref, hyp, cfg.score_mode);
    out << report_table(report);
    out << report_line(report) << "\n";
}

void cmd_generate(const RunConfig& cfg, const std::string& model_path,
                  std::uint64_t token_count, const std::string& out_path,
                  std::ostream& out) {
    AnyModel model = read_model(model_path);
    if (!is_explicit(model)) {
        throw DataError(
            "generation samples the explicit model's joint transitions; "
            "an implicit model file was given");
    }
    GeneratorOptions gopts;
    gopts.seed = cfg.seed;
    gopts.token_count = token_count;
    gopts.line_length = cfg.line_length;
    gopts.lines_per_doc = cfg.lines_per_doc;
    Corpus corpus = sample_corpus(std::get<ExplicitNEModel>(model), gopts);
    write_corpus_file(out_path, corpus);
    out << "generated " << token_count << " tokens over " << corpus.size()
        << " utterances -> " << out_path << "\n";
}

void cmd_self_train(const RunConfig& cfg, ModelKind kind,
                    const std::string& seed_corpus_path,
                    const std::string& unlabeled_path,
                    const std::optional<std::string>& heldout_path,
                    std::size_t iterations, const std::string& out_model_path,
                    std::ostream& out) {
    if (iterations < 1) throw DataError("self-train needs iterations >= 1");
    Corpus seed = read_corpus_files({seed_corpus_path});
    Corpus unlabeled = read_plain_file(unlabeled_path);
    std::optional<Corpus> heldout;
    if (heldout_path) heldout = read_corpus_file(*heldout_path);

    Corpus tagged;
    AnyModel model = train_model(cfg, kind, seed);
    for (std::size_t iter = 1; iter <= iterations; ++iter) {
        if (iter > 1) {
            Corpus combined = seed;
            combined.insert(combined.end(), tagged.begin(), tagged.end());
            model = train_model(cfg, kind, combined);
        }
        tagged = tag_corpus(model, cfg, unlabeled);
        out << "iter=" << iter;
        if (heldout) {
            out << " PR=" << corpus_pr(model, cfg, *heldout);
        }
        out << "\n";
    }
    write_model(out_model_path, model);
    out << "model " << out_model_path << "\n";
}

void cmd_learning_curve(const RunConfig& cfg, ModelKind kind,
                        const std::string& corpus_path,
                        const std::vector<double>& fractions,
                        const std::optional<std::string>& heldout_path,
                        std::ostream& out) {
    Corpus corpus = read_corpus_files({corpus_path});
    Corpus heldout;
    Corpus pool;
    if (heldout_path) {
        heldout = read_corpus_file(*heldout_path);
        pool = std::move(corpus);
    } else {
        // Last tenth held out when no separate evaluation corpus is given.
        std::size_t cut = corpus.size() - corpus.size() / 10;
        if (cut == corpus.size() && corpus.size() > 1) --cut;
        pool.assign(corpus.begin(), corpus.begin() + cut);
        heldout.assign(corpus.begin() + cut, corpus.end());
    }
    if (pool.empty() || heldout.empty()) {
        throw DataError("learning curve needs nonempty training and held-out data");
    }

    out << "fraction transcripts tokens PR\n";
    for (double f : fractions) {
        if (!(f > 0.0 && f <= 1.0)) {
            throw DataError("learning-curve fractions must lie in (0, 1]");
        }
        std::size_t n = static_cast<std::size_t>(
            std::ceil(f * static_cast<double>(pool.size())));
        n = std::min(n, pool.size());
        Corpus prefix(pool.begin(), pool.begin() + n);
        std::size_t tokens = 0;
        for (const auto& t : prefix) tokens += t.tokens.size();
        AnyModel model = train_model(cfg, kind, prefix);
        double pr = corpus_pr(model, cfg, heldout);
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.3f %zu %zu %.6f\n", f, n, tokens,
                      pr);
        out << buf;
    }
}

}  // namespace netag
