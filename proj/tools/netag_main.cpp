// netag: train, run and score statistical named-entity taggers over
// broadcast-news style transcripts.

#include <iostream>

#include "CLI11.hpp"
#include "netag/cli.hpp"
#include "netag/errors.hpp"

namespace {

struct SharedFlags {
    std::string config_path;
    std::string cutoff, possible_vocab, discount, gt_max_r, abs_b, regime;
    std::string mixture_k, seed, order, score_mode, tie_break;
    std::string line_length, lines_per_doc;

    std::vector<std::pair<const char*, const std::string*>> entries() const {
        return {
            {"cutoff", &cutoff},
            {"possible-vocab", &possible_vocab},
            {"discount", &discount},
            {"gt-max-r", &gt_max_r},
            {"abs-b", &abs_b},
            {"regime", &regime},
            {"mixture-k", &mixture_k},
            {"seed", &seed},
            {"order", &order},
            {"score-mode", &score_mode},
            {"tie-break", &tie_break},
            {"line-length", &line_length},
            {"lines-per-doc", &lines_per_doc},
        };
    }
};

void add_shared(CLI::App& app, SharedFlags& f) {
    app.add_option("--config", f.config_path, "config file (key=value lines)");
    app.add_option("--cutoff", f.cutoff, "vocabulary frequency cutoff");
    app.add_option("--possible-vocab", f.possible_vocab,
                   "possible vocabulary size |W|");
    app.add_option("--discount", f.discount, "gt|abs|gt-abs|del");
    app.add_option("--gt-max-r", f.gt_max_r, "largest Good-Turing count");
    app.add_option("--abs-b", f.abs_b, "absolute discount constant or 'auto'");
    app.add_option("--regime", f.regime, "interp|backoff");
    app.add_option("--mixture-k", f.mixture_k,
                   "decomposition mixture factor in [0,1]");
    app.add_option("--seed", f.seed, "random seed");
    app.add_option("--order", f.order, "implicit model order (1..3)");
    app.add_option("--score-mode", f.score_mode, "verbatim|asr");
    app.add_option("--tie-break", f.tie_break,
                   "comma-separated class order for tie-breaking");
    app.add_option("--line-length", f.line_length,
                   "generated tokens per utterance");
    app.add_option("--lines-per-doc", f.lines_per_doc,
                   "generated utterances per document");
}

netag::RunConfig make_config(const SharedFlags& f) {
    netag::RunConfig cfg;
    if (!f.config_path.empty()) {
        cfg = netag::load_config_file(f.config_path, cfg);
    }
    for (const auto& [key, value] : f.entries()) {
        if (!value->empty()) cfg.set(key, *value);
    }
    cfg.validate();
    return cfg;
}

netag::ModelKind parse_kind(const std::string& s) {
    auto kind = netag::model_kind_from_name(s);
    if (!kind) {
        throw netag::DataError("unknown model kind '" + s +
                               "' (expected implicit or explicit)");
    }
    return *kind;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statistical named-entity tagger for transcripts"};
    app.require_subcommand(1);
    app.fallthrough();

    SharedFlags flags;
    add_shared(app, flags);

    std::string model_kind = "explicit";
    app.add_option("--model-kind", model_kind, "implicit|explicit");

    // train
    auto* train = app.add_subcommand("train", "estimate a model from annotated transcripts");
    std::vector<std::string> train_corpora;
    std::string train_out;
    train->add_option("corpus", train_corpora, "annotated corpus file(s)")
        ->required();
    train->add_option("--out", train_out, "model output path")->required();

    // tag
    auto* tag = app.add_subcommand("tag", "annotate plain text with a trained model");
    std::string tag_model, tag_in, tag_out;
    tag->add_option("--model", tag_model, "model file")->required();
    tag->add_option("input", tag_in, "plain text, one utterance per line")
        ->required();
    tag->add_option("--out", tag_out, "annotated output path")->required();

    // score
    auto* score = app.add_subcommand("score", "score a hypothesis against a reference");
    std::string score_ref, score_hyp;
    score->add_option("reference", score_ref, "reference corpus")->required();
    score->add_option("hypothesis", score_hyp, "hypothesis corpus")->required();

    // generate
    auto* gen = app.add_subcommand("generate", "sample a synthetic annotated corpus");
    std::string gen_model, gen_out;
    std::uint64_t gen_tokens = 10000;
    gen->add_option("--model", gen_model, "explicit generator model")->required();
    gen->add_option("--tokens", gen_tokens, "number of tokens to sample");
    gen->add_option("--out", gen_out, "corpus output path")->required();

    // self-train
    auto* st = app.add_subcommand("self-train", "iterative training on automatically tagged text");
    std::string st_seed, st_unlabeled, st_out;
    std::string st_heldout;
    std::size_t st_iterations = 3;
    st->add_option("--seed-corpus", st_seed, "annotated seed corpus")->required();
    st->add_option("--unlabeled", st_unlabeled, "plain text to tag")->required();
    st->add_option("--heldout", st_heldout, "annotated held-out corpus for P&R logging");
    st->add_option("--iterations", st_iterations, "number of iterations");
    st->add_option("--out", st_out, "final model output path")->required();

    // learning-curve
    auto* lc = app.add_subcommand("learning-curve", "P&R as a function of training size");
    std::string lc_corpus, lc_heldout;
    std::vector<double> lc_fractions;
    lc->add_option("corpus", lc_corpus, "annotated corpus")->required();
    lc->add_option("--fractions", lc_fractions, "training fractions in (0,1]")
        ->delimiter(',');
    lc->add_option("--heldout", lc_heldout, "annotated held-out corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        netag::RunConfig cfg = make_config(flags);
        netag::ModelKind kind = parse_kind(model_kind);
        if (train->parsed()) {
            netag::cmd_train(cfg, kind, train_corpora, train_out, std::cout);
        } else if (tag->parsed()) {
            netag::cmd_tag(cfg, tag_model, tag_in, tag_out, std::cout);
        } else if (score->parsed()) {
            netag::cmd_score(cfg, score_ref, score_hyp, std::cout);
        } else if (gen->parsed()) {
            netag::cmd_generate(cfg, gen_model, gen_tokens, gen_out,
                                std::cout);
        } else if (st->parsed()) {
            netag::cmd_self_train(
                cfg, kind, st_seed, st_unlabeled,
                st_heldout.empty() ? std::nullopt
                                   : std::optional<std::string>(st_heldout),
                st_iterations, st_out, std::cout);
        } else if (lc->parsed()) {
            if (lc_fractions.empty()) {
                lc_fractions = {0.1, 0.2, 0.4, 0.6, 0.8, 1.0};
            }
            netag::cmd_learning_curve(
                cfg, kind, lc_corpus, lc_fractions,
                lc_heldout.empty() ? std::nullopt
                                   : std::optional<std::string>(lc_heldout),
                std::cout);
        }
    } catch (const netag::DegeneracyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const netag::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
