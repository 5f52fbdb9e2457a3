#ifndef NETAG_CLI_HPP
#define NETAG_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "netag/config.hpp"
#include "netag/decoder.hpp"
#include "netag/generator.hpp"
#include "netag/model_io.hpp"

namespace netag {

enum class ModelKind { Implicit, Explicit };
std::optional<ModelKind> model_kind_from_name(std::string_view name);

/// Builds the vocabulary per the config and trains the requested model.
AnyModel train_model(const RunConfig& cfg, ModelKind kind,
                     const Corpus& corpus);

/// Decodes one utterance with either model under the config's tie-break
/// order (and mixture factor for explicit models).
ClassSequence decode_any(const AnyModel& m, const RunConfig& cfg,
                         const std::vector<Token>& words);

/// Tags every transcript's words and returns the hypothesis corpus.
Corpus tag_corpus(const AnyModel& m, const RunConfig& cfg, const Corpus& in);

// Command bodies.  All throw on failure (ParseError/DataError -> exit 2,
// DegeneracyError -> exit 3); on success they return normally.

void cmd_train(const RunConfig& cfg, ModelKind kind,
               const std::vector<std::string>& corpus_paths,
               const std::string& out_path, std::ostream& out);

void cmd_tag(const RunConfig& cfg, const std::string& model_path,
             const std::string& input_path, const std::string& out_path,
             std::ostream& out);

void cmd_score(const RunConfig& cfg, const std::string& ref_path,
               const std::string& hyp_path, std::ostream& out);

void cmd_generate(const RunConfig& cfg, const std::string& model_path,
                  std::uint64_t token_count, const std::string& out_path,
                  std::ostream& out);

void cmd_self_train(const RunConfig& cfg, ModelKind kind,
                    const std::string& seed_corpus_path,
                    const std::string& unlabeled_path,
                    const std::optional<std::string>& heldout_path,
                    std::size_t iterations, const std::string& out_model_path,
                    std::ostream& out);

void cmd_learning_curve(const RunConfig& cfg, ModelKind kind,
                        const std::string& corpus_path,
                        const std::vector<double>& fractions,
                        const std::optional<std::string>& heldout_path,
                        std::ostream& out);

}  // namespace netag

#endif  // NETAG_CLI_HPP
