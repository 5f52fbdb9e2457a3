#ifndef NETAG_CONFIG_HPP
#define NETAG_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "netag/chain.hpp"
#include "netag/classes.hpp"
#include "netag/evaluation.hpp"

namespace netag {

/// Run-wide knobs shared by every command.  Defaults < config file <
/// command-line overrides; unknown config keys are rejected.
struct RunConfig {
    std::uint64_t cutoff = 1;
    std::uint64_t possible_vocab = 60000;
    DiscountScheme scheme;  // gt-abs, gt-max-r 7, abs-b auto
    Regime regime = Regime::Backoff;
    double mixture_k = 0.0;
    std::uint64_t seed = 1;
    int order = 3;
    ScoreMode score_mode = ScoreMode::Verbatim;
    /// Decoding candidate order; ties go to the earlier class.
    std::vector<ClassLabel> tie_break{kAllClasses.begin(), kAllClasses.end()};
    std::size_t line_length = 20;
    std::size_t lines_per_doc = 50;

    void validate() const;

    /// Applies one `key value` setting (config-file key or CLI flag name).
    void set(const std::string& key, const std::string& value);
};

/// Flat `key=value` lines; '#' starts a comment; blank lines ignored.
RunConfig load_config_file(const std::string& path, RunConfig base = {});

}  // namespace netag

#endif  // NETAG_CONFIG_HPP
