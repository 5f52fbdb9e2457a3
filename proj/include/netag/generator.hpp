#ifndef NETAG_GENERATOR_HPP
#define NETAG_GENERATOR_HPP

#include <cstdint>
#include <random>

#include "netag/model_explicit.hpp"

namespace netag {

struct GeneratorOptions {
    std::uint64_t seed = 1;
    std::uint64_t token_count = 10000;
    std::size_t line_length = 20;
    std::size_t lines_per_doc = 50;
    std::string doc_prefix = "gen";
};

/// Samples an annotated corpus from an explicit model's joint transition
/// distribution, one (class, word) pair at a time from the boundary state.
/// Plus is excluded (and the distribution renormalized) at line starts.
/// Bit-deterministic for a fixed seed.
Corpus sample_corpus(const ExplicitNEModel& m, const GeneratorOptions& opts);

/// Uniform double in [0, 1) from the top 53 bits of the engine output;
/// avoids distribution differences between standard libraries.
inline double next_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace netag

#endif  // NETAG_GENERATOR_HPP
