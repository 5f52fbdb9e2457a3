#ifndef NETAG_DECODER_HPP
#define NETAG_DECODER_HPP

#include "netag/model_explicit.hpp"
#include "netag/model_implicit.hpp"

namespace netag {

/// Candidate classes per position and the tie-break order between equal
/// scoring paths: on ties the class sequence that is lexicographically
/// first under the candidate order wins.  Plus is never a candidate at
/// position 0.
struct DecodeOptions {
    std::vector<ClassLabel> candidates{kAllClasses.begin(), kAllClasses.end()};
};

/// Viterbi argmax class sequence for a nonempty utterance.
ClassSequence decode(const ImplicitNEModel& m, const std::vector<Token>& words,
                     const DecodeOptions& opts = {});
ClassSequence decode(const ExplicitNEModel& m, const std::vector<Token>& words,
                     MixtureSetting mixture = {},
                     const DecodeOptions& opts = {});

/// Exhaustive-enumeration oracle with identical scoring and tie-break.
/// Refuses instances with more than 10^6 candidate sequences.
ClassSequence brute_force_decode(const ImplicitNEModel& m,
                                 const std::vector<Token>& words,
                                 const DecodeOptions& opts = {});
ClassSequence brute_force_decode(const ExplicitNEModel& m,
                                 const std::vector<Token>& words,
                                 MixtureSetting mixture = {},
                                 const DecodeOptions& opts = {});

/// Total log10 score of one class assignment, accumulated left to right in
/// the same order the decoders use.
double path_score(const ImplicitNEModel& m, const std::vector<Token>& words,
                  const ClassSequence& classes);
double path_score(const ExplicitNEModel& m, const std::vector<Token>& words,
                  const ClassSequence& classes, MixtureSetting mixture = {});

}  // namespace netag

#endif  // NETAG_DECODER_HPP
