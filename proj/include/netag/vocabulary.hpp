#ifndef NETAG_VOCABULARY_HPP
#define NETAG_VOCABULARY_HPP

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "netag/transcript.hpp"

namespace netag {

/// Reserved surface form standing in for words below the training cutoff.
inline const std::string kUnknownWord = "UNKNOWN";

/// Sentinel words used for utterance padding in the models.
inline const std::string kBosWord = "<s>";
inline const std::string kEosWord = "</s>";

/// The set of words a model assigns dedicated parameters to, plus the size
/// of the larger "possible" vocabulary (observed and unobserved words) used
/// as the uniform-floor denominator.  Immutable after construction.
class Vocabulary {
public:
    Vocabulary(std::vector<std::string> words, std::uint64_t cutoff,
               bool has_unknown, std::uint64_t possible_size);

    bool contains(const std::string& word) const {
        return words_.count(word) != 0;
    }
    bool has_unknown() const { return has_unknown_; }
    std::uint64_t cutoff() const { return cutoff_; }
    std::uint64_t possible_size() const { return possible_size_; }
    std::size_t size() const { return ordered_.size(); }

    /// Words in sorted order (stable across runs).
    const std::vector<std::string>& words() const { return ordered_; }

private:
    std::unordered_set<std::string> words_;
    std::vector<std::string> ordered_;
    std::uint64_t cutoff_;
    bool has_unknown_;
    std::uint64_t possible_size_;
};

inline constexpr std::uint64_t kDefaultPossibleVocab = 60000;

/// Counts word frequencies over the corpus and keeps words with frequency
/// strictly above the cutoff.  cutoff 0 keeps everything and adds no
/// unknown token; cutoff >= 1 adds the reserved unknown token.
Vocabulary build_vocabulary(const Corpus& corpus, std::uint64_t cutoff,
                            std::uint64_t possible_size = kDefaultPossibleVocab);

/// Replaces out-of-vocabulary tokens with the unknown token when the
/// vocabulary has one; otherwise returns the input unchanged.
std::vector<Token> map_oov(const std::vector<Token>& tokens,
                           const Vocabulary& v);

}  // namespace netag

#endif  // NETAG_VOCABULARY_HPP
