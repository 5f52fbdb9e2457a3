#include "netag/vocabulary.hpp"

#include <algorithm>
#include <unordered_map>

#include "netag/errors.hpp"

namespace netag {

Vocabulary::Vocabulary(std::vector<std::string> words, std::uint64_t cutoff,
                       bool has_unknown, std::uint64_t possible_size)
    : cutoff_(cutoff), has_unknown_(has_unknown),
      possible_size_(possible_size) {
    if (has_unknown_) words.push_back(kUnknownWord);
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    ordered_ = std::move(words);
    words_.insert(ordered_.begin(), ordered_.end());
    if (possible_size_ < ordered_.size()) {
        throw DataError("possible vocabulary size " +
                        std::to_string(possible_size_) +
                        " is smaller than the word list (" +
                        std::to_string(ordered_.size()) + ")");
    }
}

Vocabulary build_vocabulary(const Corpus& corpus, std::uint64_t cutoff,
                            std::uint64_t possible_size) {
    if (corpus.empty()) throw DataError("cannot build a vocabulary from an empty corpus");
    std::unordered_map<std::string, std::uint64_t> freq;
    for (const auto& t : corpus) {
        for (const auto& w : t.tokens) ++freq[w];
    }
    std::vector<std::string> kept;
    for (const auto& [word, n] : freq) {
        if (cutoff == 0 || n > cutoff) kept.push_back(word);
    }
    return Vocabulary(std::move(kept), cutoff, cutoff > 0, possible_size);
}

std::vector<Token> map_oov(const std::vector<Token>& tokens,
                           const Vocabulary& v) {
    if (!v.has_unknown()) return tokens;
    std::vector<Token> out;
    out.reserve(tokens.size());
    for (const auto& w : tokens) {
        out.push_back(v.contains(w) ? w : kUnknownWord);
    }
    return out;
}

}  // namespace netag
