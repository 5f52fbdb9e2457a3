#ifndef NETAG_SYMBOLS_HPP
#define NETAG_SYMBOLS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "netag/errors.hpp"

namespace netag {

using WordId = std::uint32_t;

/// Stand-in id for a word with no statistics anywhere in a model (used when
/// tagging out-of-vocabulary words with a model that has no unknown token).
/// Never interned, so it misses every table and falls through to the floor.
inline constexpr WordId kNovelWordId = 0x00FFFFFE;

class SymbolTable {
public:
    WordId intern(const std::string& s) {
        auto it = ids_.find(s);
        if (it != ids_.end()) return it->second;
        if (strings_.size() >= kNovelWordId) {
            throw DataError("symbol table overflow");
        }
        WordId id = static_cast<WordId>(strings_.size());
        strings_.push_back(s);
        ids_.emplace(s, id);
        return id;
    }

    std::optional<WordId> find(const std::string& s) const {
        auto it = ids_.find(s);
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& name(WordId id) const { return strings_.at(id); }
    std::size_t size() const { return strings_.size(); }

private:
    std::vector<std::string> strings_;
    std::unordered_map<std::string, WordId> ids_;
};

}  // namespace netag

#endif  // NETAG_SYMBOLS_HPP
