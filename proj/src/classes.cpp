#include "netag/classes.hpp"

namespace netag {

namespace {
constexpr std::array<std::string_view, kNumClasses> kClassNames = {
    "OTHER", "PERSON", "LOCATION", "ORGANIZATION", "DATE",
    "TIME",  "MONEY",  "PERCENT",  "PLUS",
};
}  // namespace

std::string_view class_name(ClassLabel c) {
    return kClassNames[class_index(c)];
}

std::optional<ClassLabel> class_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kClassNames.size(); ++i) {
        if (kClassNames[i] == name) return kAllClasses[i];
    }
    return std::nullopt;
}

}  // namespace netag
