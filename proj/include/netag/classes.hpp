#ifndef NETAG_CLASSES_HPP
#define NETAG_CLASSES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace netag {

/// The label alphabet used for per-token class sequences.  The first token
/// of a name carries the name's class; every further token of the same name
/// carries Plus.  Untagged regions start with Other and continue with Plus.
/// Enumerator order is the canonical tie-break order for decoding.
enum class ClassLabel : std::uint8_t {
    Other = 0,
    Person,
    Location,
    Organization,
    Date,
    Time,
    Money,
    Percent,
    Plus,
};

inline constexpr std::size_t kNumClasses = 9;

inline constexpr std::array<ClassLabel, kNumClasses> kAllClasses = {
    ClassLabel::Other,    ClassLabel::Person, ClassLabel::Location,
    ClassLabel::Organization, ClassLabel::Date,   ClassLabel::Time,
    ClassLabel::Money,    ClassLabel::Percent, ClassLabel::Plus,
};

/// The seven entity classes (everything except Other and Plus).
inline constexpr std::array<ClassLabel, 7> kEntityClasses = {
    ClassLabel::Person, ClassLabel::Location, ClassLabel::Organization,
    ClassLabel::Date,   ClassLabel::Time,     ClassLabel::Money,
    ClassLabel::Percent,
};

std::string_view class_name(ClassLabel c);
std::optional<ClassLabel> class_from_name(std::string_view name);

inline bool is_entity_class(ClassLabel c) {
    return c != ClassLabel::Other && c != ClassLabel::Plus;
}

inline std::uint8_t class_index(ClassLabel c) {
    return static_cast<std::uint8_t>(c);
}

using ClassSequence = std::vector<ClassLabel>;

}  // namespace netag

#endif  // NETAG_CLASSES_HPP
