#ifndef NETAG_MODEL_IO_HPP
#define NETAG_MODEL_IO_HPP

#include <string>
#include <variant>

#include "netag/model_explicit.hpp"
#include "netag/model_implicit.hpp"

namespace netag {

/// Text model format, one file per model.
///
///   netag-model 1
///   kind implicit|explicit
///   regime interp|backoff
///   discount gt|abs|gt-abs|del
///   ... header key/value lines ...
///   vocabulary words, one per line, then `end-vocab`
///   one section per chain level:
///     section <name> contexts <n>
///     <log10-prob> <context tokens> <event tokens> [<log10-weaker-weight>]
///   and for explicit models a final class-unigram section.
///
/// Probabilities are written with 17 significant digits, so doubles survive
/// the round trip to within one unit in the last place.
using AnyModel = std::variant<ImplicitNEModel, ExplicitNEModel>;

std::string serialize_model(const ImplicitNEModel& m);
std::string serialize_model(const ExplicitNEModel& m);
std::string serialize_model(const AnyModel& m);

void write_model(const std::string& path, const AnyModel& m);

/// Throws DataError (with a versioned message) on malformed files.
AnyModel parse_model(const std::string& text);
AnyModel read_model(const std::string& path);

bool is_explicit(const AnyModel& m);

}  // namespace netag

#endif  // NETAG_MODEL_IO_HPP
