#pragma once

#include <json.hpp>

#include <string>

namespace hhgsq::detail {

using json = nlohmann::ordered_json;

/// Serializes with two-space indentation and 17 significant digits for
/// every floating-point number, so equal inputs give byte-identical text.
std::string dump_json(const json& j);

json complex_pair(double re, double im);

}  // namespace hhgsq::detail

namespace hhgsq {
struct RunConfig;
}

namespace hhgsq::detail {

/// Input keys of the resolved config; parse_config accepts this object back.
json config_json(const RunConfig& cfg);
/// Quantities derived from the config (resolved field, pulse window, N_at).
json derived_json(const RunConfig& cfg);

} // namespace hhgsq::detail
