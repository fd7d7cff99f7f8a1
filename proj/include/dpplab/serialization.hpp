#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "dpplab/dpp.hpp"
#include "dpplab/kernel_operator.hpp"

namespace dpplab {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

Json to_json(const GroundSpace& space);
GroundSpacePtr ground_space_from_json(const Json& j);

/// {"format_version", "space", "rows", "cols", "entries"} with entries
/// row-major and mu-relative.
Json to_json(const KernelOperator& k);
KernelOperator kernel_from_json(const Json& j);

/// {"format_version", "points", "probabilities": {"<mask>": p}}; zero
/// entries are omitted.
Json to_json(const ConfigurationLaw& law);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

}  // namespace dpplab
