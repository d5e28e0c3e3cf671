#pragma once

#include <json.hpp>

#include "wpress/measures.hpp"
#include "wpress/symbolic.hpp"
#include "wpress/weighted_cylinders.hpp"

namespace wpress::io {

using json = nlohmann::json;

json load_json(const std::string& path);

// System file: {"levels": [{"symbols": [...], "forbidden_words"|"transitions"?,
// "require_irreducible"?}], "codes": [{src: dst, ...}], "weights": [...]}.
// Weights must be strings or integers so they stay exact; unknown fields are
// rejected with the offending name.
ChainSystem parse_system(const json& doc);
ChainSystem load_system(const std::string& path);

// Potential file: {"range": r, "entries": {"word": value}}.
Potential parse_potential(const json& doc, const Subshift& level1);
Potential load_potential(const std::string& path, const Subshift& level1);

// Measure file: {"labels": [...], "transition": [[...], ...]}.
MarkovMeasure parse_measure(const json& doc, const Subshift& level1);
MarkovMeasure load_measure(const std::string& path, const Subshift& level1);

json cylinder_to_json(const ChainSystem& system, const WeightedCylinder& cylinder);

std::uint64_t fnv1a(std::string_view bytes,
                    std::uint64_t seed = 14695981039346656037ull);
// Content hash over the canonical config string and the referenced files.
std::string digest(std::string_view config, const std::vector<std::string>& paths);

}  // namespace wpress::io
