#pragma once

#include <filesystem>
#include <utility>

#include "json.hpp"
#include "ltoim/ellipsoid.hpp"
#include "ltoim/gom.hpp"
#include "ltoim/linucb.hpp"
#include "ltoim/wcim.hpp"

namespace ltoim {

// Every on-disk document carries {"format_version": 1}; readers reject
// anything else so stale files fail loudly instead of deserializing wrong.
inline constexpr int kFormatVersion = 1;

// Parse errors and missing files surface as ConfigError.
nlohmann::json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path,
                     const nlohmann::json& j);

// {"format_version": 1, "n": <nodes>, "edges": [[source, target, weight]...]}
// Edges are emitted in canonical order and re-validated on load.
nlohmann::json graph_to_json(const Graph& g, const WeightVector& w);
std::pair<Graph, WeightVector> graph_from_json(const nlohmann::json& j);
void save_graph(const std::filesystem::path& path, const Graph& g,
                const WeightVector& w);
std::pair<Graph, WeightVector> load_graph(const std::filesystem::path& path);

// {"format_version": 1, "weights": [[source, target, weight]...]}
// Must cover every edge of g exactly once.
nlohmann::json weights_to_json(const Graph& g, const WeightVector& w);
WeightVector weights_from_json(const Graph& g, const nlohmann::json& j);
WeightVector load_weights(const Graph& g, const std::filesystem::path& path);

// {"format_version": 1, "nodes": {"<id>": {"M": [[...]...], "b": [...],
//  "rho": <r>}, ...}}; each block must match the node's in-degree.
nlohmann::json confidence_set_to_json(const ConfidenceSet& cs);
ConfidenceSet confidence_set_from_json(const Graph& g,
                                       const nlohmann::json& j);
void save_confidence_set(const std::filesystem::path& path,
                         const ConfidenceSet& cs);
ConfidenceSet load_confidence_set(const Graph& g,
                                  const std::filesystem::path& path);

// Result snapshots for the command line and experiment outputs.
nlohmann::json to_json(const OracleResult& r);
nlohmann::json to_json(const PairResult& r);
nlohmann::json to_json(const GomReport& r);
nlohmann::json to_json(const UpdateBoundReport& r);
nlohmann::json to_json(const DiffusionTrace& t);

}  // namespace ltoim
