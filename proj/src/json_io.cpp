#include "ltoim/json_io.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "ltoim/errors.hpp"

namespace ltoim {

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("missing required key \"") + key + "\"");
  }
  return j.at(key);
}

void check_version(const nlohmann::json& j) {
  const nlohmann::json& v = require(j, "format_version");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion) {
    throw ConfigError("unsupported format_version, expected " +
                      std::to_string(kFormatVersion));
  }
}

WeightedEdge parse_edge(const nlohmann::json& entry, const char* what) {
  if (!entry.is_array() || entry.size() != 3 ||
      !entry[0].is_number_integer() || !entry[1].is_number_integer() ||
      !entry[2].is_number()) {
    throw ConfigError(std::string(what) +
                      " entries must be [source, target, weight] triples");
  }
  return {entry[0].get<int>(), entry[1].get<int>(), entry[2].get<double>()};
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) {
    throw ConfigError(std::string(what) + " must be an array of numbers");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const nlohmann::json& x = j[static_cast<std::size_t>(i)];
    if (!x.is_number()) {
      throw ConfigError(std::string(what) + " must be an array of numbers");
    }
    v(i) = x.get<double>();
  }
  return v;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError(std::string(what) + " must be an array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXd m;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Eigen::VectorXd row = vector_from_json(j[static_cast<std::size_t>(r)], what);
    if (r == 0) {
      m.resize(rows, row.size());
    } else if (row.size() != m.cols()) {
      throw ConfigError(std::string(what) + " rows have uneven lengths");
    }
    m.row(r) = row;
  }
  return m;
}

}  // namespace

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open " + path.string());
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path,
                     const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write " + path.string());
  }
  out << j.dump(2) << '\n';
}

nlohmann::json graph_to_json(const Graph& g, const WeightVector& w) {
  nlohmann::json edges = nlohmann::json::array();
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    edges.push_back({ed.source, ed.target, w[e]});
  }
  return {{"format_version", kFormatVersion},
          {"n", g.node_count()},
          {"edges", std::move(edges)}};
}

std::pair<Graph, WeightVector> graph_from_json(const nlohmann::json& j) {
  check_version(j);
  const nlohmann::json& n = require(j, "n");
  if (!n.is_number_integer() || n.get<int>() < 1) {
    throw ConfigError("\"n\" must be a positive node count");
  }
  const nlohmann::json& edges = require(j, "edges");
  if (!edges.is_array()) {
    throw ConfigError("\"edges\" must be an array");
  }
  std::vector<WeightedEdge> list;
  list.reserve(edges.size());
  for (const nlohmann::json& entry : edges) {
    list.push_back(parse_edge(entry, "edge"));
  }
  return build_graph(n.get<int>(), list);
}

void save_graph(const std::filesystem::path& path, const Graph& g,
                const WeightVector& w) {
  write_json_file(path, graph_to_json(g, w));
}

std::pair<Graph, WeightVector> load_graph(const std::filesystem::path& path) {
  return graph_from_json(load_json_file(path));
}

nlohmann::json weights_to_json(const Graph& g, const WeightVector& w) {
  nlohmann::json weights = nlohmann::json::array();
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    weights.push_back({ed.source, ed.target, w[e]});
  }
  return {{"format_version", kFormatVersion}, {"weights", std::move(weights)}};
}

WeightVector weights_from_json(const Graph& g, const nlohmann::json& j) {
  check_version(j);
  const nlohmann::json& weights = require(j, "weights");
  if (!weights.is_array()) {
    throw ConfigError("\"weights\" must be an array");
  }
  Eigen::VectorXd w = Eigen::VectorXd::Zero(g.edge_count());
  std::vector<char> seen(static_cast<std::size_t>(g.edge_count()), 0);
  for (const nlohmann::json& entry : weights) {
    const WeightedEdge we = parse_edge(entry, "weight");
    if (we.target < 0 || we.target >= g.node_count()) {
      throw ValidationError("weight entry names node " +
                            std::to_string(we.target) +
                            " outside the graph");
    }
    const int pos = g.in_position(we.target, we.source);
    if (pos < 0) {
      throw ValidationError("weight entry names missing edge " +
                            std::to_string(we.source) + " -> " +
                            std::to_string(we.target));
    }
    const int e = g.in_offset(we.target) + pos;
    if (seen[static_cast<std::size_t>(e)]) {
      throw ValidationError("duplicate weight entry for edge " +
                            std::to_string(we.source) + " -> " +
                            std::to_string(we.target));
    }
    seen[static_cast<std::size_t>(e)] = 1;
    w(e) = we.weight;
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!seen[static_cast<std::size_t>(e)]) {
      const Edge& ed = g.edge(e);
      throw ValidationError("weight file does not cover edge " +
                            std::to_string(ed.source) + " -> " +
                            std::to_string(ed.target));
    }
  }
  return WeightVector::validated(g, std::move(w));
}

WeightVector load_weights(const Graph& g, const std::filesystem::path& path) {
  return weights_from_json(g, load_json_file(path));
}

nlohmann::json confidence_set_to_json(const ConfidenceSet& cs) {
  nlohmann::json nodes = nlohmann::json::object();
  for (const int v : cs.node_ids()) {
    const NodeEllipsoid& e = cs.at(v);
    nodes[std::to_string(v)] = {{"M", matrix_to_json(e.gramian())},
                                {"b", vector_to_json(e.moment())},
                                {"rho", e.radius()}};
  }
  return {{"format_version", kFormatVersion}, {"nodes", std::move(nodes)}};
}

ConfidenceSet confidence_set_from_json(const Graph& g,
                                       const nlohmann::json& j) {
  check_version(j);
  const nlohmann::json& nodes = require(j, "nodes");
  if (!nodes.is_object()) {
    throw ConfigError("\"nodes\" must map node ids to ellipsoid blocks");
  }
  ConfidenceSet cs;
  for (const auto& [key, block] : nodes.items()) {
    int v = -1;
    try {
      std::size_t used = 0;
      v = std::stoi(key, &used);
      if (used != key.size()) v = -1;
    } catch (const std::exception&) {
      v = -1;
    }
    if (v < 0 || v >= g.node_count()) {
      throw ConfigError("node key \"" + key + "\" is not a node id");
    }
    const int d = g.in_degree(v);
    if (d == 0) {
      throw ValidationError("node " + std::to_string(v) + " has no in-edges");
    }
    const Eigen::MatrixXd M = matrix_from_json(require(block, "M"), "\"M\"");
    const Eigen::VectorXd b = vector_from_json(require(block, "b"), "\"b\"");
    const nlohmann::json& rho = require(block, "rho");
    if (!rho.is_number()) {
      throw ConfigError("\"rho\" must be a number");
    }
    if (M.rows() != d || b.size() != d) {
      throw ValidationError("ellipsoid for node " + std::to_string(v) +
                            " does not match its in-degree " +
                            std::to_string(d));
    }
    cs.set(v, NodeEllipsoid(M, b, rho.get<double>()));
  }
  return cs;
}

void save_confidence_set(const std::filesystem::path& path,
                         const ConfidenceSet& cs) {
  write_json_file(path, confidence_set_to_json(cs));
}

ConfidenceSet load_confidence_set(const Graph& g,
                                  const std::filesystem::path& path) {
  return confidence_set_from_json(g, load_json_file(path));
}

nlohmann::json to_json(const OracleResult& r) {
  return {{"seeds", r.seeds},
          {"value", r.value},
          {"alpha", r.alpha},
          {"beta", r.beta}};
}

nlohmann::json to_json(const PairResult& r) {
  return {{"seeds", r.seeds},
          {"value", r.value},
          {"weights", vector_to_json(r.weights)}};
}

nlohmann::json to_json(const GomReport& r) {
  return {{"lhs", r.lhs},
          {"rhs", r.rhs},
          {"slack", r.slack},
          {"holds", r.holds}};
}

nlohmann::json to_json(const UpdateBoundReport& r) {
  return {{"longest_path", r.longest_path},
          {"worst_slack", r.worst_slack},
          {"holds", r.holds},
          {"worst_slack_relaxed", r.worst_slack_relaxed},
          {"holds_relaxed", r.holds_relaxed}};
}

nlohmann::json to_json(const DiffusionTrace& t) {
  return {{"model", t.model == DiffusionModel::LinearThreshold ? "lt" : "ic"},
          {"horizon", t.horizon},
          {"activation_time", t.activation_time},
          {"frontiers", t.frontiers}};
}

}  // namespace ltoim
