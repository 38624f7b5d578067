//
// tuckerplan : JSON and tensor-file formats
//
// Mode labels are 1-based on disk ("M3" multiplies the third mode, "F1" is
// the first output) and 0-based in memory. Tensor files are one JSON header
// line {"dims": [...]} followed by the elements as little-endian doubles in
// storage order.
//

#pragma once

#include <bit>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tuckerplan/dense_tensor.hpp"
#include "tuckerplan/errors.hpp"
#include "tuckerplan/grid.hpp"
#include "tuckerplan/grid_dynamic.hpp"
#include "tuckerplan/grid_volume.hpp"
#include "tuckerplan/problem.hpp"
#include "tuckerplan/simulate.hpp"
#include "tuckerplan/tree_cost.hpp"
#include "tuckerplan/ttm_tree.hpp"

namespace tuckerplan {

using json = nlohmann::json;

inline json spec_to_json(const ProblemSpec& s) {
  return json{{"L", s.L}, {"K", s.K}};
}

inline ProblemSpec spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("L") || !j.contains("K"))
    fail(Errc::bad_argument, "spec needs L and K arrays");
  ProblemSpec s;
  s.L = j.at("L").get<std::vector<u64>>();
  s.K = j.at("K").get<std::vector<u64>>();
  validate_spec(s);
  return s;
}

namespace detail {

inline json tree_node_to_json(const TtmTree& t, int id) {
  const TreeNode& node = t.nodes[id];
  json j;
  switch (node.kind) {
    case NodeKind::root: j["label"] = "T"; break;
    case NodeKind::mode: j["label"] = "M" + std::to_string(node.mode + 1); break;
    case NodeKind::leaf: j["label"] = "F" + std::to_string(node.mode + 1); break;
  }
  if (!node.children.empty()) {
    json kids = json::array();
    for (int c : node.children) kids.push_back(tree_node_to_json(t, c));
    j["children"] = kids;
  }
  return j;
}

inline void tree_node_from_json(const json& j, TtmTree& t, int parent) {
  if (!j.is_object() || !j.contains("label") || !j.at("label").is_string())
    fail(Errc::bad_argument, "tree node needs a label");
  const std::string label = j.at("label").get<std::string>();
  int id;
  if (label == "T") {
    if (parent != -1) fail(Errc::bad_argument, "root label below the root");
    id = 0;
  } else if ((label[0] == 'M' || label[0] == 'F') && label.size() > 1) {
    int mode = 0;
    for (std::size_t i = 1; i < label.size(); ++i) {
      if (label[i] < '0' || label[i] > '9')
        fail(Errc::bad_argument, "bad mode in label " + label);
      mode = mode * 10 + (label[i] - '0');
    }
    if (mode < 1 || mode > kMaxModes)
      fail(Errc::bad_argument, "mode out of range in label " + label);
    if (parent == -1) fail(Errc::bad_argument, "top node must be labelled T");
    id = t.add_node(label[0] == 'M' ? NodeKind::mode : NodeKind::leaf, mode - 1,
                    parent);
  } else {
    fail(Errc::bad_argument, "unknown label " + label);
  }
  if (j.contains("children"))
    for (const json& c : j.at("children")) tree_node_from_json(c, t, id);
}

} // namespace detail

inline json tree_to_json(const TtmTree& t) {
  return detail::tree_node_to_json(t, 0);
}

// Mode count is taken from the leaf count; call validate_tree against the
// intended spec afterwards.
inline TtmTree tree_from_json(const json& j) {
  TtmTree t = make_tree(0);
  detail::tree_node_from_json(j, t, -1);
  int leaves = 0;
  for (const TreeNode& n : t.nodes)
    if (n.kind == NodeKind::leaf) ++leaves;
  t.n_modes = leaves;
  return t;
}

inline json grid_to_json(const Grid& g) { return json(g.q); }

inline Grid grid_from_json(const json& j) {
  if (!j.is_array() || j.empty()) fail(Errc::bad_argument, "grid must be an array");
  Grid g;
  g.q = j.get<std::vector<u64>>();
  return g;
}

inline json scheme_to_json(const DynamicGridScheme& s) {
  json nodes = json::object();
  for (const auto& [id, g] : s.node_grids)
    nodes[std::to_string(id)] = grid_to_json(g);
  return json{{"root", grid_to_json(s.root)}, {"nodes", nodes}};
}

inline DynamicGridScheme scheme_from_json(const json& j) {
  if (!j.is_object() || !j.contains("root") || !j.contains("nodes"))
    fail(Errc::bad_argument, "scheme needs root and nodes");
  DynamicGridScheme s;
  s.root = grid_from_json(j.at("root"));
  for (const auto& [key, val] : j.at("nodes").items()) {
    std::size_t pos = 0;
    int id = 0;
    try {
      id = std::stoi(key, &pos);
    } catch (const std::exception&) {
      fail(Errc::bad_argument, "node key must be an integer: " + key);
    }
    if (pos != key.size() || id < 1)
      fail(Errc::bad_argument, "node key must be a positive integer: " + key);
    s.node_grids[id] = grid_from_json(val);
  }
  return s;
}

inline json cost_to_json(const CostReport& r) {
  json per = json::array();
  for (std::size_t id = 0; id < r.per_node_macs.size(); ++id)
    if (r.per_node_macs[id])
      per.push_back(json{{"node", id}, {"macs", r.per_node_macs[id]}});
  return json{{"total_macs", r.total_macs},
              {"internal_nodes", r.n_internal},
              {"depth", r.depth},
              {"per_node", per}};
}

inline json volume_to_json(const VolumeReport& r) {
  json per = json::array();
  for (const NodeVolume& nv : r.per_node)
    per.push_back(json{{"node", nv.node}, {"ttm", nv.ttm}, {"regrid", nv.regrid}});
  return json{{"total", r.total}, {"per_node", per}};
}

inline json ledger_to_json(const SimLedger& l) {
  json nodes = json::array();
  for (const NodeTrace& nt : l.nodes) {
    json n{{"node", nt.node},
           {"flops", nt.flops},
           {"model_ttm", nt.model_ttm},
           {"model_regrid", nt.model_regrid}};
    if (l.traced) {
      n["measured_ttm"] = nt.measured_ttm;
      n["measured_regrid"] = nt.measured_regrid;
    }
    nodes.push_back(n);
  }
  json j{{"traced", l.traced},
         {"nodes", nodes},
         {"total_flops", l.total_flops},
         {"total_model_ttm", l.total_model_ttm},
         {"total_model_regrid", l.total_model_regrid},
         {"peak_live", l.peak_live}};
  if (l.traced) {
    j["total_measured_ttm"] = l.total_measured_ttm;
    j["total_measured_regrid"] = l.total_measured_regrid;
  }
  return j;
}

inline void write_tensor(const std::string& path, const DenseTensor& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::bad_argument, "cannot open " + path);
  out << json{{"dims", t.dims}}.dump() << '\n';
  static_assert(std::endian::native == std::endian::little,
                "tensor files assume a little-endian host");
  out.write(reinterpret_cast<const char*>(t.data.data()),
            static_cast<std::streamsize>(t.data.size() * sizeof(double)));
  if (!out) fail(Errc::bad_argument, "write failed: " + path);
}

inline DenseTensor read_tensor(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::bad_argument, "cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) fail(Errc::bad_argument, "missing header: " + path);
  json j = json::parse(header, nullptr, false);
  if (j.is_discarded() || !j.contains("dims"))
    fail(Errc::bad_argument, "bad tensor header: " + path);
  DenseTensor t = zeros(j.at("dims").get<std::vector<std::size_t>>());
  in.read(reinterpret_cast<char*>(t.data.data()),
          static_cast<std::streamsize>(t.data.size() * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != t.data.size() * sizeof(double))
    fail(Errc::bad_argument, "tensor data truncated: " + path);
  return t;
}

} // namespace tuckerplan
