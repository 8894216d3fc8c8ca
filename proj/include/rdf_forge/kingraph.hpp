#pragma once

#include "rdf_forge/assembly.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace rdf_forge::kingraph {

enum class Classification { tree, closed_loop, disconnected };

std::string_view to_string(Classification c);

/// An undirected edge with its declared (parent, child) orientation.
struct GraphEdge {
  std::string id;
  std::string parent;
  std::string child;
};

/// A spanning-tree edge oriented away from the root. `reversed` is set when
/// the traversal direction opposes the declared parent → child direction.
struct SpanningEdge {
  std::string id;
  std::string parent;
  std::string child;
  bool reversed = false;
};

struct KinGraph {
  std::vector<std::string> nodes;
  std::vector<GraphEdge> edges;
  std::string root;
  Classification classification = Classification::tree;
  std::vector<SpanningEdge> spanning_edges;  ///< breadth-first order
  std::vector<std::string> loop_edges;       ///< declaration order
  std::vector<std::string> unreachable;      ///< nodes not reachable from root

  /// Independent cycles: |E| − |N| + number of connected components.
  int cycle_rank() const;
  int component_count() const;
};

/// Breadth-first spanning forest over an undirected multigraph. Edges are
/// visited in declaration order so the result depends only on input order.
/// Nodes the root cannot reach are covered by further trees started at the
/// first unvisited node; the graph is then classified disconnected.
KinGraph analyze(std::vector<std::string> nodes, std::vector<GraphEdge> edges, const std::string& root);

/// Graph of an assembly rooted at its grounded component. Throws GraphError
/// if some component is not connected to the ground.
KinGraph build_graph(const assembly::AssemblyDoc& doc);

/// Same as build_graph but returns disconnected graphs instead of throwing.
KinGraph analyze_assembly(const assembly::AssemblyDoc& doc);

/// Maps component ids and joint ids to names usable as URDF/SDF element
/// names. Both share one namespace since SDF frames must not collide.
struct NameMap {
  std::map<std::string, std::string> components;
  std::map<std::string, std::string> joints;

  const std::string& component(const std::string& id) const { return components.at(id); }
  const std::string& joint(const std::string& id) const { return joints.at(id); }
};

/// Replaces characters outside [A-Za-z0-9_] by '_' and prefixes a leading
/// digit (or an empty name) with '_'.
std::string sanitize_name(std::string_view raw);

/// Allocates unique sanitized names in order, suffixing _2, _3, ... on
/// collision. `world` is reserved.
class NameAllocator {
 public:
  NameAllocator();
  std::string allocate(std::string_view raw);
  bool taken(const std::string& name) const { return used_.count(name) != 0; }

 private:
  std::set<std::string> used_;
};

/// Components first, then joints, each in document order.
NameMap uniquify_names(const assembly::AssemblyDoc& doc);

/// DOT digraph: spanning edges solid and oriented parent → child, loop
/// edges dashed in their declared orientation. Ids missing from the label
/// maps are printed as-is.
std::string to_dot(const KinGraph& graph, const std::string& title,
                   const std::map<std::string, std::string>& node_labels = {},
                   const std::map<std::string, std::string>& edge_labels = {});

}  // namespace rdf_forge::kingraph
