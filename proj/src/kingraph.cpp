#include "rdf_forge/kingraph.hpp"

#include "rdf_forge/errors.hpp"

#include <deque>
#include <sstream>

namespace rdf_forge::kingraph {

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::tree: return "tree";
    case Classification::closed_loop: return "closed_loop";
    case Classification::disconnected: return "disconnected";
  }
  return "tree";
}

int KinGraph::component_count() const {
  // Each tree of the spanning forest covers one connected component.
  return static_cast<int>(nodes.size() - spanning_edges.size());
}

int KinGraph::cycle_rank() const {
  return static_cast<int>(edges.size()) - static_cast<int>(nodes.size()) + component_count();
}

KinGraph analyze(std::vector<std::string> nodes, std::vector<GraphEdge> edges, const std::string& root) {
  KinGraph g;
  g.nodes = std::move(nodes);
  g.edges = std::move(edges);
  g.root = root;

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) index.emplace(g.nodes[i], i);
  if (!index.count(root)) throw GraphError("root '" + root + "' is not a node of the graph", {root});

  // incident[n] lists edge indices touching node n in declaration order.
  std::vector<std::vector<std::size_t>> incident(g.nodes.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto p = index.find(g.edges[e].parent);
    const auto c = index.find(g.edges[e].child);
    if (p == index.end() || c == index.end()) {
      throw GraphError("edge '" + g.edges[e].id + "' references an unknown node", {g.edges[e].id});
    }
    incident[p->second].push_back(e);
    if (c->second != p->second) incident[c->second].push_back(e);
  }

  std::vector<bool> visited(g.nodes.size(), false);
  std::vector<bool> used(g.edges.size(), false);
  auto grow = [&](std::size_t start) {
    std::deque<std::size_t> queue{start};
    visited[start] = true;
    while (!queue.empty()) {
      const std::size_t n = queue.front();
      queue.pop_front();
      for (const std::size_t e : incident[n]) {
        if (used[e]) continue;
        const auto& edge = g.edges[e];
        const bool forward = edge.parent == g.nodes[n];
        const std::size_t other = index.at(forward ? edge.child : edge.parent);
        if (visited[other]) continue;
        used[e] = true;
        visited[other] = true;
        g.spanning_edges.push_back({edge.id, g.nodes[n], g.nodes[other], !forward});
        queue.push_back(other);
      }
    }
  };

  grow(index.at(root));
  for (std::size_t n = 0; n < g.nodes.size(); ++n) {
    if (!visited[n]) g.unreachable.push_back(g.nodes[n]);
  }
  for (std::size_t n = 0; n < g.nodes.size(); ++n) {
    if (!visited[n]) grow(n);
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!used[e]) g.loop_edges.push_back(g.edges[e].id);
  }

  if (!g.unreachable.empty()) g.classification = Classification::disconnected;
  else if (!g.loop_edges.empty()) g.classification = Classification::closed_loop;
  else g.classification = Classification::tree;
  return g;
}

KinGraph analyze_assembly(const assembly::AssemblyDoc& doc) {
  if (!doc.find_component(doc.grounded)) {
    throw GraphError("grounded component '" + doc.grounded + "' does not exist", {doc.grounded});
  }
  std::vector<std::string> nodes;
  for (const auto& c : doc.components) nodes.push_back(c.id);
  std::vector<GraphEdge> edges;
  for (const auto& j : doc.joints) edges.push_back({j.id, j.parent, j.child});
  return analyze(std::move(nodes), std::move(edges), doc.grounded);
}

KinGraph build_graph(const assembly::AssemblyDoc& doc) {
  KinGraph g = analyze_assembly(doc);
  if (g.classification == Classification::disconnected) {
    std::string list;
    for (const auto& n : g.unreachable) list += (list.empty() ? "" : ", ") + n;
    throw GraphError("assembly is disconnected; not reachable from grounded component '" + doc.grounded +
                         "': " + list,
                     g.unreachable);
  }
  return g;
}

std::string sanitize_name(std::string_view raw) {
  std::string out;
  out.reserve(raw.size() + 1);
  for (const char ch : raw) {
    const auto c = static_cast<unsigned char>(ch);
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    out += ok ? ch : '_';
  }
  if (out.empty() || (out[0] >= '0' && out[0] <= '9')) out.insert(out.begin(), '_');
  return out;
}

NameAllocator::NameAllocator() : used_{"world"} {}

std::string NameAllocator::allocate(std::string_view raw) {
  const std::string base = sanitize_name(raw);
  std::string candidate = base;
  for (int k = 2; used_.count(candidate); ++k) candidate = base + "_" + std::to_string(k);
  used_.insert(candidate);
  return candidate;
}

NameMap uniquify_names(const assembly::AssemblyDoc& doc) {
  NameMap map;
  NameAllocator names;
  for (const auto& c : doc.components) map.components.emplace(c.id, names.allocate(c.name));
  for (const auto& j : doc.joints) map.joints.emplace(j.id, names.allocate(j.name));
  return map;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

const std::string& label_of(const std::map<std::string, std::string>& labels, const std::string& id) {
  auto it = labels.find(id);
  return it == labels.end() ? id : it->second;
}

}  // namespace

std::string to_dot(const KinGraph& graph, const std::string& title,
                   const std::map<std::string, std::string>& node_labels,
                   const std::map<std::string, std::string>& edge_labels) {
  std::ostringstream out;
  out << "digraph " << quoted(title) << " {\n";
  for (const auto& n : graph.nodes) {
    out << "  " << quoted(label_of(node_labels, n));
    if (n == graph.root) out << " [shape=box]";
    out << ";\n";
  }
  for (const auto& e : graph.spanning_edges) {
    out << "  " << quoted(label_of(node_labels, e.parent)) << " -> " << quoted(label_of(node_labels, e.child))
        << " [label=" << quoted(label_of(edge_labels, e.id)) << "];\n";
  }
  for (const auto& id : graph.loop_edges) {
    for (const auto& e : graph.edges) {
      if (e.id != id) continue;
      out << "  " << quoted(label_of(node_labels, e.parent)) << " -> " << quoted(label_of(node_labels, e.child))
          << " [label=" << quoted(label_of(edge_labels, e.id)) << ", style=dashed];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace rdf_forge::kingraph
