#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "atomlab/configuration.hpp"
#include "atomlab/error.hpp"
#include "atomlab/symmetry.hpp"

namespace atomlab {

struct GraphEdge {
  Vertex u = 0;
  Vertex v = 0;
  std::string label;

  friend auto operator<=>(const GraphEdge&, const GraphEdge&) = default;
};

/// Simple graph: no duplicate (pair, label) entries. Undirected edges are
/// stored with u <= v.
struct Graph {
  std::size_t n_vertices = 0;
  bool directed = false;
  bool allow_self_loops = false;
  std::set<GraphEdge> edges;

  /// Returns false if the edge was already present.
  bool add_edge(Vertex u, Vertex v, std::string label = {}) {
    if (u >= n_vertices || v >= n_vertices) throw SpecError("graph edge endpoint out of range");
    if (u == v && !allow_self_loops) throw SpecError("self-loop in a graph without self-loops enabled");
    if (!directed && u > v) std::swap(u, v);
    return edges.insert(GraphEdge{u, v, std::move(label)}).second;
  }

  std::size_t edge_count() const { return edges.size(); }
  bool labelled() const {
    return std::any_of(edges.begin(), edges.end(), [](const GraphEdge& e) { return !e.label.empty(); });
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_vertices == b.n_vertices && a.directed == b.directed && a.edges == b.edges;
  }
};

enum class ProjectionMode {
  /// Union of edge sets; labels dropped.
  Simple,
  /// Union taken per edge label (multilayer graphs).
  EdgeLabelled,
};

struct Projection {
  Graph graph;
  /// Edge insertions that collapsed onto an existing edge.
  std::size_t collapsed_duplicates = 0;
};

inline bool atoms_directed(const AtomSet& atoms) {
  bool any_directed = false, any_undirected = false;
  for (const auto& a : atoms) (a.atom.directed ? any_directed : any_undirected) = true;
  if (any_directed && any_undirected) throw SpecError("cannot project a mix of directed and undirected atoms");
  return any_directed;
}

inline Projection project_with_diagnostics(const Configuration& c, ProjectionMode mode = ProjectionMode::Simple) {
  Projection out;
  out.graph.n_vertices = c.n_vertices();
  if (!c.atoms()) return out;
  const auto& atoms = *c.atoms();
  out.graph.directed = atoms_directed(atoms);
  out.graph.allow_self_loops =
      std::any_of(atoms.begin(), atoms.end(), [](const AtomInfo& a) { return a.atom.has_self_loop(); });
  for (const auto& p : c) {
    for (const auto& e : atoms[p.atom].atom.edges) {
      std::string label = mode == ProjectionMode::EdgeLabelled ? e.label : std::string{};
      if (!out.graph.add_edge(p.vertices[e.u], p.vertices[e.v], std::move(label))) ++out.collapsed_duplicates;
    }
  }
  return out;
}

inline Graph project(const Configuration& c, ProjectionMode mode = ProjectionMode::Simple) {
  return project_with_diagnostics(c, mode).graph;
}

/// True iff the projection of `c` equals `g`. The projection keeps edge
/// labels when `g` carries any.
inline bool covers(const Configuration& c, const Graph& g) {
  if (c.n_vertices() != g.n_vertices)
    throw SpecError("covers: configuration has " + std::to_string(c.n_vertices()) + " vertices, graph has " +
                    std::to_string(g.n_vertices));
  const auto mode = g.labelled() ? ProjectionMode::EdgeLabelled : ProjectionMode::Simple;
  return project(c, mode) == g;
}

/// Atom order cap for count_motif_in_graph.
inline constexpr std::uint32_t kMaxCountOrder = 5;

/// Number of distinct m-subgraphs (not necessarily induced) of `g`:
/// injective edge-preserving maps divided by |Aut(m)|. Vertex labels of the
/// atom are ignored since host vertices carry none; an unlabelled atom edge
/// matches a host edge of any label.
inline std::uint64_t count_motif_in_graph(const Graph& g, const Atom& atom_in) {
  const Atom atom = normalize_atom(atom_in);
  if (atom.order > kMaxCountOrder)
    throw AtomTooLarge("count_motif_in_graph: atom order " + std::to_string(atom.order) + " exceeds cap " +
                       std::to_string(kMaxCountOrder));
  if (atom.directed != g.directed) throw SpecError("count_motif_in_graph: atom and graph directedness differ");

  Atom structural = atom;
  structural.vertex_labels.clear();
  const auto aut = compute_symmetry(structural).aut_size;

  const std::size_t n = g.n_vertices;
  std::vector<std::vector<Vertex>> nbr(n);
  std::unordered_map<std::uint64_t, std::vector<std::string>> labels;
  auto key = [](Vertex a, Vertex b) { return (static_cast<std::uint64_t>(a) << 32) | b; };
  for (const auto& e : g.edges) {
    labels[key(e.u, e.v)].push_back(e.label);
    if (e.u != e.v) {
      nbr[e.u].push_back(e.v);
      nbr[e.v].push_back(e.u);
    }
  }
  for (auto& l : nbr) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  auto has_edge = [&](Vertex a, Vertex b, const std::string& label) {
    if (!g.directed && a > b) std::swap(a, b);
    auto it = labels.find(key(a, b));
    if (it == labels.end()) return false;
    if (label.empty()) return true;
    return std::find(it->second.begin(), it->second.end(), label) != it->second.end();
  };

  // BFS order so that every vertex after the first has an earlier neighbour.
  const std::uint32_t k = atom.order;
  std::vector<Vertex> order;
  std::vector<int> anchor(k, -1);
  {
    std::vector<bool> seen(k, false);
    std::queue<Vertex> q;
    q.push(0);
    seen[0] = true;
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop();
      order.push_back(x);
      for (const auto& e : atom.edges) {
        for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
          if (a == x && !seen[b]) {
            seen[b] = true;
            anchor[b] = static_cast<int>(x);
            q.push(b);
          }
        }
      }
    }
  }
  std::vector<std::int64_t> image(k, -1);
  std::vector<bool> used(n, false);
  std::uint64_t embeddings = 0;

  auto consistent = [&](Vertex x) {
    for (const auto& e : atom.edges) {
      if (e.u != x && e.v != x) continue;
      if (image[e.u] < 0 || image[e.v] < 0) continue;
      if (!has_edge(static_cast<Vertex>(image[e.u]), static_cast<Vertex>(image[e.v]), e.label)) return false;
    }
    return true;
  };
  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == k) {
      ++embeddings;
      return;
    }
    const Vertex x = order[depth];
    auto try_vertex = [&](Vertex h) {
      if (used[h]) return;
      image[x] = h;
      used[h] = true;
      if (consistent(x)) self(self, depth + 1);
      used[h] = false;
      image[x] = -1;
    };
    if (anchor[x] < 0) {
      for (Vertex h = 0; h < n; ++h) try_vertex(h);
    } else {
      for (Vertex h : nbr[static_cast<std::size_t>(image[anchor[x]])]) try_vertex(h);
    }
  };
  recurse(recurse, 0);
  return embeddings / aut;
}

}  // namespace atomlab
