#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "atomlab/error.hpp"

namespace atomlab {

using Vertex = std::uint32_t;

struct AtomEdge {
  Vertex u = 0;
  Vertex v = 0;
  std::string label;

  friend auto operator<=>(const AtomEdge&, const AtomEdge&) = default;
};

/// A small connected graph pattern. Vertices are 0..order-1.
///
/// Undirected edges are stored with u <= v. Parallel edges are allowed only
/// when their labels differ (multilayer edge patterns); a single-vertex atom
/// with a loop is admitted as the self-loop atom.
struct Atom {
  std::string name;
  std::uint32_t order = 0;
  bool directed = false;
  std::vector<AtomEdge> edges;
  /// Empty, or exactly `order` entries.
  std::vector<std::string> vertex_labels;

  bool vertex_labelled() const { return !vertex_labels.empty(); }
  bool edge_labelled() const {
    return std::any_of(edges.begin(), edges.end(), [](const AtomEdge& e) { return !e.label.empty(); });
  }
  bool has_self_loop() const {
    return std::any_of(edges.begin(), edges.end(), [](const AtomEdge& e) { return e.u == e.v; });
  }
  const std::string& vertex_label(Vertex v) const {
    static const std::string kEmpty;
    return vertex_labels.empty() ? kEmpty : vertex_labels[v];
  }
};

namespace detail {

inline bool weakly_connected(const Atom& a) {
  if (a.order <= 1) return true;
  std::vector<Vertex> parent(a.order);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::uint32_t components = a.order;
  for (const auto& e : a.edges) {
    auto ru = find(e.u), rv = find(e.v);
    if (ru != rv) {
      parent[ru] = rv;
      --components;
    }
  }
  return components == 1;
}

}  // namespace detail

/// Checks the atom invariants and returns a normalized copy (undirected
/// edges oriented u <= v, edges sorted). Throws SpecError.
inline Atom normalize_atom(Atom a) {
  const std::string who = a.name.empty() ? std::string("atom") : "atom '" + a.name + "'";
  if (a.order < 1) throw SpecError(who + ": order must be at least 1");
  if (!a.vertex_labels.empty() && a.vertex_labels.size() != a.order)
    throw SpecError(who + ": vertex_labels must have one entry per vertex");
  for (auto& e : a.edges) {
    if (e.u >= a.order || e.v >= a.order)
      throw SpecError(who + ": edge endpoint out of range");
    if (!a.directed && e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(a.edges.begin(), a.edges.end());
  if (std::adjacent_find(a.edges.begin(), a.edges.end()) != a.edges.end())
    throw SpecError(who + ": duplicate edge");
  if (a.has_self_loop() && a.order != 1)
    throw SpecError(who + ": self-loops are only admitted on the single-vertex atom");
  if (a.order > 1 && a.edges.empty()) throw SpecError(who + ": atom has no edges");
  if (!detail::weakly_connected(a)) throw SpecError(who + ": atom must be connected");
  return a;
}

inline Atom make_atom(std::string name, std::uint32_t order, std::vector<std::pair<Vertex, Vertex>> edges,
                      bool directed = false) {
  Atom a;
  a.name = std::move(name);
  a.order = order;
  a.directed = directed;
  for (auto [u, v] : edges) a.edges.push_back({u, v, {}});
  return normalize_atom(std::move(a));
}

inline Atom clique_atom(std::uint32_t k) {
  std::vector<std::pair<Vertex, Vertex>> es;
  for (Vertex i = 0; i < k; ++i)
    for (Vertex j = i + 1; j < k; ++j) es.emplace_back(i, j);
  return make_atom(std::to_string(k) + "-clique", k, std::move(es));
}

inline Atom cycle_atom(std::uint32_t k) {
  std::vector<std::pair<Vertex, Vertex>> es;
  for (Vertex i = 0; i < k; ++i) es.emplace_back(i, (i + 1) % k);
  return make_atom(std::to_string(k) + "-cycle", k, std::move(es));
}

inline Atom path_atom(std::uint32_t k) {
  std::vector<std::pair<Vertex, Vertex>> es;
  for (Vertex i = 0; i + 1 < k; ++i) es.emplace_back(i, i + 1);
  return make_atom("path-" + std::to_string(k), k, std::move(es));
}

/// Star with centre 0 and k leaves.
inline Atom star_atom(std::uint32_t k) {
  std::vector<std::pair<Vertex, Vertex>> es;
  for (Vertex i = 1; i <= k; ++i) es.emplace_back(0, i);
  return make_atom("star-" + std::to_string(k), k + 1, std::move(es));
}

inline Atom self_loop_atom() {
  Atom a;
  a.name = "self-loop";
  a.order = 1;
  a.edges.push_back({0, 0, {}});
  return normalize_atom(std::move(a));
}

namespace detail {

inline std::optional<std::uint32_t> parse_small_uint(const std::string& s) {
  if (s.empty() || s.size() > 3) return std::nullopt;
  std::uint32_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + static_cast<std::uint32_t>(c - '0');
  }
  return v;
}

}  // namespace detail

/// Built-in catalogue: edge, directed-edge, path-3, triangle, 4-cycle,
/// 4-clique, star-k, self-loop, plus the families k-clique, k-cycle, path-k.
inline std::optional<Atom> catalogue_atom(const std::string& name) {
  if (name == "edge") return make_atom("edge", 2, {{0, 1}});
  if (name == "directed-edge") return make_atom("directed-edge", 2, {{0, 1}}, true);
  if (name == "triangle") {
    auto a = clique_atom(3);
    a.name = "triangle";
    return a;
  }
  if (name == "self-loop") return self_loop_atom();
  auto suffix_num = [&](const std::string& prefix) -> std::optional<std::uint32_t> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    return detail::parse_small_uint(name.substr(prefix.size()));
  };
  auto prefix_num = [&](const std::string& suffix) -> std::optional<std::uint32_t> {
    if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0)
      return std::nullopt;
    return detail::parse_small_uint(name.substr(0, name.size() - suffix.size()));
  };
  if (auto k = suffix_num("star-"); k && *k >= 1) return star_atom(*k);
  if (auto k = suffix_num("path-"); k && *k >= 2) return path_atom(*k);
  if (auto k = prefix_num("-clique"); k && *k >= 2) return clique_atom(*k);
  if (auto k = prefix_num("-cycle"); k && *k >= 3) return cycle_atom(*k);
  return std::nullopt;
}

inline std::vector<std::string> catalogue_names() {
  return {"edge", "directed-edge", "path-3", "triangle", "4-cycle", "4-clique", "star-3", "self-loop"};
}

}  // namespace atomlab
