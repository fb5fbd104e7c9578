#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <string>
#include <vector>

#include "atomlab/error.hpp"
#include "atomlab/symmetry.hpp"

namespace atomlab {

/// One m-subgraph of K_N. `vertices[i]` is the host vertex playing atom
/// vertex i; the tuple is stored in Aut(m)-canonical form.
struct Placement {
  std::uint32_t atom = 0;
  std::vector<Vertex> vertices;

  friend auto operator<=>(const Placement&, const Placement&) = default;
};

/// Lexicographically smallest tuple among all Aut(m)-images of `t`.
inline std::vector<Vertex> canonical_tuple(const AtomSymmetry& sym, std::span<const Vertex> t) {
  std::vector<Vertex> best(t.begin(), t.end()), cur(t.size());
  for (const auto& beta : sym.automorphisms) {
    for (std::size_t i = 0; i < t.size(); ++i) cur[i] = t[beta[i]];
    if (cur < best) best = cur;
  }
  return best;
}

/// Rank patterns of the distinct m-subgraphs on one sorted |m|-subset:
/// each pattern maps atom vertex i to the rank of its host vertex.
inline std::vector<std::vector<std::uint32_t>> placement_patterns(const AtomSymmetry& sym, std::uint32_t order) {
  std::set<std::vector<std::uint32_t>> seen;
  detail::for_each_permutation(order, [&](const Permutation& p) {
    seen.insert(canonical_tuple(sym, std::span<const Vertex>(p)));
  });
  return {seen.begin(), seen.end()};
}

/// Streams every m-subgraph of K_N exactly once: |m|-subsets in ascending
/// lexicographic order, then canonical tuples in ascending order.
template <class F>
void for_each_placement(std::size_t n_vertices, std::uint32_t atom_index, const AtomInfo& info, F&& f) {
  const std::uint32_t k = info.order();
  if (n_vertices < k) return;
  const auto patterns = placement_patterns(info.symmetry, k);
  std::vector<Vertex> subset(k);
  for (std::uint32_t i = 0; i < k; ++i) subset[i] = i;
  Placement pl;
  pl.atom = atom_index;
  pl.vertices.resize(k);
  const auto n = static_cast<Vertex>(n_vertices);
  while (true) {
    for (const auto& pat : patterns) {
      for (std::uint32_t i = 0; i < k; ++i) pl.vertices[i] = subset[pat[i]];
      f(std::as_const(pl));
    }
    // next k-subset
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && subset[i] == n - k + static_cast<Vertex>(i)) --i;
    if (i < 0) break;
    ++subset[i];
    for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
}

inline std::vector<Placement> enumerate_placements(std::size_t n_vertices, std::uint32_t atom_index,
                                                   const AtomInfo& info) {
  std::vector<Placement> out;
  for_each_placement(n_vertices, atom_index, info, [&](const Placement& p) { out.push_back(p); });
  return out;
}

/// All placements of every atom of the set, atom by atom.
inline std::vector<Placement> enumerate_all_placements(std::size_t n_vertices, const AtomSet& atoms) {
  std::vector<Placement> out;
  for (std::uint32_t m = 0; m < atoms.size(); ++m) {
    auto part = enumerate_placements(n_vertices, m, atoms[m]);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

class ConfigurationBuilder;

/// A set of placements on N vertices (single occupancy). Immutable; build
/// one with ConfigurationBuilder.
class Configuration {
public:
  Configuration() = default;

  std::size_t n_vertices() const { return n_vertices_; }
  const AtomSetPtr& atoms() const { return atoms_; }
  const AtomInfo& atom(std::uint32_t m) const { return (*atoms_)[m]; }
  std::size_t size() const { return placements_.size(); }
  bool empty() const { return placements_.empty(); }
  auto begin() const { return placements_.begin(); }
  auto end() const { return placements_.end(); }
  const std::set<Placement>& placements() const { return placements_; }
  bool contains(const Placement& p) const { return placements_.count(p) != 0; }

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.n_vertices_ == b.n_vertices_ && a.placements_ == b.placements_;
  }

private:
  friend class ConfigurationBuilder;
  std::size_t n_vertices_ = 0;
  AtomSetPtr atoms_;
  std::set<Placement> placements_;
};

class ConfigurationBuilder {
public:
  ConfigurationBuilder(std::size_t n_vertices, AtomSetPtr atoms) {
    if (!atoms) throw SpecError("configuration needs an atom set");
    cfg_.n_vertices_ = n_vertices;
    cfg_.atoms_ = std::move(atoms);
  }

  /// Inserts the placement given by an arbitrary (not necessarily canonical)
  /// vertex tuple. Returns false when the subgraph is already present.
  bool insert(std::uint32_t atom, std::span<const Vertex> vertices) {
    const auto& set = *cfg_.atoms_;
    if (atom >= set.size()) throw SpecError("placement refers to unknown atom index " + std::to_string(atom));
    const auto& info = set[atom];
    if (vertices.size() != info.order())
      throw SpecError("placement of '" + info.name() + "' needs " + std::to_string(info.order()) + " vertices");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (vertices[i] >= cfg_.n_vertices_) throw SpecError("placement vertex out of range");
      for (std::size_t j = 0; j < i; ++j)
        if (vertices[i] == vertices[j]) throw SpecError("placement vertices must be distinct");
    }
    return cfg_.placements_.insert(Placement{atom, canonical_tuple(info.symmetry, vertices)}).second;
  }

  bool insert(std::uint32_t atom, std::initializer_list<Vertex> vertices) {
    return insert(atom, std::span<const Vertex>(vertices.begin(), vertices.size()));
  }

  /// Inserts an already canonical placement (no validation beyond range).
  bool insert_canonical(Placement p) { return cfg_.placements_.insert(std::move(p)).second; }

  std::size_t size() const { return cfg_.placements_.size(); }

  Configuration build() && { return std::move(cfg_); }
  Configuration build() const& { return cfg_; }

private:
  Configuration cfg_;
};

/// n_m per atom index.
inline std::vector<std::uint64_t> counts_by_atom(const Configuration& c) {
  std::vector<std::uint64_t> out(c.atoms() ? c.atoms()->size() : 0, 0);
  for (const auto& p : c) ++out[p.atom];
  return out;
}

/// n_m keyed by the canonical key of each atom; atoms of the set that do not
/// occur map to 0. Isomorphic catalogue entries share a key and are summed.
inline std::map<std::string, std::uint64_t> atom_counts(const Configuration& c) {
  std::map<std::string, std::uint64_t> out;
  if (!c.atoms()) return out;
  const auto per_atom = counts_by_atom(c);
  for (std::size_t m = 0; m < per_atom.size(); ++m) out[(*c.atoms())[m].symmetry.canonical_key] += per_atom[m];
  return out;
}

/// degrees[m][i][v] = number of m-placements in which v occupies orbit i.
using OrbitDegreeTable = std::vector<std::vector<std::vector<std::int64_t>>>;

inline OrbitDegreeTable orbit_degrees(const Configuration& c) {
  OrbitDegreeTable t;
  if (!c.atoms()) return t;
  const auto& atoms = *c.atoms();
  t.resize(atoms.size());
  for (std::size_t m = 0; m < atoms.size(); ++m)
    t[m].assign(atoms[m].orbit_count(), std::vector<std::int64_t>(c.n_vertices(), 0));
  for (const auto& p : c) {
    const auto& sym = atoms[p.atom].symmetry;
    for (std::size_t pos = 0; pos < p.vertices.size(); ++pos) ++t[p.atom][sym.orbit_of[pos]][p.vertices[pos]];
  }
  return t;
}

}  // namespace atomlab
