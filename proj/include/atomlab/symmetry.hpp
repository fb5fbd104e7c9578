#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "atomlab/atom.hpp"
#include "atomlab/error.hpp"
#include "atomlab/math.hpp"

namespace atomlab {

/// Brute-force symmetry computations enumerate order! permutations.
inline constexpr std::uint32_t kMaxSymmetryOrder = 10;

using Permutation = std::vector<Vertex>;

/// Automorphism group, orbit partition and canonical key of an atom.
///
/// A permutation p maps atom vertex v to p[v]. Orbits are sorted
/// internally and ordered by their smallest vertex.
struct AtomSymmetry {
  std::uint64_t aut_size = 0;
  std::vector<Permutation> automorphisms;
  std::vector<std::vector<Vertex>> orbits;
  std::vector<std::uint32_t> orbit_of;
  std::string canonical_key;

  std::size_t orbit_count() const { return orbits.size(); }
  std::uint32_t orbit_size(std::size_t i) const { return static_cast<std::uint32_t>(orbits[i].size()); }
  std::vector<std::uint32_t> orbit_sizes() const {
    std::vector<std::uint32_t> s;
    for (const auto& o : orbits) s.push_back(static_cast<std::uint32_t>(o.size()));
    return s;
  }
};

namespace detail {

// Structure encoded with integer label ids. Label ids come from the sorted
// set of label strings, so they do not depend on vertex numbering.
struct EncodedAtom {
  std::uint32_t order = 0;
  bool directed = false;
  std::vector<std::uint32_t> vertex_label;
  struct E {
    Vertex u, v;
    std::uint32_t label_bit;
  };
  std::vector<E> edges;
  std::vector<std::string> vertex_label_table;
  std::vector<std::string> edge_label_table;
};

inline EncodedAtom encode_atom(const Atom& a) {
  EncodedAtom enc;
  enc.order = a.order;
  enc.directed = a.directed;
  std::vector<std::string> vl(a.vertex_labels.begin(), a.vertex_labels.end());
  std::sort(vl.begin(), vl.end());
  vl.erase(std::unique(vl.begin(), vl.end()), vl.end());
  enc.vertex_label_table = vl;
  enc.vertex_label.assign(a.order, 0);
  for (Vertex v = 0; v < a.order && a.vertex_labelled(); ++v)
    enc.vertex_label[v] = static_cast<std::uint32_t>(
        std::lower_bound(vl.begin(), vl.end(), a.vertex_labels[v]) - vl.begin());
  std::vector<std::string> el;
  for (const auto& e : a.edges) el.push_back(e.label);
  std::sort(el.begin(), el.end());
  el.erase(std::unique(el.begin(), el.end()), el.end());
  if (el.size() > 63) throw SpecError("atom '" + a.name + "': more than 63 distinct edge labels");
  enc.edge_label_table = el;
  for (const auto& e : a.edges) {
    auto id = static_cast<std::uint32_t>(std::lower_bound(el.begin(), el.end(), e.label) - el.begin());
    enc.edges.push_back({e.u, e.v, id});
  }
  return enc;
}

// Serializes the relabelled structure (vertex v becomes p[v]) into `out`.
// Layout: vertex label ids in new order, then one bitmask of edge labels per
// vertex pair (ordered pairs when directed, i <= j otherwise).
inline void encode_permuted(const EncodedAtom& enc, const Permutation& p, std::vector<std::uint64_t>& out) {
  const std::uint32_t n = enc.order;
  out.assign(static_cast<std::size_t>(n) + static_cast<std::size_t>(n) * n, 0);
  for (Vertex v = 0; v < n; ++v) out[p[v]] = enc.vertex_label[v];
  for (const auto& e : enc.edges) {
    Vertex a = p[e.u], b = p[e.v];
    if (!enc.directed && a > b) std::swap(a, b);
    out[n + static_cast<std::size_t>(a) * n + b] |= (std::uint64_t{1} << e.label_bit);
  }
}

inline std::string serialize_key(const EncodedAtom& enc, const std::vector<std::uint64_t>& code) {
  std::string key;
  key += enc.directed ? "D" : "U";
  key += std::to_string(enc.order);
  auto table = [&key](char tag, const std::vector<std::string>& t) {
    key += tag;
    key += std::to_string(t.size());
    for (const auto& s : t) {
      key += ':';
      key += std::to_string(s.size());
      key += ':';
      key += s;
    }
  };
  table('V', enc.vertex_label_table);
  table('E', enc.edge_label_table);
  key += '|';
  for (auto c : code) {
    key += std::to_string(c);
    key += ',';
  }
  return key;
}

template <class F>
void for_each_permutation(std::uint32_t n, F&& f) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  do {
    f(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

inline void check_cap(const Atom& a) {
  if (a.order > kMaxSymmetryOrder)
    throw AtomTooLarge("atom '" + a.name + "' has order " + std::to_string(a.order) +
                       ", above the brute-force cap of " + std::to_string(kMaxSymmetryOrder));
}

}  // namespace detail

/// Lexicographically minimal encoding of the atom over all vertex
/// relabellings. Equal keys iff a label- and direction-preserving
/// isomorphism exists.
inline std::string canonical_key(const Atom& atom) {
  detail::check_cap(atom);
  const auto enc = detail::encode_atom(atom);
  std::vector<std::uint64_t> best, cur;
  bool first = true;
  detail::for_each_permutation(atom.order, [&](const Permutation& p) {
    detail::encode_permuted(enc, p, cur);
    if (first || cur < best) {
      best = cur;
      first = false;
    }
  });
  return detail::serialize_key(enc, best);
}

/// Automorphisms by exhaustive search over all order! permutations.
inline AtomSymmetry compute_symmetry(const Atom& atom) {
  detail::check_cap(atom);
  const auto enc = detail::encode_atom(atom);
  Permutation id(atom.order);
  std::iota(id.begin(), id.end(), Vertex{0});
  std::vector<std::uint64_t> reference, cur, best;
  detail::encode_permuted(enc, id, reference);
  best = reference;

  AtomSymmetry sym;
  detail::for_each_permutation(atom.order, [&](const Permutation& p) {
    detail::encode_permuted(enc, p, cur);
    if (cur == reference) sym.automorphisms.push_back(p);
    if (cur < best) best = cur;
  });
  sym.aut_size = sym.automorphisms.size();
  sym.canonical_key = detail::serialize_key(enc, best);

  // Orbits: u ~ v iff some automorphism maps u to v.
  std::vector<Vertex> parent(atom.order);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& p : sym.automorphisms)
    for (Vertex v = 0; v < atom.order; ++v) {
      auto a = find(v), b = find(p[v]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<Vertex, std::vector<Vertex>> by_root;
  for (Vertex v = 0; v < atom.order; ++v) by_root[find(v)].push_back(v);
  for (auto& [root, members] : by_root) sym.orbits.push_back(std::move(members));
  std::sort(sym.orbits.begin(), sym.orbits.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  sym.orbit_of.assign(atom.order, 0);
  for (std::uint32_t i = 0; i < sym.orbits.size(); ++i)
    for (Vertex v : sym.orbits[i]) sym.orbit_of[v] = i;
  return sym;
}

/// |H_{N,m}| = N! / ((N-|m|)! |Aut(m)|); zero when N < |m|.
inline BigInt count_placements(std::uint64_t n_vertices, std::uint32_t order, const AtomSymmetry& sym) {
  if (n_vertices < order) return 0;
  return falling_factorial(n_vertices, order) / sym.aut_size;
}

inline double log_count_placements(double n_vertices, std::uint32_t order, const AtomSymmetry& sym) {
  if (n_vertices < order) return -INFINITY;
  return log_factorial(n_vertices) - log_factorial(n_vertices - order) - std::log(static_cast<double>(sym.aut_size));
}

/// Number of distinct m-subgraphs compatible with a fixed orbit assignment:
/// prod_i |O_i|! / |Aut(m)|.
inline std::uint64_t mu(const AtomSymmetry& sym) {
  BigInt num = 1;
  for (const auto& o : sym.orbits) num *= factorial(o.size());
  return (num / sym.aut_size).convert_to<std::uint64_t>();
}

/// An atom together with its cached symmetry data.
struct AtomInfo {
  Atom atom;
  AtomSymmetry symmetry;

  std::uint32_t order() const { return atom.order; }
  std::uint64_t aut() const { return symmetry.aut_size; }
  std::size_t orbit_count() const { return symmetry.orbits.size(); }
  std::uint32_t orbit_size(std::size_t i) const { return symmetry.orbit_size(i); }
  const std::string& name() const { return atom.name; }
};

inline AtomInfo make_atom_info(Atom atom) {
  AtomInfo info;
  info.atom = normalize_atom(std::move(atom));
  info.symmetry = compute_symmetry(info.atom);
  return info;
}

using AtomSet = std::vector<AtomInfo>;
using AtomSetPtr = std::shared_ptr<const AtomSet>;

inline AtomSetPtr make_atom_set(const std::vector<Atom>& atoms) {
  auto set = std::make_shared<AtomSet>();
  for (const auto& a : atoms) set->push_back(make_atom_info(a));
  return set;
}

inline AtomInfo catalogue_info(const std::string& name) {
  auto a = catalogue_atom(name);
  if (!a) throw SpecError("unknown catalogue atom '" + name + "'");
  return make_atom_info(*a);
}

}  // namespace atomlab
