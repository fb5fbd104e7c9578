#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "atomlab/atom.hpp"
#include "atomlab/canonical.hpp"
#include "atomlab/configuration.hpp"
#include "atomlab/degree_spec.hpp"
#include "atomlab/error.hpp"
#include "atomlab/graph.hpp"
#include "atomlab/math.hpp"
#include "atomlab/microcanonical.hpp"
#include "atomlab/special_models.hpp"
#include "atomlab/symmetry.hpp"

namespace atomlab::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON text with positioned diagnostics.

/// Line and column (1-based) of a byte offset.
inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline json parse_json(const std::string& text, const std::string& source = "<input>") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports the offset one past the offending byte.
    const std::size_t off = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, col] = line_column(text, off);
    std::string what = e.what();
    if (auto p = what.find("parse error"); p != std::string::npos) what = what.substr(p);
    throw SpecError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json load_json_file(const std::string& path) { return parse_json(read_file(path), path); }

namespace detail {

template <class T>
T get_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw SpecError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SpecError(where + ": field '" + key + "' has the wrong type (" + e.what() + ")");
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return get_field<T>(j, key, where);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Atoms.

/// {name, directed, order, edges:[[u,v],...], vertex_labels?, edge_labels?}
/// edge_labels runs parallel to edges.
inline Atom atom_from_json(const json& j) {
  const std::string where = "atom";
  if (!j.is_object()) throw SpecError("atom specification must be a JSON object");
  Atom a;
  a.name = detail::get_or<std::string>(j, "name", "", where);
  a.directed = detail::get_or<bool>(j, "directed", false, where);
  a.order = detail::get_field<std::uint32_t>(j, "order", where);
  const auto edges = detail::get_field<std::vector<std::vector<std::int64_t>>>(j, "edges", where);
  const auto labels = detail::get_or<std::vector<std::string>>(j, "edge_labels", {}, where);
  if (!labels.empty() && labels.size() != edges.size())
    throw SpecError("atom '" + a.name + "': edge_labels must have one entry per edge");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].size() != 2) throw SpecError("atom '" + a.name + "': every edge needs two endpoints");
    if (edges[e][0] < 0 || edges[e][1] < 0) throw SpecError("atom '" + a.name + "': negative endpoint");
    a.edges.push_back(AtomEdge{static_cast<Vertex>(edges[e][0]), static_cast<Vertex>(edges[e][1]),
                               labels.empty() ? std::string{} : labels[e]});
  }
  a.vertex_labels = detail::get_or<std::vector<std::string>>(j, "vertex_labels", {}, where);
  if (a.name.empty()) a.name = "atom";
  return normalize_atom(std::move(a));
}

inline json atom_to_json(const Atom& a) {
  json j;
  j["name"] = a.name;
  j["directed"] = a.directed;
  j["order"] = a.order;
  json edges = json::array(), labels = json::array();
  for (const auto& e : a.edges) {
    edges.push_back({e.u, e.v});
    labels.push_back(e.label);
  }
  j["edges"] = edges;
  if (a.edge_labelled()) j["edge_labels"] = labels;
  if (a.vertex_labelled()) j["vertex_labels"] = a.vertex_labels;
  return j;
}

/// A catalogue name or an inline atom object.
inline Atom resolve_atom(const json& j) {
  if (j.is_string()) {
    auto a = catalogue_atom(j.get<std::string>());
    if (!a) throw SpecError("unknown catalogue atom '" + j.get<std::string>() + "'");
    return *a;
  }
  return atom_from_json(j);
}

inline std::string hex_encode(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (unsigned char c : bytes) {
    out += digits[c >> 4];
    out += digits[c & 15];
  }
  return out;
}

/// Identifier used for an atom in configuration files: its name when that
/// is unique in the set, otherwise its hex-encoded canonical key.
inline std::string atom_identifier(const AtomSet& atoms, std::uint32_t m) {
  std::size_t same = 0;
  for (const auto& a : atoms) same += a.name() == atoms[m].name();
  return same == 1 ? atoms[m].name() : hex_encode(atoms[m].symmetry.canonical_key);
}

inline std::uint32_t find_atom(const AtomSet& atoms, const std::string& id) {
  std::optional<std::uint32_t> hit;
  for (std::uint32_t m = 0; m < atoms.size(); ++m) {
    if (atoms[m].name() == id || hex_encode(atoms[m].symmetry.canonical_key) == id) {
      if (hit) throw SpecError("atom identifier '" + id + "' is ambiguous");
      hit = m;
    }
  }
  if (!hit) throw SpecError("unknown atom '" + id + "'");
  return *hit;
}

// ---------------------------------------------------------------------------
// Configurations (JSONL) and graphs (edge lists).

inline void write_configuration_jsonl(std::ostream& out, const Configuration& c) {
  for (const auto& p : c) {
    json j;
    j["atom"] = atom_identifier(*c.atoms(), p.atom);
    j["vertices"] = p.vertices;
    out << j.dump() << '\n';
  }
}

inline Configuration read_configuration_jsonl(std::istream& in, std::size_t n_vertices, AtomSetPtr atoms,
                                              const std::string& source = "<configuration>") {
  ConfigurationBuilder b(n_vertices, atoms);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = parse_json(line, source + ":" + std::to_string(lineno));
    const auto id = detail::get_field<std::string>(j, "atom", source);
    const auto vs = detail::get_field<std::vector<Vertex>>(j, "vertices", source);
    b.insert(find_atom(*atoms, id), std::span<const Vertex>(vs));
  }
  return std::move(b).build();
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# n_vertices=" << g.n_vertices << " directed=" << (g.directed ? 1 : 0) << '\n';
  for (const auto& e : g.edges) {
    out << e.u << ' ' << e.v;
    if (!e.label.empty()) out << ' ' << e.label;
    out << '\n';
  }
}

inline Graph read_edge_list(std::istream& in, const std::string& source = "<edges>") {
  Graph g;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      unsigned long long n = 0;
      int directed = 0;
      if (std::sscanf(line.c_str(), "# n_vertices=%llu directed=%d", &n, &directed) == 2) {
        g.n_vertices = n;
        g.directed = directed != 0;
        g.allow_self_loops = true;
        header = true;
      }
      continue;
    }
    if (!header) throw SpecError(source + ":" + std::to_string(lineno) + ": edge before the header line");
    std::istringstream ls(line);
    long long u = -1, v = -1;
    std::string label;
    if (!(ls >> u >> v) || u < 0 || v < 0)
      throw SpecError(source + ":" + std::to_string(lineno) + ": expected 'u v [label]'");
    ls >> label;
    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), label);
  }
  if (!header) throw SpecError(source + ": missing '# n_vertices=N directed=0|1' header");
  return g;
}

// ---------------------------------------------------------------------------
// Ensemble specifications.

enum class Mode {
  CanonicalCounts,
  CanonicalDegrees,
  MicroCounts,
  MicroDegrees,
  MicroAtomDegrees,
  MicroTotalDegree,
  NamedModel,
};

inline Mode parse_mode(const std::string& s) {
  static const std::map<std::string, Mode> table = {
      {"canonical-counts", Mode::CanonicalCounts}, {"canonical-degrees", Mode::CanonicalDegrees},
      {"micro-counts", Mode::MicroCounts},         {"micro-degrees", Mode::MicroDegrees},
      {"micro-atom-degrees", Mode::MicroAtomDegrees}, {"micro-total-degree", Mode::MicroTotalDegree},
      {"named-model", Mode::NamedModel},
  };
  auto it = table.find(s);
  if (it == table.end()) throw SpecError("unknown mode '" + s + "'");
  return it->second;
}

/// Closed-form models that are not built from labelled atoms.
enum class ExtraModel { None, BipartiteCliques, MultilayerVertexCoupled, SbmInOut };

struct EnsembleSpec {
  Mode mode = Mode::MicroCounts;
  std::string mode_name;
  std::size_t n_vertices = 0;
  AtomSetPtr atoms;
  std::vector<double> counts;  // canonical-counts, micro-counts, micro-total-degree
  CanonicalDegreeSpec canonical;
  MicroDegreeSpec micro;  // micro-degrees, micro-atom-degrees, micro-total-degree
  std::vector<std::vector<std::int64_t>> atom_degrees;
  std::vector<std::int64_t> total_degrees;
  // named-model
  std::string model;
  std::optional<ModelKind> kind;
  ExtraModel extra = ExtraModel::None;
  ModelParams params;
  std::vector<std::uint32_t> clique_sizes;
  bool distinguishable = true;
  std::vector<std::int64_t> layer_edges;
  DegreeSeq in_community_degrees, out_community_degrees;
  std::string source_dump;

  /// FNV-1a of the canonical JSON dump, as 16 hex digits.
  std::string hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(source_dump)));
    return buf;
  }
};

namespace detail {

template <class D>
DegreeSpec<D> degree_spec_from_json(const json& j, std::size_t N, const AtomSetPtr& atoms) {
  const std::string where = "ensemble spec";
  DegreeSpec<D> spec;
  spec.n_vertices = N;
  spec.atoms = atoms;
  spec.counts.assign(atoms->size(), std::nullopt);
  if (j.contains("counts") && !j["counts"].is_null()) {
    const auto& c = j["counts"];
    if (!c.is_array() || c.size() != atoms->size()) throw SpecError(where + ": 'counts' needs one entry per atom");
    for (std::size_t m = 0; m < atoms->size(); ++m)
      if (!c[m].is_null()) spec.counts[m] = c[m].get<D>();
  }
  std::set<OrbitRef> grouped;
  if (j.contains("aggregation_groups")) {
    for (const auto& g : j["aggregation_groups"]) {
      DegreeGroup<D> grp;
      for (const auto& r : get_field<std::vector<std::vector<std::uint32_t>>>(g, "members", where + " group")) {
        if (r.size() != 2) throw SpecError(where + ": group members are [atom, orbit] pairs");
        grp.members.push_back({r[0], r[1]});
        grouped.insert({r[0], r[1]});
      }
      grp.degrees = get_field<std::vector<D>>(g, "degrees", where + " group");
      spec.groups.push_back(std::move(grp));
    }
  }
  const json deg = j.contains("degrees") ? j["degrees"] : json::array();
  if (!deg.is_array() || deg.size() != atoms->size())
    throw SpecError(where + ": 'degrees' needs one entry (a list of orbit sequences) per atom");
  std::vector<DegreeGroup<D>> singles;
  for (std::uint32_t m = 0; m < atoms->size(); ++m) {
    const auto& per = deg[m];
    const auto k = (*atoms)[m].orbit_count();
    if (!per.is_array() || per.size() != k)
      throw SpecError(where + ": atom '" + (*atoms)[m].name() + "' needs " + std::to_string(k) +
                      " orbit degree sequences (null for aggregated orbits)");
    for (std::uint32_t i = 0; i < k; ++i) {
      if (per[i].is_null()) {
        if (!grouped.count({m, i}))
          throw SpecError(where + ": orbit " + std::to_string(i) + " of '" + (*atoms)[m].name() +
                          "' has no degrees and is not in an aggregation group");
        continue;
      }
      if (grouped.count({m, i}))
        throw SpecError(where + ": orbit " + std::to_string(i) + " of '" + (*atoms)[m].name() +
                        "' has its own degrees but is also aggregated");
      singles.push_back({{OrbitRef{m, i}}, per[i].get<std::vector<D>>()});
    }
  }
  singles.insert(singles.end(), spec.groups.begin(), spec.groups.end());
  spec.groups = std::move(singles);
  return spec;
}

inline ModelParams model_params_from_json(const json& p) {
  const std::string where = "model params";
  ModelParams mp;
  mp.top_degrees = get_or<DegreeSeq>(p, "top_degrees", {}, where);
  mp.bottom_degrees = get_or<DegreeSeq>(p, "bottom_degrees", {}, where);
  mp.block_of = get_or<std::vector<std::uint32_t>>(p, "block_of", {}, where);
  mp.edge_counts = get_or<CountMatrix>(p, "edge_counts", {}, where);
  mp.degrees = get_or<DegreeSeq>(p, "degrees", {}, where);
  if (p.contains("out_degrees")) mp.degrees = get_field<DegreeSeq>(p, "out_degrees", where);
  mp.in_degrees = get_or<DegreeSeq>(p, "in_degrees", {}, where);
  mp.label_degrees = get_or<LabelDegrees>(p, "label_degrees", {}, where);
  mp.layer_degrees = get_or<LabelDegrees>(p, "layer_degrees", {}, where);
  mp.patterns = get_or<std::vector<std::vector<std::string>>>(p, "patterns", {}, where);
  return mp;
}

}  // namespace detail

inline EnsembleSpec ensemble_from_json(const json& j) {
  const std::string where = "ensemble spec";
  if (!j.is_object()) throw SpecError(where + " must be a JSON object");
  EnsembleSpec es;
  es.source_dump = j.dump();
  es.mode_name = detail::get_field<std::string>(j, "mode", where);
  es.mode = parse_mode(es.mode_name);

  if (es.mode == Mode::NamedModel) {
    es.model = detail::get_field<std::string>(j, "model", where);
    const json params = j.contains("params") ? j["params"] : json::object();
    es.params = detail::model_params_from_json(params);
    if (es.model == "bipartite-cliques") {
      es.extra = ExtraModel::BipartiteCliques;
      es.clique_sizes = detail::get_field<std::vector<std::uint32_t>>(params, "clique_sizes", where);
      es.distinguishable = detail::get_or<bool>(params, "distinguishable", true, where);
    } else if (es.model == "multilayer-vertex-coupled") {
      es.extra = ExtraModel::MultilayerVertexCoupled;
      es.layer_edges = detail::get_field<std::vector<std::int64_t>>(params, "layer_edges", where);
    } else if (es.model == "sbm-in-out") {
      es.extra = ExtraModel::SbmInOut;
      es.in_community_degrees = detail::get_field<DegreeSeq>(params, "in_community_degrees", where);
      es.out_community_degrees = detail::get_field<DegreeSeq>(params, "out_community_degrees", where);
    } else {
      es.kind = parse_model_kind(es.model);
      auto lm = build_labelled_atoms(*es.kind, es.params);
      es.atoms = lm.atoms;
      es.micro = std::move(lm.spec);
      es.n_vertices = es.micro.n_vertices;
    }
    return es;
  }

  es.n_vertices = detail::get_field<std::size_t>(j, "n_vertices", where);
  if (!j.contains("atoms") || !j["atoms"].is_array() || j["atoms"].empty())
    throw SpecError(where + ": 'atoms' must be a non-empty list");
  std::vector<Atom> atoms;
  for (const auto& a : j["atoms"]) atoms.push_back(resolve_atom(a));
  es.atoms = make_atom_set(atoms);
  const std::size_t M = es.atoms->size();

  auto check_len = [&](std::size_t got, const std::string& what) {
    if (got != es.n_vertices)
      throw SpecError(where + ": " + what + " has " + std::to_string(got) + " entries, expected n_vertices = " +
                      std::to_string(es.n_vertices));
  };

  switch (es.mode) {
    case Mode::CanonicalCounts:
    case Mode::MicroCounts:
      es.counts = detail::get_field<std::vector<double>>(j, "counts", where);
      if (es.counts.size() != M) throw SpecError(where + ": 'counts' needs one entry per atom");
      if (es.mode == Mode::MicroCounts)
        for (double c : es.counts)
          if (c != std::floor(c)) throw SpecError(where + ": micro-counts need integer counts");
      break;
    case Mode::CanonicalDegrees:
      es.canonical = detail::degree_spec_from_json<double>(j, es.n_vertices, es.atoms);
      for (const auto& g : es.canonical.groups) check_len(g.degrees.size(), "a degree sequence");
      break;
    case Mode::MicroDegrees:
      es.micro = detail::degree_spec_from_json<std::int64_t>(j, es.n_vertices, es.atoms);
      for (const auto& g : es.micro.groups) check_len(g.degrees.size(), "a degree sequence");
      break;
    case Mode::MicroAtomDegrees:
      es.atom_degrees = detail::get_field<std::vector<std::vector<std::int64_t>>>(j, "degrees", where);
      if (es.atom_degrees.size() != M) throw SpecError(where + ": 'degrees' needs one sequence per atom");
      for (const auto& d : es.atom_degrees) check_len(d.size(), "a degree sequence");
      es.micro = per_atom_degree_spec(es.atoms, es.atom_degrees);
      break;
    case Mode::MicroTotalDegree: {
      es.counts = detail::get_field<std::vector<double>>(j, "counts", where);
      if (es.counts.size() != M) throw SpecError(where + ": 'counts' needs one entry per atom");
      es.total_degrees = detail::get_field<std::vector<std::int64_t>>(j, "degrees", where);
      check_len(es.total_degrees.size(), "'degrees'");
      std::vector<std::int64_t> c(es.counts.begin(), es.counts.end());
      es.micro = total_degree_spec(es.atoms, c, es.total_degrees);
      break;
    }
    case Mode::NamedModel:
      break;
  }
  return es;
}

inline EnsembleSpec load_ensemble(const std::string& path) { return ensemble_from_json(load_json_file(path)); }

inline MicroCountSpec micro_counts(const EnsembleSpec& es) {
  MicroCountSpec s;
  s.atoms = es.atoms;
  for (double c : es.counts) s.counts.push_back(static_cast<std::int64_t>(c));
  return s;
}

inline CanonicalCountSpec canonical_counts(const EnsembleSpec& es) { return {es.atoms, es.counts}; }

}  // namespace atomlab::io
