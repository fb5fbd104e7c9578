#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "atomlab/atom.hpp"
#include "atomlab/degree_spec.hpp"
#include "atomlab/error.hpp"
#include "atomlab/math.hpp"
#include "atomlab/microcanonical.hpp"
#include "atomlab/symmetry.hpp"

namespace atomlab {

using DegreeSeq = std::vector<std::int64_t>;
/// label_degrees[r][v]: degree of vertex v in the stubs carrying label r.
using LabelDegrees = std::vector<DegreeSeq>;
using CountMatrix = std::vector<std::vector<std::int64_t>>;

namespace detail {

inline std::int64_t sum_of(const DegreeSeq& d) {
  std::int64_t s = 0;
  for (auto x : d) s += x;
  return s;
}

inline double sum_log_factorials(const DegreeSeq& d) {
  double s = 0.0;
  for (auto x : d) s += log_factorial(static_cast<double>(x));
  return s;
}

inline void check_square(const CountMatrix& n, std::size_t B, bool symmetric) {
  if (n.size() != B) throw SpecError("edge count matrix must be " + std::to_string(B) + "x" + std::to_string(B));
  for (std::size_t r = 0; r < B; ++r) {
    if (n[r].size() != B) throw SpecError("edge count matrix must be square");
    for (std::size_t s = 0; s < B; ++s) {
      if (n[r][s] < 0) throw SpecError("negative edge count");
      if (symmetric && n[r][s] != n[s][r]) throw SpecError("undirected edge count matrix must be symmetric");
    }
  }
}

}  // namespace detail

/// Classical edge configuration-model entropy with both corrections:
/// ln((2E)!/(2^E E! prod d!)) - x/2 - x^2/4, x = <d^2>/<d> - 1.
inline double entropy_configuration_model(const DegreeSeq& d) {
  const std::int64_t total = detail::sum_of(d);
  if (total % 2 != 0) throw InfeasibleError("odd degree sum");
  const double E = static_cast<double>(total / 2);
  if (E == 0) return 0.0;
  const double x = detail::excess_of(d);
  double s = log_factorial(2 * E) - E * std::log(2.0) - log_factorial(E) - detail::sum_log_factorials(d);
  s -= x / 2.0;
  if (E > 1) s -= x * x / 4.0;
  return s;
}

// ---------------------------------------------------------------------------
// Bipartite and clique models.

inline double entropy_bipartite(const DegreeSeq& top, const DegreeSeq& bottom) {
  const auto n = detail::sum_of(top);
  if (n != detail::sum_of(bottom))
    throw InfeasibleError("top and bottom degree sums differ (" + std::to_string(n) + " vs " +
                          std::to_string(detail::sum_of(bottom)) + ")");
  if (n == 0) return 0.0;
  double s = log_factorial(static_cast<double>(n)) - detail::sum_log_factorials(top) - detail::sum_log_factorials(bottom);
  if (n > 1) s -= 0.5 * detail::excess_of(top) * detail::excess_of(bottom);
  return s;
}

/// Clique configuration model with every clique occurring once. With
/// `distinguishable` false, cliques of equal size are interchangeable and
/// sum over sizes of ln(count!) is subtracted.
inline double entropy_bipartite_cliques(const std::vector<std::uint32_t>& clique_sizes, const DegreeSeq& d,
                                        bool distinguishable = true) {
  double T = 0.0;
  for (auto k : clique_sizes) {
    if (k == 0) throw SpecError("clique size must be at least 1");
    T += k;
  }
  if (static_cast<double>(detail::sum_of(d)) != T)
    throw InfeasibleError("vertex degrees must sum to the total clique size");
  if (T == 0) return 0.0;
  const double x = detail::excess_of(d);
  double s = log_factorial(T) - detail::sum_log_factorials(d);
  for (auto k : clique_sizes) {
    const double m = k;
    s -= log_factorial(m);
    s -= 0.5 * (m * m - m) / T * x;
  }
  if (!distinguishable) {
    std::map<std::uint32_t, double> per_size;
    for (auto k : clique_sizes) per_size[k] += 1;
    for (const auto& [k, c] : per_size) s -= log_factorial(c);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Degree-corrected SBM family.

/// Degree-corrected SBM from per-label stub degrees (overlapping form) and
/// the symmetric matrix n[r][s] of edges between labels r and s.
///
/// The last term is the self-match correction. The cross-label part of it
/// (an e_rs edge whose two ends land on one vertex holding both labels)
/// vanishes when every vertex carries one label.
inline double entropy_dcsbm_labels(const CountMatrix& n, const LabelDegrees& deg) {
  const std::size_t B = deg.size();
  detail::check_square(n, B, true);
  std::vector<double> T(B, 0.0), x(B, 0.0);
  for (std::size_t r = 0; r < B; ++r) {
    std::int64_t expected = 2 * n[r][r];
    for (std::size_t s = 0; s < B; ++s)
      if (s != r) expected += n[r][s];
    if (detail::sum_of(deg[r]) != expected)
      throw InfeasibleError("label " + std::to_string(r) + ": degree sum " + std::to_string(detail::sum_of(deg[r])) +
                            " differs from the " + std::to_string(expected) + " half-edges implied by the counts");
    T[r] = static_cast<double>(expected);
    x[r] = detail::excess_of(deg[r]);
  }
  double s = 0.0;
  for (std::size_t r = 0; r < B; ++r) {
    s += log_factorial(T[r]) - detail::sum_log_factorials(deg[r]);
    for (std::size_t t = r; t < B; ++t) {
      const double c = static_cast<double>(n[r][t]);
      const double aut = r == t ? 2.0 : 1.0;
      s -= log_factorial(c) + c * std::log(aut);
      if (c > 1) {
        const double prod = r == t ? (x[r] / T[r]) * (x[r] / T[r]) : (x[r] / T[r]) * (x[t] / T[t]);
        s -= aut * c * c / 2.0 * prod;
      }
      if (c == 0) continue;
      if (r == t) {
        s -= c / T[r] * x[r];
      } else {
        double overlap = 0.0;
        for (std::size_t v = 0; v < deg[r].size(); ++v)
          overlap += static_cast<double>(deg[r][v]) * static_cast<double>(deg[t][v]);
        s -= c * overlap / (T[r] * T[t]);
      }
    }
  }
  return s;
}

/// Per-label degrees of a non-overlapping assignment: deg[r][v] = d(v) when
/// v is in block r.
inline LabelDegrees label_degrees(const std::vector<std::uint32_t>& block_of, std::size_t B, const DegreeSeq& d) {
  if (block_of.size() != d.size()) throw SpecError("block assignment and degree sequence differ in length");
  LabelDegrees deg(B, DegreeSeq(d.size(), 0));
  for (std::size_t v = 0; v < d.size(); ++v) {
    if (block_of[v] >= B) throw SpecError("block label out of range");
    deg[block_of[v]][v] = d[v];
  }
  return deg;
}

inline std::size_t block_count(const std::vector<std::uint32_t>& block_of) {
  std::uint32_t B = 0;
  for (auto b : block_of) B = std::max(B, b + 1);
  return B;
}

/// Standard degree-corrected SBM: one block per vertex, total degrees d(v).
inline double entropy_dcsbm(const std::vector<std::uint32_t>& block_of, const CountMatrix& n, const DegreeSeq& d) {
  const std::size_t B = std::max(block_count(block_of), n.size());
  return entropy_dcsbm_labels(n, label_degrees(block_of, B, d));
}

/// Variant keeping within-block and between-block degrees separately: the
/// sum of the diagonal-only and off-diagonal-only models.
inline double entropy_dcsbm_in_out(const std::vector<std::uint32_t>& block_of, const CountMatrix& n,
                                   const DegreeSeq& d_in, const DegreeSeq& d_out) {
  const std::size_t B = std::max(block_count(block_of), n.size());
  detail::check_square(n, B, true);
  CountMatrix diag(B, std::vector<std::int64_t>(B, 0)), off = n;
  for (std::size_t r = 0; r < B; ++r) {
    diag[r][r] = n[r][r];
    off[r][r] = 0;
  }
  return entropy_dcsbm_labels(diag, label_degrees(block_of, B, d_in)) +
         entropy_dcsbm_labels(off, label_degrees(block_of, B, d_out));
}

/// Directed degree-corrected SBM from per-label out- and in-degrees and the
/// ordered count matrix n[r][s] of edges r -> s.
inline double entropy_directed_dcsbm_labels(const CountMatrix& n, const LabelDegrees& out_deg,
                                            const LabelDegrees& in_deg) {
  const std::size_t B = out_deg.size();
  if (in_deg.size() != B) throw SpecError("in- and out-degree label counts differ");
  detail::check_square(n, B, false);
  std::vector<double> To(B, 0.0), Ti(B, 0.0), xo(B), xi(B);
  for (std::size_t r = 0; r < B; ++r) {
    std::int64_t so = 0, si = 0;
    for (std::size_t s = 0; s < B; ++s) {
      so += n[r][s];
      si += n[s][r];
    }
    if (detail::sum_of(out_deg[r]) != so || detail::sum_of(in_deg[r]) != si)
      throw InfeasibleError("label " + std::to_string(r) + ": degree sums disagree with the edge counts");
    To[r] = static_cast<double>(so);
    Ti[r] = static_cast<double>(si);
    xo[r] = detail::excess_of(out_deg[r]);
    xi[r] = detail::excess_of(in_deg[r]);
  }
  double s = 0.0;
  for (std::size_t r = 0; r < B; ++r) {
    s += log_factorial(To[r]) - detail::sum_log_factorials(out_deg[r]);
    s += log_factorial(Ti[r]) - detail::sum_log_factorials(in_deg[r]);
    for (std::size_t t = 0; t < B; ++t) {
      const double c = static_cast<double>(n[r][t]);
      s -= log_factorial(c);
      if (c > 1) s -= c * c / 2.0 * (xo[r] / To[r]) * (xi[t] / Ti[t]);
      if (c == 0) continue;
      double overlap = 0.0;
      for (std::size_t v = 0; v < out_deg[r].size(); ++v)
        overlap += static_cast<double>(out_deg[r][v]) * static_cast<double>(in_deg[t][v]);
      s -= c * overlap / (To[r] * Ti[t]);
    }
  }
  return s;
}

inline double entropy_directed_dcsbm(const std::vector<std::uint32_t>& block_of, const CountMatrix& n,
                                     const DegreeSeq& d_out, const DegreeSeq& d_in) {
  const std::size_t B = std::max(block_count(block_of), n.size());
  return entropy_directed_dcsbm_labels(n, label_degrees(block_of, B, d_out), label_degrees(block_of, B, d_in));
}

// ---------------------------------------------------------------------------
// Multilayer models.

/// Layers coupled through the aggregate degree d_L: configuration-model
/// entropy at d_L plus the log multinomial of assigning edges to layers.
inline double entropy_multilayer_vertex_coupled(const std::vector<std::int64_t>& layer_edges, const DegreeSeq& d_L) {
  std::int64_t nL = 0;
  for (auto n : layer_edges) {
    if (n < 0) throw SpecError("negative layer edge count");
    nL += n;
  }
  if (detail::sum_of(d_L) != 2 * nL)
    throw InfeasibleError("aggregate degrees must sum to twice the total number of edges");
  double s = entropy_configuration_model(d_L) + log_factorial(static_cast<double>(nL));
  for (auto n : layer_edges) s -= log_factorial(static_cast<double>(n));
  return s;
}

/// Independent layers: the sum of per-layer configuration-model entropies.
inline double entropy_multilayer_uncoupled(const LabelDegrees& layer_degrees) {
  double s = 0.0;
  for (const auto& d : layer_degrees) s += entropy_configuration_model(d);
  return s;
}

// ---------------------------------------------------------------------------
// Labelled-atom constructions for the general machinery.

enum class ModelKind { Bipartite, Sbm, DirectedSbm, LinkCommunity, MultilayerEdgePattern };

inline ModelKind parse_model_kind(const std::string& s) {
  if (s == "bipartite") return ModelKind::Bipartite;
  if (s == "sbm") return ModelKind::Sbm;
  if (s == "directed-sbm") return ModelKind::DirectedSbm;
  if (s == "link-community") return ModelKind::LinkCommunity;
  if (s == "multilayer-edge-pattern") return ModelKind::MultilayerEdgePattern;
  throw SpecError("unsupported model kind '" + s + "'");
}

/// Inputs of build_labelled_atoms; each kind reads only the fields it needs.
struct ModelParams {
  // bipartite
  DegreeSeq top_degrees, bottom_degrees;
  // sbm / directed-sbm
  std::vector<std::uint32_t> block_of;
  CountMatrix edge_counts;
  DegreeSeq degrees;            // sbm total degree, or directed out-degree
  DegreeSeq in_degrees;         // directed in-degree
  LabelDegrees label_degrees;   // sbm overlapping form (takes precedence)
  // link-community / multilayer-edge-pattern: one degree sequence per label
  // or pattern; patterns list the layer labels of their parallel edges.
  LabelDegrees layer_degrees;
  std::vector<std::vector<std::string>> patterns;
};

struct LabelledModel {
  AtomSetPtr atoms;
  MicroDegreeSpec spec;
};

namespace detail {

inline LabelledModel singleton_model(std::vector<Atom> atoms, const LabelDegrees& degrees) {
  LabelledModel lm;
  lm.atoms = make_atom_set(atoms);
  lm.spec.atoms = lm.atoms;
  lm.spec.n_vertices = degrees.empty() ? 0 : degrees.front().size();
  for (std::uint32_t m = 0; m < atoms.size(); ++m) {
    if ((*lm.atoms)[m].orbit_count() != 1) throw Error("expected a single-orbit atom");
    if (degrees[m].size() != lm.spec.n_vertices) throw SpecError("degree sequences differ in length");
    lm.spec.groups.push_back({{OrbitRef{m, 0}}, degrees[m]});
  }
  lm.spec.counts.assign(atoms.size(), std::nullopt);
  return lm;
}

}  // namespace detail

inline LabelledModel build_labelled_atoms(ModelKind kind, const ModelParams& p) {
  switch (kind) {
    case ModelKind::Bipartite: {
      Atom a = make_atom("bipartite-edge", 2, {{0, 1}});
      a.vertex_labels = {"t", "b"};
      LabelledModel lm;
      lm.atoms = make_atom_set({a});
      const std::size_t nt = p.top_degrees.size(), nb = p.bottom_degrees.size();
      DegreeSeq t(nt + nb, 0), b(nt + nb, 0);
      std::copy(p.top_degrees.begin(), p.top_degrees.end(), t.begin());
      std::copy(p.bottom_degrees.begin(), p.bottom_degrees.end(), b.begin() + static_cast<std::ptrdiff_t>(nt));
      lm.spec.atoms = lm.atoms;
      lm.spec.n_vertices = nt + nb;
      const auto& sym = (*lm.atoms)[0].symmetry;
      lm.spec.groups.push_back({{OrbitRef{0, sym.orbit_of[0]}}, t});
      lm.spec.groups.push_back({{OrbitRef{0, sym.orbit_of[1]}}, b});
      lm.spec.counts.assign(1, std::nullopt);
      return lm;
    }
    case ModelKind::Sbm: {
      LabelDegrees deg = p.label_degrees;
      std::size_t B = deg.size();
      if (deg.empty()) {
        B = std::max(block_count(p.block_of), p.edge_counts.size());
        deg = label_degrees(p.block_of, B, p.degrees);
      }
      if (B == 0) throw SpecError("sbm needs at least one block");
      detail::check_square(p.edge_counts, B, true);
      std::vector<Atom> atoms;
      std::vector<std::pair<std::size_t, std::size_t>> pair_of;
      for (std::size_t r = 0; r < B; ++r)
        for (std::size_t s = r; s < B; ++s) {
          Atom a = make_atom("e_" + std::to_string(r) + "_" + std::to_string(s), 2, {{0, 1}});
          a.vertex_labels = {std::to_string(r), std::to_string(s)};
          atoms.push_back(a);
          pair_of.emplace_back(r, s);
        }
      LabelledModel lm;
      lm.atoms = make_atom_set(atoms);
      lm.spec.atoms = lm.atoms;
      lm.spec.n_vertices = deg.front().size();
      std::vector<std::vector<OrbitRef>> members(B);
      for (std::uint32_t m = 0; m < atoms.size(); ++m) {
        const auto [r, s] = pair_of[m];
        const auto& sym = (*lm.atoms)[m].symmetry;
        members[r].push_back({m, sym.orbit_of[0]});
        if (r != s) members[s].push_back({m, sym.orbit_of[1]});
        lm.spec.counts.emplace_back(p.edge_counts[r][s]);
      }
      for (std::size_t r = 0; r < B; ++r) lm.spec.groups.push_back({members[r], deg[r]});
      return lm;
    }
    case ModelKind::DirectedSbm: {
      const std::size_t B = std::max(block_count(p.block_of), p.edge_counts.size());
      if (B == 0) throw SpecError("directed sbm needs at least one block");
      detail::check_square(p.edge_counts, B, false);
      const auto out_deg = label_degrees(p.block_of, B, p.degrees);
      const auto in_deg = label_degrees(p.block_of, B, p.in_degrees);
      std::vector<Atom> atoms;
      for (std::size_t r = 0; r < B; ++r)
        for (std::size_t s = 0; s < B; ++s) {
          Atom a = make_atom("d_" + std::to_string(r) + "_" + std::to_string(s), 2, {{0, 1}}, true);
          a.vertex_labels = {std::to_string(r), std::to_string(s)};
          atoms.push_back(a);
        }
      LabelledModel lm;
      lm.atoms = make_atom_set(atoms);
      lm.spec.atoms = lm.atoms;
      lm.spec.n_vertices = p.block_of.size();
      std::vector<std::vector<OrbitRef>> out_members(B), in_members(B);
      for (std::uint32_t m = 0; m < atoms.size(); ++m) {
        const std::size_t r = m / B, s = m % B;
        const auto& sym = (*lm.atoms)[m].symmetry;
        out_members[r].push_back({m, sym.orbit_of[0]});
        in_members[s].push_back({m, sym.orbit_of[1]});
        lm.spec.counts.emplace_back(p.edge_counts[r][s]);
      }
      for (std::size_t r = 0; r < B; ++r) {
        lm.spec.groups.push_back({out_members[r], out_deg[r]});
        lm.spec.groups.push_back({in_members[r], in_deg[r]});
      }
      return lm;
    }
    case ModelKind::LinkCommunity: {
      std::vector<Atom> atoms;
      for (std::size_t l = 0; l < p.layer_degrees.size(); ++l) {
        Atom a = make_atom("link-" + std::to_string(l), 2, {{0, 1}});
        a.edges[0].label = std::to_string(l);
        atoms.push_back(a);
      }
      if (atoms.empty()) throw SpecError("link-community model needs at least one label");
      return detail::singleton_model(std::move(atoms), p.layer_degrees);
    }
    case ModelKind::MultilayerEdgePattern: {
      if (p.patterns.empty() || p.patterns.size() != p.layer_degrees.size())
        throw SpecError("multilayer-edge-pattern needs one degree sequence per pattern");
      std::vector<Atom> atoms;
      for (const auto& pat : p.patterns) {
        if (pat.empty()) throw SpecError("empty layer pattern");
        std::string name = "pattern";
        Atom a;
        a.order = 2;
        for (const auto& layer : pat) {
          a.edges.push_back(AtomEdge{0, 1, layer});
          name += "-" + layer;
        }
        a.name = name;
        atoms.push_back(a);
      }
      return detail::singleton_model(std::move(atoms), p.layer_degrees);
    }
  }
  throw SpecError("unsupported model kind");
}

/// Closed-form entropy of a named model, for comparison with
/// entropy_combinatorial(build_labelled_atoms(kind, p).spec).
inline double entropy_named_model(ModelKind kind, const ModelParams& p) {
  switch (kind) {
    case ModelKind::Bipartite:
      return entropy_bipartite(p.top_degrees, p.bottom_degrees);
    case ModelKind::Sbm:
      if (!p.label_degrees.empty()) return entropy_dcsbm_labels(p.edge_counts, p.label_degrees);
      return entropy_dcsbm(p.block_of, p.edge_counts, p.degrees);
    case ModelKind::DirectedSbm:
      return entropy_directed_dcsbm(p.block_of, p.edge_counts, p.degrees, p.in_degrees);
    case ModelKind::LinkCommunity:
    case ModelKind::MultilayerEdgePattern:
      return entropy_multilayer_uncoupled(p.layer_degrees);
  }
  throw SpecError("unsupported model kind");
}

}  // namespace atomlab
