#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "atomlab/atom.hpp"
#include "atomlab/canonical.hpp"
#include "atomlab/configuration.hpp"
#include "atomlab/degree_spec.hpp"
#include "atomlab/microcanonical.hpp"
#include "atomlab/oracle.hpp"
#include "atomlab/random.hpp"
#include "atomlab/sampler.hpp"
#include "atomlab/special_models.hpp"
#include "atomlab/symmetry.hpp"

// Oracle-equivalence battery shared by `atomlab validate` and the tests.
namespace atomlab::validation {

struct CheckResult {
  explicit CheckResult(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;  // first failure, or a short summary
  double seconds = 0.0;
};

/// ln Omega(d) as a function of the spec. The battery takes it as a
/// parameter so a deliberately broken variant can be checked to fail.
using MatchingFormula = std::function<double(const MicroDegreeSpec&)>;

inline double default_matching_formula(const MicroDegreeSpec& spec) { return log_stub_matchings(spec); }

inline bool close_relative(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

namespace detail {

class Timer {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void fail(CheckResult& r, const std::string& msg) {
  if (r.passed) r.detail = msg;
  r.passed = false;
}

inline std::string seq_str(const std::vector<std::int64_t>& d) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ')';
  return os.str();
}

// Non-increasing sequences of positive parts summing to `total`.
inline void for_each_partition(std::int64_t total, const std::function<void(const std::vector<std::int64_t>&)>& f) {
  std::vector<std::int64_t> cur;
  std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t left, std::int64_t max_part) {
    if (left == 0) {
      f(cur);
      return;
    }
    for (std::int64_t p = std::min(left, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(total, total);
}

}  // namespace detail

/// Connected catalogue atoms (including family members) of order <= max_order.
inline std::vector<Atom> catalogue_up_to(std::uint32_t max_order) {
  std::vector<Atom> out;
  auto add = [&](const std::string& name) {
    auto a = catalogue_atom(name);
    if (a && a->order <= max_order &&
        std::none_of(out.begin(), out.end(), [&](const Atom& b) { return b.name == a->name; }))
      out.push_back(*a);
  };
  for (const auto& n : catalogue_names()) add(n);
  for (std::uint32_t k = 2; k <= max_order; ++k) {
    add("path-" + std::to_string(k));
    add(std::to_string(k) + "-clique");
    add(std::to_string(k) + "-cycle");
    add("star-" + std::to_string(k - 1));
  }
  return out;
}

/// |H| from the closed form against enumerated placements.
inline CheckResult check_placement_counts(std::uint32_t max_order, std::size_t max_n) {
  detail::Timer t;
  CheckResult r{"placement-count identity"};
  for (const auto& a : catalogue_up_to(max_order)) {
    const auto info = make_atom_info(a);
    for (std::size_t n = 0; n <= max_n; ++n) {
      const auto formula = count_placements(n, info.order(), info.symmetry);
      const auto brute = enumerate_placements(n, 0, info).size();
      ++r.cases;
      if (formula != BigInt(brute))
        detail::fail(r, info.name() + " N=" + std::to_string(n) + ": formula " + formula.str() + " vs " +
                            std::to_string(brute));
    }
  }
  if (r.passed) r.detail = std::to_string(r.cases) + " (atom, N) pairs";
  r.seconds = t.seconds();
  return r;
}

/// Automorphism sizes, orbit counts and mu of the reference atoms.
inline CheckResult check_symmetry_table() {
  detail::Timer t;
  CheckResult r{"symmetry table"};
  struct Row {
    const char* name;
    std::uint64_t aut;
    std::size_t orbits;
    std::uint64_t mu;  // 0: not checked
  };
  const Row rows[] = {{"edge", 2, 1, 0},     {"directed-edge", 1, 2, 0}, {"path-3", 2, 2, 0},
                      {"triangle", 6, 1, 1}, {"4-cycle", 8, 1, 3},      {"4-clique", 24, 1, 0}};
  for (const auto& row : rows) {
    const auto info = catalogue_info(row.name);
    // Independent count of automorphisms over all permutations.
    std::uint64_t brute = 0;
    atomlab::detail::for_each_permutation(info.order(), [&](const Permutation& p) {
      Atom b = info.atom;
      for (auto& e : b.edges) {
        e.u = p[e.u];
        e.v = p[e.v];
      }
      if (!b.vertex_labels.empty())
        for (std::uint32_t v = 0; v < info.order(); ++v) b.vertex_labels[p[v]] = info.atom.vertex_labels[v];
      std::set<std::tuple<Vertex, Vertex, std::string>> x, y;
      for (const auto& e : info.atom.edges)
        x.insert({info.atom.directed ? e.u : std::min(e.u, e.v), info.atom.directed ? e.v : std::max(e.u, e.v), e.label});
      for (const auto& e : b.edges)
        y.insert({b.directed ? e.u : std::min(e.u, e.v), b.directed ? e.v : std::max(e.u, e.v), e.label});
      if (x == y) ++brute;
    });
    ++r.cases;
    std::ostringstream os;
    os << row.name << ": aut=" << info.aut() << " (brute " << brute << ") orbits=" << info.orbit_count()
       << " mu=" << mu(info.symmetry);
    if (info.aut() != row.aut || brute != row.aut || info.orbit_count() != row.orbits ||
        (row.mu && mu(info.symmetry) != row.mu))
      detail::fail(r, os.str());
  }
  if (r.passed) r.detail = "6 atoms";
  r.seconds = t.seconds();
  return r;
}

/// Single-atom spec where orbit 0 carries `degrees` (single-orbit atoms).
inline MicroDegreeSpec single_orbit_spec(const Atom& atom, const std::vector<std::int64_t>& degrees) {
  auto atoms = make_atom_set({atom});
  return degree_spec_from_orbits<std::int64_t>(atoms, {{degrees}});
}

/// ln(exhaustive labelled-stub matchings) - sum ln d! against the formula.
inline CheckResult check_matching_counts(std::int64_t max_edge_stubs, std::int64_t max_triangle_stubs,
                                         const MatchingFormula& formula = default_matching_formula) {
  detail::Timer t;
  CheckResult r{"matching-count identity"};
  auto run = [&](const Atom& atom, std::int64_t max_stubs, std::int64_t step) {
    for (std::int64_t total = step; total <= max_stubs; total += step)
      detail::for_each_partition(total, [&](const std::vector<std::int64_t>& d) {
        const auto spec = single_orbit_spec(atom, d);
        const auto L = oracle::exact_matching_count(spec);
        double lhs = log_big(L);
        for (auto x : d) lhs -= log_factorial(static_cast<double>(x));
        const double rhs = formula(spec);
        ++r.cases;
        if (!(std::abs(lhs - rhs) <= 1e-9))
          detail::fail(r, atom.name + " d=" + detail::seq_str(d) + ": exhaustive " + std::to_string(lhs) +
                              " vs formula " + std::to_string(rhs));
      });
  };
  run(*catalogue_atom("edge"), max_edge_stubs, 2);
  run(*catalogue_atom("triangle"), max_triangle_stubs, 3);
  if (r.passed) r.detail = std::to_string(r.cases) + " degree sequences";
  r.seconds = t.seconds();
  return r;
}

/// Closed-form count of fixed-count configurations against enumeration, for
/// M = {edge}, {triangle}, {edge, triangle} and every count vector.
inline CheckResult check_fixed_counts(std::size_t max_n) {
  detail::Timer t;
  CheckResult r{"fixed-count identity"};
  const std::vector<std::vector<std::string>> sets = {{"edge"}, {"triangle"}, {"edge", "triangle"}};
  for (const auto& names : sets) {
    std::vector<Atom> atoms;
    for (const auto& n : names) atoms.push_back(*catalogue_atom(n));
    const auto set = make_atom_set(atoms);
    for (std::size_t N = 1; N <= max_n; ++N) {
      std::vector<std::int64_t> cap;
      for (const auto& info : *set) cap.push_back(count_placements(N, info.order(), info.symmetry).convert_to<std::int64_t>());
      std::vector<std::int64_t> c(set->size(), 0);
      while (true) {
        MicroCountSpec spec{set, c};
        const auto formula = count_fixed_counts(N, spec);
        const auto brute = oracle::enumerate_configurations(N, set, oracle::Constraint::with_counts(c)).size();
        ++r.cases;
        if (formula != BigInt(brute))
          detail::fail(r, "N=" + std::to_string(N) + " counts=" + detail::seq_str(c) + ": formula " + formula.str() +
                              " vs " + std::to_string(brute));
        std::size_t k = 0;
        while (k < c.size() && ++c[k] > cap[k]) c[k++] = 0;
        if (k == c.size()) break;
      }
    }
  }
  if (r.passed) r.detail = std::to_string(r.cases) + " count vectors";
  r.seconds = t.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Uniformity of the stub-matching sampler.

struct UniformityCase {
  std::string label;
  MicroDegreeSpec spec;
};

/// Exact probability that one stub-matching attempt is accepted: each
/// configuration is produced by prod_g prod_v d_g(v)! labelled matchings.
inline double exact_acceptance(const MicroDegreeSpec& spec, std::size_t support) {
  double l = std::log(static_cast<double>(support)) - log_big(labelled_stub_matchings(spec));
  for (const auto& g : spec.groups)
    for (auto d : g.degrees) l += log_factorial(static_cast<double>(d));
  return std::exp(l);
}

/// Degree specs realised on small vertex sets, one per vertex-relabelling
/// class (vertex degree vectors non-increasing), whose configuration space
/// has between 1 and `max_space` elements. Specs whose exact acceptance
/// rate is below `min_acceptance` are left out to bound the running time.
inline std::vector<UniformityCase> uniformity_corpus(std::size_t max_space, bool small, double min_acceptance) {
  struct Family {
    std::vector<std::string> atoms;
    std::size_t n;
  };
  std::vector<Family> fams = {{{"edge"}, 4}, {{"triangle"}, 5}, {{"edge", "triangle"}, 4}, {{"path-3"}, 4}};
  if (!small) {
    fams.push_back({{"edge"}, 5});
    fams.push_back({{"directed-edge"}, 3});
  }
  std::vector<UniformityCase> out;
  for (const auto& f : fams) {
    std::vector<Atom> atoms;
    for (const auto& n : f.atoms) atoms.push_back(*catalogue_atom(n));
    const auto set = make_atom_set(atoms);
    std::map<OrbitDegreeTable, std::size_t> seen;
    for (const auto& c : oracle::enumerate_configurations(f.n, set, oracle::Constraint::none()))
      ++seen[orbit_degrees(c)];
    for (const auto& [table, size] : seen) {
      if (size > max_space) continue;
      // vertex v's degree vector, flattened over atoms and orbits
      auto column = [&](std::size_t v) {
        std::vector<std::int64_t> col;
        for (const auto& per_atom : table)
          for (const auto& orbit : per_atom) col.push_back(orbit[v]);
        return col;
      };
      bool sorted = true;
      for (std::size_t v = 1; v < f.n; ++v) sorted = sorted && !(column(v - 1) < column(v));
      if (!sorted) continue;
      std::ostringstream label;
      label << "N=" << f.n << " {";
      for (std::size_t m = 0; m < f.atoms.size(); ++m) label << (m ? "," : "") << f.atoms[m];
      label << "}";
      for (const auto& per_atom : table)
        for (const auto& orbit : per_atom) label << ' ' << detail::seq_str(orbit);
      auto spec = degree_spec_from_orbits<std::int64_t>(set, table);
      if (exact_acceptance(spec, size) < min_acceptance) continue;
      out.push_back({label.str(), std::move(spec)});
    }
  }
  return out;
}

struct ChiSquare {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  std::uint64_t restarts = 0;
};

/// Draws `samples` accepted configurations and tests them against the
/// uniform distribution over the oracle's support.
inline ChiSquare uniformity_test(const MicroDegreeSpec& spec, std::size_t samples, std::uint64_t seed) {
  const auto ref = oracle::exact_sampler_distribution(spec);
  if (!ref.graphical) throw InfeasibleError("spec has no configurations");
  std::map<std::set<Placement>, std::size_t> index;
  for (std::size_t i = 0; i < ref.support.size(); ++i) index[ref.support[i].placements()] = i;
  std::vector<double> observed(ref.support.size(), 0.0);
  MicroSampler sampler(spec);
  Rng rng(seed);
  ChiSquare out;
  for (std::size_t s = 0; s < samples; ++s) {
    auto smp = sampler.sample(rng);
    out.restarts += smp.restarts;
    auto it = index.find(smp.configuration.placements());
    if (it == index.end()) throw Error("sampler produced a configuration outside the oracle support");
    observed[it->second] += 1;
  }
  const double expected = static_cast<double>(samples) / static_cast<double>(observed.size());
  for (double o : observed) out.statistic += (o - expected) * (o - expected) / expected;
  out.dof = observed.size() - 1;
  out.p_value = out.dof == 0 ? 1.0 : boost::math::gamma_q(out.dof / 2.0, out.statistic / 2.0);
  return out;
}

inline CheckResult check_uniformity(std::size_t samples, double alpha, bool small, std::uint64_t seed = 1,
                                    unsigned threads = std::thread::hardware_concurrency()) {
  detail::Timer t;
  CheckResult r{"sampler uniformity"};
  const auto corpus = uniformity_corpus(50, small, small ? 0.05 : 0.01);
  const auto results = parallel_samples<ChiSquare>(
      corpus.size(), seed, threads, [&](std::size_t i, Rng& rng) { return uniformity_test(corpus[i].spec, samples, rng()); });
  double worst = 1.0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& chi = results[i];
    ++r.cases;
    worst = std::min(worst, chi.p_value);
    if (chi.p_value < alpha)
      detail::fail(r, corpus[i].label + ": chi2=" + std::to_string(chi.statistic) + " dof=" + std::to_string(chi.dof) +
                          " p=" + std::to_string(chi.p_value));
  }
  if (r.passed) {
    std::ostringstream os;
    os << r.cases << " specs, smallest p = " << worst;
    r.detail = os.str();
  }
  r.seconds = t.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Reduction identities between closed forms and the general machinery.

/// Poisson(mean) degrees with an even sum (one vertex bumped if needed) and
/// at least one edge.
inline std::vector<std::int64_t> random_even_degrees(std::size_t n, double mean, Rng& rng) {
  std::poisson_distribution<std::int64_t> pois(mean);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::int64_t> d(n);
  std::int64_t sum = 0;
  for (auto& x : d) sum += (x = pois(rng));
  if (sum % 2) ++d[pick(rng)], ++sum;
  if (sum == 0) d[0] += 1, d[n > 1 ? 1 : 0] += 1;
  return d;
}

inline CheckResult check_single_edge_reduction(std::size_t instances, std::size_t n, std::uint64_t seed = 7) {
  detail::Timer t;
  CheckResult r{"single-edge reduction"};
  Rng rng(seed);
  std::uniform_real_distribution<double> mean(1.0, 6.0);
  const auto edge = *catalogue_atom("edge");
  for (std::size_t k = 0; k < instances; ++k) {
    const auto d = random_even_degrees(n, mean(rng), rng);
    const auto b = entropy_combinatorial(single_orbit_spec(edge, d));
    // classical terms
    double two_e = 0, s2 = 0, lfd = 0;
    for (auto x : d) {
      two_e += static_cast<double>(x);
      s2 += static_cast<double>(x * x);
      lfd += log_factorial(static_cast<double>(x));
    }
    const double E = two_e / 2, x = s2 / two_e - 1;
    const double match = log_factorial(two_e) - E * std::log(2.0) - log_factorial(E) - lfd;
    const double self = -x / 2, multi = E > 1 ? -x * x / 4 : 0.0;
    ++r.cases;
    if (!close_relative(b.stub_matchings, match, 1e-9) || !close_relative(b.self_match, self, 1e-9) ||
        !close_relative(b.multi_subgraph, multi, 1e-9) ||
        !close_relative(b.total, entropy_configuration_model(d), 1e-9)) {
      std::ostringstream os;
      os << "instance " << k << ": general (" << b.stub_matchings << ", " << b.self_match << ", " << b.multi_subgraph
         << ") vs classical (" << match << ", " << self << ", " << multi << ")";
      detail::fail(r, os.str());
    }
  }
  if (r.passed) r.detail = std::to_string(r.cases) + " degree sequences at N=" + std::to_string(n);
  r.seconds = t.seconds();
  return r;
}

// Random instances of each named model, all consistent by construction: the
// degrees and block counts are read off a random edge list.
namespace detail {

struct RandomEdges {
  std::vector<std::pair<Vertex, Vertex>> edges;
};

inline RandomEdges random_edges(std::size_t n, std::size_t m, Rng& rng) {
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  RandomEdges out;
  while (out.edges.size() < m) {
    const Vertex u = pick(rng), v = pick(rng);
    if (u != v) out.edges.emplace_back(u, v);
  }
  return out;
}

}  // namespace detail

inline ModelParams random_bipartite(Rng& rng) {
  std::uniform_int_distribution<std::size_t> size(3, 30);
  std::uniform_real_distribution<double> mean(0.5, 4.0);
  const std::size_t nt = size(rng), nb = size(rng);
  std::poisson_distribution<std::int64_t> pt(mean(rng)), pb(mean(rng));
  ModelParams p;
  for (std::size_t i = 0; i < nt; ++i) p.top_degrees.push_back(1 + pt(rng));
  for (std::size_t i = 0; i < nb; ++i) p.bottom_degrees.push_back(pb(rng));
  std::int64_t st = 0, sb = 0;
  for (auto x : p.top_degrees) st += x;
  for (auto x : p.bottom_degrees) sb += x;
  std::uniform_int_distribution<std::size_t> it(0, nt - 1), ib(0, nb - 1);
  while (sb < st) ++p.bottom_degrees[ib(rng)], ++sb;
  while (st < sb) ++p.top_degrees[it(rng)], ++st;
  return p;
}

inline ModelParams random_sbm(Rng& rng, bool overlapping) {
  std::uniform_int_distribution<std::size_t> nsize(6, 60), bsize(1, 4);
  const std::size_t n = nsize(rng), B = bsize(rng);
  std::uniform_int_distribution<std::size_t> esize(1, 3 * n);
  std::uniform_int_distribution<std::uint32_t> block(0, static_cast<std::uint32_t>(B - 1));
  ModelParams p;
  p.edge_counts.assign(B, std::vector<std::int64_t>(B, 0));
  const auto g = detail::random_edges(n, esize(rng), rng);
  if (overlapping) {
    p.label_degrees.assign(B, DegreeSeq(n, 0));
    for (auto [u, v] : g.edges) {
      const auto r = block(rng), s = block(rng);
      ++p.label_degrees[r][u];
      ++p.label_degrees[s][v];
      ++p.edge_counts[std::min(r, s)][std::max(r, s)];
      if (r != s) ++p.edge_counts[std::max(r, s)][std::min(r, s)];
    }
    return p;
  }
  for (std::size_t v = 0; v < n; ++v) p.block_of.push_back(v < B ? static_cast<std::uint32_t>(v) : block(rng));
  p.degrees.assign(n, 0);
  for (auto [u, v] : g.edges) {
    ++p.degrees[u];
    ++p.degrees[v];
    const auto r = p.block_of[u], s = p.block_of[v];
    ++p.edge_counts[std::min(r, s)][std::max(r, s)];
    if (r != s) ++p.edge_counts[std::max(r, s)][std::min(r, s)];
  }
  return p;
}

inline ModelParams random_directed_sbm(Rng& rng) {
  std::uniform_int_distribution<std::size_t> nsize(6, 60), bsize(1, 4);
  const std::size_t n = nsize(rng), B = bsize(rng);
  std::uniform_int_distribution<std::size_t> esize(1, 3 * n);
  std::uniform_int_distribution<std::uint32_t> block(0, static_cast<std::uint32_t>(B - 1));
  ModelParams p;
  for (std::size_t v = 0; v < n; ++v) p.block_of.push_back(v < B ? static_cast<std::uint32_t>(v) : block(rng));
  p.edge_counts.assign(B, std::vector<std::int64_t>(B, 0));
  p.degrees.assign(n, 0);
  p.in_degrees.assign(n, 0);
  for (auto [u, v] : detail::random_edges(n, esize(rng), rng).edges) {
    ++p.degrees[u];
    ++p.in_degrees[v];
    ++p.edge_counts[p.block_of[u]][p.block_of[v]];
  }
  return p;
}

inline ModelParams random_layers(Rng& rng, bool patterns) {
  std::uniform_int_distribution<std::size_t> nsize(5, 60), lsize(1, 4);
  std::uniform_real_distribution<double> mean(0.5, 4.0);
  const std::size_t n = nsize(rng), L = lsize(rng);
  ModelParams p;
  for (std::size_t l = 0; l < L; ++l) {
    p.layer_degrees.push_back(random_even_degrees(n, mean(rng), rng));
    if (patterns) {
      // pattern l uses layers 0..l, so every pattern is a distinct atom
      std::vector<std::string> pat;
      for (std::size_t j = 0; j <= l; ++j) pat.push_back("L" + std::to_string(j));
      p.patterns.push_back(pat);
    }
  }
  return p;
}

inline CheckResult check_unified_reductions(std::size_t instances, std::uint64_t seed = 11) {
  detail::Timer t;
  CheckResult r{"unified-expression reductions"};
  Rng rng(seed);
  auto compare = [&](const std::string& what, std::size_t k, double a, double b) {
    ++r.cases;
    if (!close_relative(a, b, 1e-9)) {
      std::ostringstream os;
      os.precision(12);
      os << what << " instance " << k << ": " << a << " vs " << b;
      detail::fail(r, os.str());
    }
  };
  for (std::size_t k = 0; k < instances; ++k) {
    // bipartite = clique model with top degrees as clique sizes
    const auto bp = random_bipartite(rng);
    std::vector<std::uint32_t> sizes(bp.top_degrees.begin(), bp.top_degrees.end());
    compare("bipartite vs cliques", k, entropy_bipartite(bp.top_degrees, bp.bottom_degrees),
            entropy_bipartite_cliques(sizes, bp.bottom_degrees));
    compare("bipartite vs general", k, entropy_named_model(ModelKind::Bipartite, bp),
            entropy_combinatorial(build_labelled_atoms(ModelKind::Bipartite, bp).spec).total);

    // one block = edge configuration model
    std::uniform_real_distribution<double> mean(1.0, 6.0);
    const auto d = random_even_degrees(40, mean(rng), rng);
    std::int64_t two_e = 0;
    for (auto x : d) two_e += x;
    compare("dcsbm B=1 vs configuration model", k,
            entropy_dcsbm(std::vector<std::uint32_t>(d.size(), 0), {{two_e / 2}}, d), entropy_configuration_model(d));

    const auto sbm = random_sbm(rng, false);
    compare("sbm vs general", k, entropy_named_model(ModelKind::Sbm, sbm),
            entropy_combinatorial(build_labelled_atoms(ModelKind::Sbm, sbm).spec).total);
    const auto osbm = random_sbm(rng, true);
    compare("overlapping sbm vs general", k, entropy_named_model(ModelKind::Sbm, osbm),
            entropy_combinatorial(build_labelled_atoms(ModelKind::Sbm, osbm).spec).total);
    const auto dsbm = random_directed_sbm(rng);
    compare("directed sbm vs general", k, entropy_named_model(ModelKind::DirectedSbm, dsbm),
            entropy_combinatorial(build_labelled_atoms(ModelKind::DirectedSbm, dsbm).spec).total);
    const auto lc = random_layers(rng, false);
    compare("link-community vs general", k, entropy_named_model(ModelKind::LinkCommunity, lc),
            entropy_combinatorial(build_labelled_atoms(ModelKind::LinkCommunity, lc).spec).total);
    const auto ml = random_layers(rng, true);
    compare("multilayer edge patterns vs general", k, entropy_named_model(ModelKind::MultilayerEdgePattern, ml),
            entropy_combinatorial(build_labelled_atoms(ModelKind::MultilayerEdgePattern, ml).spec).total);
  }
  if (r.passed) r.detail = std::to_string(r.cases) + " comparisons";
  r.seconds = t.seconds();
  return r;
}

enum class Suite { Small, Full };

inline std::vector<CheckResult> run_suite(Suite suite, const MatchingFormula& formula = default_matching_formula) {
  const bool small = suite == Suite::Small;
  std::vector<CheckResult> out;
  out.push_back(check_placement_counts(5, small ? 6 : 8));
  out.push_back(check_symmetry_table());
  out.push_back(check_matching_counts(8, 9, formula));
  out.push_back(check_fixed_counts(small ? 4 : 5));
  out.push_back(check_uniformity(small ? 20000 : 100000, 1e-3, small));
  out.push_back(check_single_edge_reduction(small ? 20 : 100, 200));
  out.push_back(check_unified_reductions(small ? 10 : 50));
  return out;
}

}  // namespace atomlab::validation
