#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "atomlab/canonical.hpp"
#include "atomlab/degree_spec.hpp"
#include "atomlab/error.hpp"
#include "atomlab/math.hpp"
#include "atomlab/symmetry.hpp"

namespace atomlab {

using MicroCountSpec = CountSpec<std::int64_t>;

// ---------------------------------------------------------------------------
// Fixed counts.

/// Omega = prod_m C(|H_{N,m}|, n_m), exactly.
inline BigInt count_fixed_counts(std::size_t n_vertices, const MicroCountSpec& spec) {
  if (!spec.atoms || spec.counts.size() != spec.atoms->size())
    throw SpecError("count spec needs one count per atom");
  BigInt total = 1;
  for (std::size_t m = 0; m < spec.atoms->size(); ++m) {
    const auto& info = (*spec.atoms)[m];
    const auto n = spec.counts[m];
    if (n < 0) throw SpecError("count of '" + info.name() + "' is negative");
    const BigInt h = count_placements(n_vertices, info.order(), info.symmetry);
    if (BigInt(n) > h)
      throw InfeasibleError("count " + std::to_string(n) + " of '" + info.name() + "' exceeds the " + h.str() +
                            " available placements");
    if (h <= 1000000) {
      total *= binomial(h.convert_to<std::uint64_t>(), static_cast<std::uint64_t>(n));
    } else {
      // C(h, n) = h (h-1) ... (h-n+1) / n!
      BigInt num = 1;
      for (std::int64_t j = 0; j < n; ++j) num *= (h - j);
      total *= num / factorial(static_cast<std::uint64_t>(n));
    }
  }
  return total;
}

inline double log_count_fixed_counts(std::size_t n_vertices, const MicroCountSpec& spec) {
  if (!spec.atoms || spec.counts.size() != spec.atoms->size())
    throw SpecError("count spec needs one count per atom");
  double s = 0.0;
  for (std::size_t m = 0; m < spec.atoms->size(); ++m) {
    const auto& info = (*spec.atoms)[m];
    const auto n = spec.counts[m];
    if (n < 0) throw SpecError("count of '" + info.name() + "' is negative");
    if (n_vertices < 200) {
      const BigInt h = count_placements(n_vertices, info.order(), info.symmetry);
      if (BigInt(n) > h)
        throw InfeasibleError("count " + std::to_string(n) + " of '" + info.name() + "' exceeds the " + h.str() +
                              " available placements");
      s += log_binomial(h.convert_to<double>(), static_cast<double>(n));
    } else {
      const double h = std::exp(log_count_placements(static_cast<double>(n_vertices), info.order(), info.symmetry));
      s += log_binomial(h, static_cast<double>(n));
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Degree constraints: stub matching.

namespace detail {

// Resolved quantities shared by the entropy formulas.
struct MicroView {
  const MicroDegreeSpec* spec = nullptr;
  std::vector<std::vector<std::size_t>> group_of;  // [m][i]
  std::vector<std::int64_t> counts;                // n_m
  std::vector<double> group_total;                 // T_g = sum over members |O| n_m
};

inline MicroView view_of(const MicroDegreeSpec& spec) {
  MicroView mv;
  mv.spec = &spec;
  mv.group_of = group_index(spec);
  mv.counts = require_graphical(spec);
  const auto& atoms = *spec.atoms;
  for (const auto& g : spec.groups) {
    double t = 0.0;
    for (const auto& r : g.members) t += static_cast<double>(atoms[r.atom].orbit_size(r.orbit)) * mv.counts[r.atom];
    mv.group_total.push_back(t);
  }
  return mv;
}

// Share of group g's stubs that belong to orbit (m, i).
inline double orbit_share(const MicroView& mv, std::uint32_t m, std::uint32_t i) {
  const auto g = mv.group_of[m][i];
  if (mv.group_total[g] <= 0) return 0.0;
  return (*mv.spec->atoms)[m].orbit_size(i) * static_cast<double>(mv.counts[m]) / mv.group_total[g];
}

}  // namespace detail

/// First and second moments of an orbit degree over all N vertices. For
/// aggregated orbits the degree is taken as a binomial split of the group
/// degree with success probability p = |O| n_m / T_g.
struct OrbitMoments {
  double mean = 0.0;
  double second = 0.0;

  /// <d^2>/<d> - 1, or 0 when the mean vanishes.
  double excess() const { return mean > 0 ? second / mean - 1.0 : 0.0; }
};

inline std::vector<std::vector<OrbitMoments>> orbit_moments(const MicroDegreeSpec& spec) {
  const auto mv = detail::view_of(spec);
  const auto& atoms = *spec.atoms;
  const double N = static_cast<double>(spec.n_vertices);
  std::vector<std::vector<OrbitMoments>> out(atoms.size());
  for (std::uint32_t m = 0; m < atoms.size(); ++m) {
    for (std::uint32_t i = 0; i < atoms[m].orbit_count(); ++i) {
      const auto& d = spec.groups[mv.group_of[m][i]].degrees;
      double s1 = 0, s2 = 0;
      for (auto x : d) {
        s1 += static_cast<double>(x);
        s2 += static_cast<double>(x) * static_cast<double>(x);
      }
      const double p = detail::orbit_share(mv, m, i);
      OrbitMoments om;
      if (N > 0) {
        om.mean = p * s1 / N;
        om.second = p * p * (s2 - s1) / N + p * s1 / N;
      }
      out[m].push_back(om);
    }
  }
  return out;
}

/// ln Omega(d): sum_m [-ln n_m! - n_m ln|Aut(m)|] + sum over groups
/// [ln T_g! - sum_v ln d_g(v)!]. For single-member groups T_g = |O| n_m.
inline double log_stub_matchings(const MicroDegreeSpec& spec) {
  const auto mv = detail::view_of(spec);
  const auto& atoms = *spec.atoms;
  double s = 0.0;
  for (std::size_t m = 0; m < atoms.size(); ++m) {
    const double n = static_cast<double>(mv.counts[m]);
    s -= log_factorial(n) + n * std::log(static_cast<double>(atoms[m].aut()));
  }
  for (std::size_t g = 0; g < spec.groups.size(); ++g) {
    s += log_factorial(mv.group_total[g]);
    for (auto d : spec.groups[g].degrees) s -= log_factorial(static_cast<double>(d));
  }
  return s;
}

/// Number of matchings of individually labelled stubs into atoms, counted
/// with the same conventions as ln Omega(d):
/// prod_m 1/(|Aut|^{n_m} n_m!) prod_g T_g!. Dividing by prod_v d_g(v)! gives
/// Omega(d), which need not be an integer when stubs on one vertex match
/// each other.
inline BigInt labelled_stub_matchings(const MicroDegreeSpec& spec) {
  const auto mv = detail::view_of(spec);
  const auto& atoms = *spec.atoms;
  BigInt num = 1, den = 1;
  for (std::size_t m = 0; m < atoms.size(); ++m) {
    const auto n = static_cast<std::uint64_t>(mv.counts[m]);
    den *= factorial(n);
    for (std::uint64_t j = 0; j < n; ++j) den *= atoms[m].aut();
  }
  for (std::size_t g = 0; g < spec.groups.size(); ++g) {
    num *= factorial(static_cast<std::uint64_t>(std::llround(mv.group_total[g])));
  }
  if (num % den != 0) throw Error("stub matching count is not an integer; spec inconsistent");
  return num / den;
}

/// ln P_c: probability that no two stubs of one vertex end up in the same
/// atom, summed over vertices under independence.
///
/// For motif m, S_m(v) is the number of m-stubs at v. Orbits in single-member
/// groups contribute their degree exactly; an aggregated group contributes a
/// Binomial(d_g(v), q) count with q the share of m's orbits in the group.
inline double log_self_match_correction(const MicroDegreeSpec& spec) {
  const auto mv = detail::view_of(spec);
  const auto& atoms = *spec.atoms;
  const auto mom = orbit_moments(spec);
  const double N = static_cast<double>(spec.n_vertices);
  double total = 0.0;
  for (std::uint32_t m = 0; m < atoms.size(); ++m) {
    if (mv.counts[m] == 0) continue;
    std::vector<std::pair<std::size_t, double>> share;  // (group, q)
    for (std::uint32_t i = 0; i < atoms[m].orbit_count(); ++i) {
      const auto g = mv.group_of[m][i];
      const double p = detail::orbit_share(mv, m, i);
      auto it = std::find_if(share.begin(), share.end(), [g](const auto& e) { return e.first == g; });
      if (it == share.end()) share.emplace_back(g, p);
      else it->second += p;
    }
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t v = 0; v < spec.n_vertices; ++v) {
      double mean = 0.0, var = 0.0;
      for (auto [g, q] : share) {
        const double d = static_cast<double>(spec.groups[g].degrees[v]);
        mean += q * d;
        var += q * (1.0 - q) * d;
      }
      s1 += mean;
      s2 += var + mean * mean;
    }
    if (s1 <= 0) throw InfeasibleError("atom '" + atoms[m].name() + "' has zero mean degree but a nonzero count");
    double bracket = atoms[m].order() * ((s2 / N) / (s1 / N) - 1.0);
    for (std::uint32_t i = 0; i < atoms[m].orbit_count(); ++i) bracket -= mom[m][i].excess();
    total -= 0.5 * bracket;
  }
  return total;
}

struct MultiSubgraphCorrection {
  double value = 0.0;
  std::vector<double> per_atom;
  /// Atoms of order > 2, whose term vanishes as N grows.
  std::vector<bool> negligible;
};

/// ln P_ml ~ -sum_m |Aut| n_m^2 / 2 prod_i [(<d_i^2>/<d_i> - 1) / (n_m |O_i|)]^{|O_i|}.
/// An atom placed at most once cannot be duplicated and contributes 0.
inline MultiSubgraphCorrection log_multi_subgraph_correction(const MicroDegreeSpec& spec) {
  const auto mv = detail::view_of(spec);
  const auto& atoms = *spec.atoms;
  const auto mom = orbit_moments(spec);
  MultiSubgraphCorrection out;
  for (std::uint32_t m = 0; m < atoms.size(); ++m) {
    const double n = static_cast<double>(mv.counts[m]);
    double term = 0.0;
    if (n > 1) {
      term = -static_cast<double>(atoms[m].aut()) * n * n / 2.0;
      for (std::uint32_t i = 0; i < atoms[m].orbit_count(); ++i) {
        const double o = atoms[m].orbit_size(i);
        term *= std::pow(mom[m][i].excess() / (n * o), o);
      }
    }
    out.per_atom.push_back(term);
    out.negligible.push_back(atoms[m].order() > 2);
    out.value += term;
  }
  return out;
}

/// Exact per-vertex self-match probability (before the Stirling expansion):
/// prod_m n!/(n - sum_i d_i)! prod_i (|O| n - d_i)! |O|^{d_i} / (|O| n)!.
/// Requires an unaggregated spec.
inline double log_self_match_vertex(const MicroDegreeSpec& spec, Vertex v) {
  const auto mv = detail::view_of(spec);
  const auto& atoms = *spec.atoms;
  if (v >= spec.n_vertices) throw SpecError("vertex out of range");
  double s = 0.0;
  for (std::uint32_t m = 0; m < atoms.size(); ++m) {
    const double n = static_cast<double>(mv.counts[m]);
    double dsum = 0.0;
    for (std::uint32_t i = 0; i < atoms[m].orbit_count(); ++i) {
      const auto& grp = spec.groups[mv.group_of[m][i]];
      if (grp.members.size() != 1) throw SpecError("per-vertex self-match probability needs unaggregated orbits");
      const double d = static_cast<double>(grp.degrees[v]);
      const double o = atoms[m].orbit_size(i);
      dsum += d;
      s += log_factorial(o * n - d) + d * std::log(o) - log_factorial(o * n);
    }
    if (dsum > n) return -INFINITY;
    s += log_factorial(n) - log_factorial(n - dsum);
  }
  return s;
}

/// Probability that placement s is created at least twice by the matching:
/// |Aut|^2/2 n!/(n-2)! prod_j (|O_j|(n-2))!/(|O_j| n)! prod_{v in s} d(v)!/(d(v)-2)!.
/// Requires an unaggregated spec; 0 when some vertex of s has degree < 2.
inline double duplicate_probability(const MicroDegreeSpec& spec, const Placement& s) {
  const auto mv = detail::view_of(spec);
  const auto& info = (*spec.atoms)[s.atom];
  const double n = static_cast<double>(mv.counts[s.atom]);
  if (n < 2) return 0.0;
  const double aut = static_cast<double>(info.aut());
  double lp = 2 * std::log(aut) - std::log(2.0) + std::log(n) + std::log(n - 1);
  for (std::uint32_t j = 0; j < info.orbit_count(); ++j) {
    const double o = info.orbit_size(j);
    lp += log_factorial(o * (n - 2)) - log_factorial(o * n);
  }
  for (std::size_t pos = 0; pos < s.vertices.size(); ++pos) {
    const auto& grp = spec.groups[mv.group_of[s.atom][info.symmetry.orbit_of[pos]]];
    if (grp.members.size() != 1) throw SpecError("duplicate probability needs unaggregated orbits");
    const double d = static_cast<double>(grp.degrees[s.vertices[pos]]);
    if (d < 2) return 0.0;
    lp += std::log(d) + std::log(d - 1);
  }
  return std::exp(lp);
}

struct EntropyBreakdown {
  double stub_matchings = 0.0;
  double self_match = 0.0;
  double multi_subgraph = 0.0;
  double total = 0.0;
  std::vector<bool> multi_subgraph_negligible;
};

/// S = ln Omega(d) + ln P_c + ln P_ml.
inline EntropyBreakdown entropy_combinatorial(const MicroDegreeSpec& spec) {
  EntropyBreakdown b;
  b.stub_matchings = log_stub_matchings(spec);
  b.self_match = log_self_match_correction(spec);
  const auto ml = log_multi_subgraph_correction(spec);
  b.multi_subgraph = ml.value;
  b.multi_subgraph_negligible = ml.negligible;
  b.total = b.stub_matchings + b.self_match + b.multi_subgraph;
  return b;
}

/// exp(ln P_c + ln P_ml), clamped to (0, 1].
inline double predicted_acceptance(const MicroDegreeSpec& spec) {
  const double l = log_self_match_correction(spec) + log_multi_subgraph_correction(spec).value;
  return std::clamp(std::exp(l), std::numeric_limits<double>::min(), 1.0);
}

// ---------------------------------------------------------------------------
// Analytic (canonical minus Poisson) entropy.

namespace detail {

inline CanonicalDegreeSpec as_canonical(const MicroDegreeSpec& spec, const std::vector<std::int64_t>& counts) {
  CanonicalDegreeSpec c;
  c.n_vertices = spec.n_vertices;
  c.atoms = spec.atoms;
  for (const auto& g : spec.groups) c.groups.push_back({g.members, std::vector<double>(g.degrees.begin(), g.degrees.end())});
  for (auto n : counts) c.counts.emplace_back(static_cast<double>(n));
  return c;
}

// Omega = -sum ln pi(d) over every constrained degree sequence.
inline double poisson_log_penalty(const MicroDegreeSpec& spec) {
  double s = 0.0;
  for (const auto& g : spec.groups)
    for (auto d : g.degrees) {
      const double x = static_cast<double>(d);
      s += log_factorial(x) - xlogx(x) + x;
    }
  return s;
}

}  // namespace detail

/// S = S_canonical(k = d) - Omega, with the canonical entropy in its sparse
/// series form (aggregated groups use the effective-degree substitution).
inline SeriesEntropy entropy_analytic_via_canonical(const MicroDegreeSpec& spec, int l_max = 10) {
  const auto counts = require_graphical(spec);
  auto out = degree_corrected_series(detail::as_canonical(spec, counts), l_max, FeasibilityCheck::None);
  const double omega = detail::poisson_log_penalty(spec);
  out.value -= omega;
  return out;
}

/// Analytic microcanonical entropy with the l-series truncated at l_max.
/// Unaggregated specs evaluate the closed form directly; aggregated ones go
/// through entropy_analytic_via_canonical.
inline SeriesEntropy entropy_analytic(const MicroDegreeSpec& spec, int l_max = 10) {
  if (l_max < 0) throw SpecError("l_max must be non-negative");
  const auto mv = detail::view_of(spec);
  const auto& atoms = *spec.atoms;
  for (const auto& g : spec.groups)
    if (g.members.size() != 1) return entropy_analytic_via_canonical(spec, l_max);
  double head = 0.0;
  std::vector<double> terms(static_cast<std::size_t>(l_max), 0.0);
  for (std::uint32_t m = 0; m < atoms.size(); ++m) {
    const double n = static_cast<double>(mv.counts[m]);
    if (n <= 0) continue;
    const auto& info = atoms[m];
    head += n - n * std::log(n) - n * std::log(static_cast<double>(info.aut()));
    std::vector<std::vector<double>> deg;
    for (std::uint32_t i = 0; i < info.orbit_count(); ++i) {
      const double o = info.orbit_size(i);
      head += n * o * (std::log(n * o) - 1.0);
      const auto& d = spec.groups[mv.group_of[m][i]].degrees;
      for (auto x : d) head -= log_factorial(static_cast<double>(x));
      deg.emplace_back(d.begin(), d.end());
    }
    for (int l = 1; l <= l_max; ++l) terms[l - 1] += std::exp(detail::log_series_term(info, n, l, deg));
  }
  return detail::finish_series(head, std::move(terms));
}

// ---------------------------------------------------------------------------
// Orbit aggregation and relaxed variants.

/// Merges the listed orbits into one aggregation group whose degree is the
/// sum of their current degrees (or `shared` when given). The listed orbits
/// must currently sit in single-member groups. Counts of affected atoms are
/// pinned so the result stays graphical.
inline MicroDegreeSpec aggregate_orbits_micro(const MicroDegreeSpec& spec, const std::vector<OrbitRef>& members,
                                              const std::vector<std::int64_t>& shared = {}) {
  const auto mv = detail::view_of(spec);
  if (members.empty()) throw SpecError("aggregation needs at least one orbit");
  MicroDegreeSpec out;
  out.n_vertices = spec.n_vertices;
  out.atoms = spec.atoms;
  out.counts.assign(spec.atoms->size(), std::nullopt);
  for (std::size_t m = 0; m < spec.atoms->size(); ++m)
    if (!spec.counts.empty() && spec.counts[m]) out.counts[m] = spec.counts[m];
  std::vector<bool> merged(spec.groups.size(), false);
  std::vector<std::int64_t> sum(spec.n_vertices, 0);
  for (const auto& r : members) {
    if (r.atom >= mv.group_of.size() || r.orbit >= mv.group_of[r.atom].size())
      throw SpecError("aggregation refers to a non-existent orbit");
    const auto g = mv.group_of[r.atom][r.orbit];
    if (spec.groups[g].members.size() != 1) throw SpecError("orbit is already aggregated");
    if (merged[g]) throw SpecError("orbit listed twice in one aggregation");
    merged[g] = true;
    for (std::size_t v = 0; v < spec.n_vertices; ++v) sum[v] += spec.groups[g].degrees[v];
    out.counts[r.atom] = mv.counts[r.atom];
  }
  if (!shared.empty()) {
    if (shared.size() != spec.n_vertices) throw SpecError("shared degree sequence has the wrong length");
    std::int64_t a = 0, b = 0;
    for (std::size_t v = 0; v < spec.n_vertices; ++v) {
      a += shared[v];
      b += sum[v];
    }
    if (a != b) throw InfeasibleError("shared degrees do not add up to the aggregated orbit stubs");
    sum = shared;
  }
  for (std::size_t g = 0; g < spec.groups.size(); ++g)
    if (!merged[g]) out.groups.push_back(spec.groups[g]);
  out.groups.push_back({members, std::move(sum)});
  return out;
}

/// Spec in which all orbits of each atom share one degree sequence d_m(v).
inline MicroDegreeSpec per_atom_degree_spec(AtomSetPtr atoms, const std::vector<std::vector<std::int64_t>>& degrees) {
  MicroDegreeSpec spec;
  spec.atoms = std::move(atoms);
  if (degrees.size() != spec.atoms->size()) throw SpecError("need one degree sequence per atom");
  spec.n_vertices = degrees.empty() ? 0 : degrees.front().size();
  spec.counts.assign(spec.atoms->size(), std::nullopt);
  for (std::uint32_t m = 0; m < degrees.size(); ++m) {
    const auto& info = (*spec.atoms)[m];
    std::vector<OrbitRef> members;
    for (std::uint32_t i = 0; i < info.orbit_count(); ++i) members.push_back({m, i});
    std::int64_t total = 0;
    for (auto d : degrees[m]) total += d;
    if (total % info.order() != 0)
      throw InfeasibleError("degree sum of '" + info.name() + "' is not a multiple of its order");
    spec.counts[m] = total / info.order();
    spec.groups.push_back({std::move(members), degrees[m]});
  }
  return spec;
}

/// Spec in which every orbit of every atom shares one degree sequence d(v).
inline MicroDegreeSpec total_degree_spec(AtomSetPtr atoms, const std::vector<std::int64_t>& counts,
                                         const std::vector<std::int64_t>& degrees) {
  MicroDegreeSpec spec;
  spec.atoms = std::move(atoms);
  if (counts.size() != spec.atoms->size()) throw SpecError("need one count per atom");
  spec.n_vertices = degrees.size();
  std::vector<OrbitRef> members;
  for (std::uint32_t m = 0; m < spec.atoms->size(); ++m) {
    spec.counts.emplace_back(counts[m]);
    for (std::uint32_t i = 0; i < (*spec.atoms)[m].orbit_count(); ++i) members.push_back({m, i});
  }
  spec.groups.push_back({std::move(members), degrees});
  return spec;
}

namespace detail {

inline double excess_of(const std::vector<std::int64_t>& d) {
  double s1 = 0, s2 = 0;
  for (auto x : d) {
    s1 += static_cast<double>(x);
    s2 += static_cast<double>(x) * static_cast<double>(x);
  }
  return s1 > 0 ? s2 / s1 - 1.0 : 0.0;
}

}  // namespace detail

/// Entropy with per-atom degrees d_m(v) (orbit distinction removed),
/// evaluated from its closed form.
inline double entropy_per_atom_degrees(const AtomSet& atoms, const std::vector<std::vector<std::int64_t>>& degrees) {
  if (degrees.size() != atoms.size()) throw SpecError("need one degree sequence per atom");
  double s = 0.0;
  for (std::size_t m = 0; m < atoms.size(); ++m) {
    const double k = atoms[m].order();
    std::int64_t total = 0;
    for (auto d : degrees[m]) total += d;
    if (total % atoms[m].order() != 0)
      throw InfeasibleError("degree sum of '" + atoms[m].name() + "' is not a multiple of its order");
    const double n = static_cast<double>(total) / k;
    if (n == 0) continue;
    const double x = detail::excess_of(degrees[m]);
    const double aut = static_cast<double>(atoms[m].aut());
    s += -log_factorial(n) - n * std::log(aut) + log_factorial(k * n);
    for (auto d : degrees[m]) s -= log_factorial(static_cast<double>(d));
    if (n > 1) s -= aut * n * n / (2.0 * std::pow(n * k, k)) * std::pow(x, k);
    s -= (k - 1) / 2.0 * x;
  }
  return s;
}

/// Entropy when only the total number of atom stubs per vertex is fixed,
/// evaluated from its closed form.
inline double entropy_total_degree(const AtomSet& atoms, const std::vector<std::int64_t>& counts,
                                   const std::vector<std::int64_t>& degrees) {
  if (counts.size() != atoms.size()) throw SpecError("need one count per atom");
  double T = 0.0;
  for (std::size_t m = 0; m < atoms.size(); ++m) {
    if (counts[m] < 0) throw SpecError("negative count");
    T += static_cast<double>(atoms[m].order()) * counts[m];
  }
  std::int64_t dsum = 0;
  for (auto d : degrees) dsum += d;
  if (static_cast<double>(dsum) != T)
    throw InfeasibleError("total degree " + std::to_string(dsum) + " differs from sum of |m| n_m = " +
                          std::to_string(static_cast<std::int64_t>(T)));
  if (T == 0) return 0.0;
  const double x = detail::excess_of(degrees);
  double s = log_factorial(T);
  for (auto d : degrees) s -= log_factorial(static_cast<double>(d));
  for (std::size_t m = 0; m < atoms.size(); ++m) {
    const double n = static_cast<double>(counts[m]), k = atoms[m].order();
    const double aut = static_cast<double>(atoms[m].aut());
    s -= log_factorial(n) + n * std::log(aut);
    if (n > 1) s -= aut * n * n / (2.0 * std::pow(T, k)) * std::pow(x, k);
    s -= (k - 1) / 2.0 * (k * n / T) * x;
  }
  return s;
}

}  // namespace atomlab
