#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "atomlab/configuration.hpp"
#include "atomlab/degree_spec.hpp"
#include "atomlab/error.hpp"
#include "atomlab/math.hpp"
#include "atomlab/symmetry.hpp"

namespace atomlab {

/// Per-atom counts: expected counts c_m (canonical, D = double) or hard
/// counts n_m (microcanonical, D = integer).
template <class D>
struct CountSpec {
  AtomSetPtr atoms;
  std::vector<D> counts;
};

using CanonicalCountSpec = CountSpec<double>;

/// Independent placements with their inclusion probabilities.
struct PlacementDistribution {
  AtomSetPtr atoms;
  std::size_t n_vertices = 0;
  std::vector<Placement> placements;
  std::vector<double> probabilities;
};

// ---------------------------------------------------------------------------
// Homogeneous model: fixed expected counts.

inline double placements_as_double(std::size_t n_vertices, const AtomInfo& info) {
  if (n_vertices < 200) return count_placements(n_vertices, info.order(), info.symmetry).convert_to<double>();
  return std::exp(log_count_placements(static_cast<double>(n_vertices), info.order(), info.symmetry));
}

/// p_m = c_m / |H_{N,m}|.
inline double placement_probability_homogeneous(const CanonicalCountSpec& spec, std::size_t n_vertices,
                                                std::uint32_t motif) {
  if (!spec.atoms || motif >= spec.atoms->size() || spec.counts.size() != spec.atoms->size())
    throw SpecError("count spec needs one expected count per atom");
  const auto& info = (*spec.atoms)[motif];
  const double c = spec.counts[motif];
  const double h = placements_as_double(n_vertices, info);
  if (c < 0) throw SpecError("expected count of '" + info.name() + "' is negative");
  if (c > h * (1 + 1e-12))
    throw InfeasibleError("expected count " + std::to_string(c) + " of '" + info.name() + "' exceeds the " +
                          std::to_string(h) + " available placements");
  if (c == 0) return 0.0;
  return std::min(1.0, c / h);
}

struct HomogeneousEntropy {
  /// sum_m |H| h(c_m / |H|)
  double exact = 0.0;
  /// sum_m (c_m - c_m ln(c_m / |H|)), the sparse approximation.
  double sparse = 0.0;
};

inline HomogeneousEntropy entropy_homogeneous(const CanonicalCountSpec& spec, std::size_t n_vertices) {
  HomogeneousEntropy out;
  for (std::uint32_t m = 0; m < spec.atoms->size(); ++m) {
    const double p = placement_probability_homogeneous(spec, n_vertices, m);
    const double h = placements_as_double(n_vertices, (*spec.atoms)[m]);
    const double c = spec.counts[m];
    out.exact += h * binary_entropy(p);
    if (c > 0) out.sparse += c - c * std::log(c / h);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Degree-corrected model, sparse limit.

/// Effective per-orbit degrees of an aggregation group:
/// k_{m,i}(v) = k(v) |O_{m,i}| n̄_m / sum over members of |O| n̄.
/// Returns one sequence per member, in member order.
inline std::vector<std::vector<double>> aggregate_orbits_canonical(const AtomSet& atoms,
                                                                   const std::vector<OrbitRef>& members,
                                                                   const std::vector<double>& expected_totals,
                                                                   const std::vector<double>& shared) {
  double denom = 0.0;
  std::vector<double> weight;
  for (const auto& r : members) {
    const double w = atoms[r.atom].orbit_size(r.orbit) * expected_totals.at(r.atom);
    if (w < 0) throw SpecError("negative expected total in aggregation group");
    weight.push_back(w);
    denom += w;
  }
  if (denom <= 0) throw InfeasibleError("aggregation group has zero total expected stubs");
  std::vector<std::vector<double>> out;
  for (double w : weight) {
    std::vector<double> k(shared.size());
    for (std::size_t v = 0; v < shared.size(); ++v) k[v] = shared[v] * w / denom;
    out.push_back(std::move(k));
  }
  return out;
}

/// Expected orbit degrees after resolving aggregation: k[m][i][v], plus n̄_m.
struct EffectiveDegrees {
  AtomSetPtr atoms;
  std::size_t n_vertices = 0;
  std::vector<double> expected_totals;
  std::vector<std::vector<std::vector<double>>> k;
};

inline EffectiveDegrees effective_degrees(const CanonicalDegreeSpec& spec) {
  const auto idx = group_index(spec);
  EffectiveDegrees eff;
  eff.atoms = spec.atoms;
  eff.n_vertices = spec.n_vertices;
  eff.expected_totals = require_graphical(spec);
  const auto& atoms = *spec.atoms;
  eff.k.resize(atoms.size());
  for (std::size_t m = 0; m < atoms.size(); ++m) eff.k[m].resize(atoms[m].orbit_count());
  for (const auto& grp : spec.groups) {
    if (grp.members.size() == 1) {
      eff.k[grp.members[0].atom][grp.members[0].orbit] = grp.degrees;
      continue;
    }
    auto split = aggregate_orbits_canonical(atoms, grp.members, eff.expected_totals, grp.degrees);
    for (std::size_t j = 0; j < grp.members.size(); ++j)
      eff.k[grp.members[j].atom][grp.members[j].orbit] = std::move(split[j]);
  }
  return eff;
}

enum class FeasibilityCheck {
  /// Bound p_s by the product of per-orbit maximum degrees (sufficient).
  Uniform,
  /// Evaluate p_s <= 1 for every placement (enumerates K_N).
  Strict,
  None,
};

/// p_s = n̄_m |Aut(m)| prod_{i, v in O_i(s)} k_{m,i}(v) / (|O_{m,i}| n̄_m).
inline double placement_probability_sparse(const EffectiveDegrees& eff, const Placement& s) {
  const auto& info = (*eff.atoms)[s.atom];
  const double nbar = eff.expected_totals[s.atom];
  if (nbar <= 0) return 0.0;
  double p = nbar * static_cast<double>(info.aut());
  for (std::size_t pos = 0; pos < s.vertices.size(); ++pos) {
    const auto i = info.symmetry.orbit_of[pos];
    p *= eff.k[s.atom][i][s.vertices[pos]] / (info.orbit_size(i) * nbar);
  }
  return p;
}

/// Checks p_s <= 1 (the well-definedness condition of the sparse model).
inline void check_sparse_feasibility(const EffectiveDegrees& eff, FeasibilityCheck mode) {
  const auto& atoms = *eff.atoms;
  constexpr double kSlack = 1e-12;
  if (mode == FeasibilityCheck::None) return;
  if (mode == FeasibilityCheck::Uniform) {
    for (std::uint32_t m = 0; m < atoms.size(); ++m) {
      const double nbar = eff.expected_totals[m];
      if (nbar <= 0) continue;
      double bound = nbar * static_cast<double>(atoms[m].aut());
      for (std::uint32_t i = 0; i < atoms[m].orbit_count(); ++i) {
        const auto& k = eff.k[m][i];
        const double kmax = k.empty() ? 0.0 : *std::max_element(k.begin(), k.end());
        bound *= std::pow(kmax / (atoms[m].orbit_size(i) * nbar), atoms[m].orbit_size(i));
      }
      if (bound > 1 + kSlack)
        throw InfeasibleError("sparse model ill-defined for atom '" + atoms[m].name() +
                              "': maximum degrees give p_s = " + std::to_string(bound) +
                              " > 1 (use the strict check or the exact solver)");
    }
    return;
  }
  for (std::uint32_t m = 0; m < atoms.size(); ++m) {
    for_each_placement(eff.n_vertices, m, atoms[m], [&](const Placement& s) {
      const double p = placement_probability_sparse(eff, s);
      if (p > 1 + kSlack) {
        std::string where;
        for (auto v : s.vertices) where += (where.empty() ? "" : ",") + std::to_string(v);
        throw InfeasibleError("sparse model ill-defined: placement of '" + atoms[m].name() + "' on (" + where +
                              ") has p_s = " + std::to_string(p));
      }
    });
  }
}

inline double placement_probability_sparse(const CanonicalDegreeSpec& spec, const Placement& s,
                                           FeasibilityCheck mode = FeasibilityCheck::Uniform) {
  const auto eff = effective_degrees(spec);
  check_sparse_feasibility(eff, mode);
  return placement_probability_sparse(eff, s);
}

/// Enumerates K_N and attaches the sparse-limit probability to every placement.
inline PlacementDistribution sparse_placement_distribution(const CanonicalDegreeSpec& spec,
                                                           FeasibilityCheck mode = FeasibilityCheck::Uniform) {
  const auto eff = effective_degrees(spec);
  check_sparse_feasibility(eff, mode);
  PlacementDistribution d;
  d.atoms = spec.atoms;
  d.n_vertices = spec.n_vertices;
  for (std::uint32_t m = 0; m < spec.atoms->size(); ++m)
    for_each_placement(spec.n_vertices, m, (*spec.atoms)[m], [&](const Placement& s) {
      d.placements.push_back(s);
      d.probabilities.push_back(std::min(1.0, placement_probability_sparse(eff, s)));
    });
  return d;
}

struct SeriesEntropy {
  double value = 0.0;
  /// Magnitude of the last included l-term (summed over atoms).
  double last_term = 0.0;
  /// Summed l-terms, l = 1..l_max.
  std::vector<double> terms;
  /// True when the last term is larger than the one before it.
  bool growing = false;
};

namespace detail {

// ln of the l-term of the sparse-entropy series for one atom:
// |Aut|^l/(l(l+1)) n^{l+1} / (prod_j (|O_j| n)^{|O_j|})^l prod_i (<k^{l+1}>/<k>)^{|O_i|}
inline double log_series_term(const AtomInfo& info, double n, int l,
                              const std::vector<std::vector<double>>& degrees) {
  double lt = l * std::log(static_cast<double>(info.aut())) - std::log(static_cast<double>(l) * (l + 1)) +
              (l + 1) * std::log(n);
  for (std::uint32_t i = 0; i < info.orbit_count(); ++i) {
    const double o = info.orbit_size(i);
    double num = 0.0, den = 0.0;
    for (double k : degrees[i]) {
      num += std::pow(k, l + 1);
      den += k;
    }
    lt -= l * o * std::log(o * n);
    lt += o * (std::log(num) - std::log(den));
  }
  return lt;
}

inline SeriesEntropy finish_series(double head, std::vector<double> terms) {
  SeriesEntropy out;
  out.value = head;
  for (double t : terms) out.value -= t;
  out.last_term = terms.empty() ? 0.0 : std::abs(terms.back());
  out.growing = terms.size() >= 2 && std::abs(terms.back()) > std::abs(terms[terms.size() - 2]);
  out.terms = std::move(terms);
  return out;
}

}  // namespace detail

/// Sparse-limit entropy of the degree-corrected canonical ensemble with the
/// l-series truncated at l_max. Never throws on a growing series; check
/// `growing` instead.
inline SeriesEntropy degree_corrected_series(const CanonicalDegreeSpec& spec, int l_max = 10,
                                             FeasibilityCheck mode = FeasibilityCheck::Uniform) {
  if (l_max < 0) throw SpecError("l_max must be non-negative");
  const auto eff = effective_degrees(spec);
  check_sparse_feasibility(eff, mode);
  const auto& atoms = *eff.atoms;
  double head = 0.0;
  std::vector<double> terms(static_cast<std::size_t>(l_max), 0.0);
  for (std::uint32_t m = 0; m < atoms.size(); ++m) {
    const double n = eff.expected_totals[m];
    if (n <= 0) continue;
    const auto& info = atoms[m];
    head += n - n * std::log(static_cast<double>(info.aut()) * n);
    for (std::uint32_t i = 0; i < info.orbit_count(); ++i) {
      const double o = info.orbit_size(i);
      head += n * o * std::log(n * o);
      for (double k : eff.k[m][i]) head -= xlogx(k);
    }
    for (int l = 1; l <= l_max; ++l) terms[l - 1] += std::exp(detail::log_series_term(info, n, l, eff.k[m]));
  }
  return detail::finish_series(head, std::move(terms));
}

/// As degree_corrected_series, but throws SeriesDivergence when the series
/// terms grow.
inline SeriesEntropy entropy_degree_corrected(const CanonicalDegreeSpec& spec, int l_max = 10,
                                              FeasibilityCheck mode = FeasibilityCheck::Uniform) {
  auto out = degree_corrected_series(spec, l_max, mode);
  if (out.growing)
    throw SeriesDivergence("sparse entropy series is not converging (last term " + std::to_string(out.last_term) +
                               "); use the exact solver instead",
                           out.last_term);
  return out;
}

// ---------------------------------------------------------------------------
// Degree-corrected model, exact solution by fixed-point iteration.

struct ExactSolverOptions {
  double tolerance = 1e-8;
  int max_iterations = 10000;
  /// Log-update step; 0 selects 1 / max_m(|m| + [count constraint]), i.e.
  /// 0.5 for edge-only specs.
  double damping = 0.0;
};

struct ExactCanonicalSolution {
  PlacementDistribution distribution;
  /// lambda[g][v]; +inf marks excluded (k = 0) constraints, -inf saturated.
  std::vector<std::vector<double>> multipliers;
  /// lambda_m for atoms with aggregated orbits (0 otherwise).
  std::vector<double> count_multipliers;
  double entropy = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

namespace detail {

// Incidence of placements on the linear constraints of a degree spec:
// (group, vertex) degree constraints first, then count constraints for atoms
// with aggregated orbits.
struct ConstraintSystem {
  std::vector<Placement> placements;
  std::vector<std::vector<std::size_t>> incidence;  // per placement
  std::vector<double> target;
  std::size_t degree_constraints = 0;
  std::vector<std::int64_t> count_constraint_of;  // per atom, -1 if none
};

inline ConstraintSystem build_constraints(const CanonicalDegreeSpec& spec) {
  const auto idx = group_index(spec);
  const auto totals = require_graphical(spec);
  const auto& atoms = *spec.atoms;
  const std::size_t N = spec.n_vertices;
  ConstraintSystem cs;
  cs.degree_constraints = spec.groups.size() * N;
  cs.target.resize(cs.degree_constraints);
  for (std::size_t g = 0; g < spec.groups.size(); ++g)
    for (std::size_t v = 0; v < N; ++v) cs.target[g * N + v] = spec.groups[g].degrees[v];
  cs.count_constraint_of.assign(atoms.size(), -1);
  for (std::size_t m = 0; m < atoms.size(); ++m) {
    bool aggregated = false;
    for (std::size_t i = 0; i < atoms[m].orbit_count(); ++i)
      aggregated |= spec.groups[idx[m][i]].members.size() > 1;
    if (aggregated) {
      cs.count_constraint_of[m] = static_cast<std::int64_t>(cs.target.size());
      cs.target.push_back(totals[m]);
    }
  }
  for (std::uint32_t m = 0; m < atoms.size(); ++m) {
    for_each_placement(N, m, atoms[m], [&](const Placement& s) {
      std::vector<std::size_t> inc;
      for (std::size_t pos = 0; pos < s.vertices.size(); ++pos)
        inc.push_back(idx[m][atoms[m].symmetry.orbit_of[pos]] * N + s.vertices[pos]);
      if (cs.count_constraint_of[m] >= 0) inc.push_back(static_cast<std::size_t>(cs.count_constraint_of[m]));
      cs.placements.push_back(s);
      cs.incidence.push_back(std::move(inc));
    });
  }
  return cs;
}

enum class Fixed : std::uint8_t { Free, Zero, One };

// Fixes placements forced to 0 (a zero target) or 1 (a target equal to the
// number of incident placements). Throws InfeasibleError on targets outside
// [0, available].
inline std::vector<Fixed> propagate_forced(const ConstraintSystem& cs) {
  const std::size_t C = cs.target.size();
  std::vector<std::vector<std::size_t>> by_constraint(C);
  for (std::size_t s = 0; s < cs.incidence.size(); ++s)
    for (auto c : cs.incidence[s]) by_constraint[c].push_back(s);
  std::vector<Fixed> state(cs.placements.size(), Fixed::Free);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < C; ++c) {
      double ones = 0, free = 0;
      for (auto s : by_constraint[c]) {
        if (state[s] == Fixed::One) ++ones;
        if (state[s] == Fixed::Free) ++free;
      }
      const double rem = cs.target[c] - ones;
      const double tol = 1e-12 * std::max(1.0, cs.target[c]);
      if (rem < -tol || rem > free + tol)
        throw InfeasibleError("degree target " + std::to_string(cs.target[c]) + " cannot be met by the " +
                              std::to_string(free + ones) + " available placements");
      if (free == 0) continue;
      Fixed to = Fixed::Free;
      if (std::abs(rem) <= tol) to = Fixed::Zero;
      else if (std::abs(rem - free) <= tol) to = Fixed::One;
      if (to == Fixed::Free) continue;
      for (auto s : by_constraint[c])
        if (state[s] == Fixed::Free) state[s] = to;
      changed = true;
    }
  }
  return state;
}

}  // namespace detail

/// Solves E(d_{m,i}(v)) = k_{m,i}(v) exactly over all placements of K_N by
/// the damped log-update lambda <- lambda + eta ln(E/k).
inline ExactCanonicalSolution solve_multipliers_exact(const CanonicalDegreeSpec& spec,
                                                      const ExactSolverOptions& opt = {}) {
  auto cs = detail::build_constraints(spec);
  const auto state = detail::propagate_forced(cs);
  const std::size_t S = cs.placements.size(), C = cs.target.size();
  const auto& atoms = *spec.atoms;

  double eta = opt.damping;
  if (eta <= 0) {
    double gain = 2;
    for (std::size_t m = 0; m < atoms.size(); ++m)
      gain = std::max(gain, static_cast<double>(atoms[m].order() + (cs.count_constraint_of[m] >= 0 ? 1 : 0)));
    eta = 1.0 / gain;
  }

  // Residual targets once forced placements are accounted for.
  std::vector<double> target = cs.target;
  std::vector<bool> active(C, false);
  for (std::size_t s = 0; s < S; ++s) {
    for (auto c : cs.incidence[s]) {
      if (state[s] == detail::Fixed::One) target[c] -= 1.0;
      if (state[s] == detail::Fixed::Free) active[c] = true;
    }
  }

  std::vector<double> lambda(C, 0.0), expect(C, 0.0), p(S, 0.0);
  auto evaluate = [&]() {
    std::fill(expect.begin(), expect.end(), 0.0);
    double residual = 0.0;
    for (std::size_t s = 0; s < S; ++s) {
      if (state[s] == detail::Fixed::Zero) {
        p[s] = 0.0;
        continue;
      }
      if (state[s] == detail::Fixed::One) {
        p[s] = 1.0;
        continue;
      }
      double theta = 0.0;
      for (auto c : cs.incidence[s]) theta += lambda[c];
      p[s] = 1.0 / (1.0 + std::exp(theta));
      for (auto c : cs.incidence[s]) expect[c] += p[s];
    }
    for (std::size_t c = 0; c < C; ++c)
      if (active[c]) residual = std::max(residual, std::abs(expect[c] - target[c]));
    return residual;
  };

  ExactCanonicalSolution sol;
  double residual = evaluate();
  int it = 0;
  while (residual >= opt.tolerance) {
    if (it >= opt.max_iterations)
      throw ConvergenceError("exact canonical solver did not converge in " + std::to_string(opt.max_iterations) +
                                 " iterations (residual " + std::to_string(residual) + ")",
                             residual);
    for (std::size_t c = 0; c < C; ++c)
      if (active[c]) lambda[c] += eta * std::log(expect[c] / target[c]);
    residual = evaluate();
    ++it;
  }
  sol.iterations = it;
  sol.residual = residual;

  const std::size_t N = spec.n_vertices;
  sol.multipliers.assign(spec.groups.size(), std::vector<double>(N, 0.0));
  for (std::size_t c = 0; c < cs.degree_constraints; ++c) {
    double l = lambda[c];
    if (!active[c]) l = target[c] <= 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    sol.multipliers[c / N][c % N] = l;
  }
  sol.count_multipliers.assign(atoms.size(), 0.0);
  for (std::size_t m = 0; m < atoms.size(); ++m)
    if (cs.count_constraint_of[m] >= 0) sol.count_multipliers[m] = lambda[static_cast<std::size_t>(cs.count_constraint_of[m])];

  for (double q : p) sol.entropy += binary_entropy(q);
  sol.distribution.atoms = spec.atoms;
  sol.distribution.n_vertices = N;
  sol.distribution.placements = std::move(cs.placements);
  sol.distribution.probabilities = std::move(p);
  return sol;
}

/// E(d_{m,i}(v)) under independent placements: out[m][i][v].
inline std::vector<std::vector<std::vector<double>>> expected_orbit_degrees(const PlacementDistribution& d) {
  const auto& atoms = *d.atoms;
  std::vector<std::vector<std::vector<double>>> out(atoms.size());
  for (std::size_t m = 0; m < atoms.size(); ++m)
    out[m].assign(atoms[m].orbit_count(), std::vector<double>(d.n_vertices, 0.0));
  for (std::size_t s = 0; s < d.placements.size(); ++s) {
    const auto& pl = d.placements[s];
    const auto& sym = atoms[pl.atom].symmetry;
    for (std::size_t pos = 0; pos < pl.vertices.size(); ++pos)
      out[pl.atom][sym.orbit_of[pos]][pl.vertices[pos]] += d.probabilities[s];
  }
  return out;
}

}  // namespace atomlab
