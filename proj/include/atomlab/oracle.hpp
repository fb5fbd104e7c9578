#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "atomlab/canonical.hpp"
#include "atomlab/configuration.hpp"
#include "atomlab/degree_spec.hpp"
#include "atomlab/error.hpp"
#include "atomlab/math.hpp"
#include "atomlab/symmetry.hpp"

// Brute-force reference implementations. These are deliberately naive and
// refuse inputs above their size caps.

namespace atomlab::oracle {

inline constexpr std::size_t kMaxFreePlacements = 24;
inline constexpr std::uint64_t kMaxSearchNodes = std::uint64_t{1} << 26;
inline constexpr std::size_t kMaxStubs = 12;
inline constexpr std::size_t kMaxSolverPlacements = 10000;
inline constexpr std::size_t kMaxFullSpacePlacements = 12;

struct Constraint {
  enum class Kind { None, Counts, Degrees };
  Kind kind = Kind::None;
  std::vector<std::int64_t> counts;
  MicroDegreeSpec degrees;

  static Constraint none() { return {}; }
  static Constraint with_counts(std::vector<std::int64_t> c) {
    Constraint k;
    k.kind = Kind::Counts;
    k.counts = std::move(c);
    return k;
  }
  static Constraint with_degrees(MicroDegreeSpec s) {
    Constraint k;
    k.kind = Kind::Degrees;
    k.degrees = std::move(s);
    return k;
  }
};

/// Every configuration on N vertices satisfying the constraint, each once.
/// Degree constraints compare group degrees (so aggregated specs work).
inline std::vector<Configuration> enumerate_configurations(std::size_t n_vertices, const AtomSetPtr& atoms,
                                                           const Constraint& constraint) {
  const auto all = enumerate_all_placements(n_vertices, *atoms);
  if (constraint.kind == Constraint::Kind::None && all.size() > kMaxFreePlacements)
    throw OracleRefused("oracle: " + std::to_string(all.size()) + " placements exceed the cap of " +
                        std::to_string(kMaxFreePlacements));
  std::vector<std::int64_t> target_counts;
  std::vector<std::vector<std::size_t>> group_of;
  if (constraint.kind == Constraint::Kind::Counts) {
    if (constraint.counts.size() != atoms->size()) throw SpecError("oracle: one count per atom required");
    target_counts = constraint.counts;
  }
  if (constraint.kind == Constraint::Kind::Degrees) {
    if (constraint.degrees.n_vertices != n_vertices) throw SpecError("oracle: vertex count mismatch");
    group_of = group_index(constraint.degrees);
  }
  const auto& groups = constraint.degrees.groups;

  std::vector<std::int64_t> count(atoms->size(), 0);
  std::vector<std::vector<std::int64_t>> deg(groups.size(), std::vector<std::int64_t>(n_vertices, 0));
  std::vector<std::size_t> remaining_of_atom(atoms->size(), 0);
  for (const auto& p : all) ++remaining_of_atom[p.atom];

  std::vector<Configuration> out;
  std::vector<std::size_t> chosen;
  std::uint64_t nodes = 0;

  auto satisfied = [&]() {
    if (constraint.kind == Constraint::Kind::Counts) return count == target_counts;
    if (constraint.kind == Constraint::Kind::Degrees) {
      for (std::size_t g = 0; g < groups.size(); ++g)
        if (deg[g] != groups[g].degrees) return false;
    }
    return true;
  };
  auto apply = [&](const Placement& p, int sign) {
    count[p.atom] += sign;
    if (constraint.kind != Constraint::Kind::Degrees) return true;
    const auto& sym = (*atoms)[p.atom].symmetry;
    bool ok = true;
    for (std::size_t pos = 0; pos < p.vertices.size(); ++pos) {
      const auto g = group_of[p.atom][sym.orbit_of[pos]];
      deg[g][p.vertices[pos]] += sign;
      if (deg[g][p.vertices[pos]] > groups[g].degrees[p.vertices[pos]]) ok = false;
    }
    return ok;
  };
  auto recurse = [&](auto&& self, std::size_t idx) -> void {
    if (++nodes > kMaxSearchNodes) throw OracleRefused("oracle: search space too large");
    if (idx == all.size()) {
      if (satisfied()) {
        ConfigurationBuilder b(n_vertices, atoms);
        for (auto s : chosen) b.insert_canonical(all[s]);
        out.push_back(std::move(b).build());
      }
      return;
    }
    const auto& p = all[idx];
    if (constraint.kind == Constraint::Kind::Counts) {
      // not enough placements left to reach the target
      if (count[p.atom] + static_cast<std::int64_t>(remaining_of_atom[p.atom]) < target_counts[p.atom]) return;
    }
    --remaining_of_atom[p.atom];
    // include
    const bool ok = apply(p, +1);
    const bool count_ok =
        constraint.kind != Constraint::Kind::Counts || count[p.atom] <= target_counts[p.atom];
    if (ok && count_ok) {
      chosen.push_back(idx);
      self(self, idx + 1);
      chosen.pop_back();
    }
    apply(p, -1);
    // exclude
    self(self, idx + 1);
    ++remaining_of_atom[p.atom];
  };
  recurse(recurse, 0);
  return out;
}

/// Number of ways to match individually labelled stubs into atoms, including
/// degenerate matchings (stubs of one vertex matched together, repeated
/// subgraphs). Unaggregated specs only.
inline BigInt exact_matching_count(const MicroDegreeSpec& spec) {
  const auto idx = group_index(spec);
  const auto counts = require_graphical(spec);
  const auto& atoms = *spec.atoms;
  std::size_t stubs_total = 0;
  for (const auto& g : spec.groups) {
    if (g.members.size() != 1) throw SpecError("oracle: matching count needs unaggregated orbits");
    for (auto d : g.degrees) stubs_total += static_cast<std::size_t>(d);
  }
  if (stubs_total > kMaxStubs)
    throw OracleRefused("oracle: " + std::to_string(stubs_total) + " stubs exceed the cap of " +
                        std::to_string(kMaxStubs));

  BigInt total = 1;
  for (std::uint32_t m = 0; m < atoms.size(); ++m) {
    const auto& info = atoms[m];
    const auto k = info.orbit_count();
    // Stub ids per orbit; the ids only need to be distinct.
    std::vector<std::vector<int>> stubs(k);
    int next_id = 0;
    for (std::uint32_t i = 0; i < k; ++i)
      for (auto d : spec.groups[idx[m][i]].degrees)
        for (std::int64_t c = 0; c < d; ++c) stubs[i].push_back(next_id++);

    // Distinct ways to build one atom from a chosen stub set: bijections of
    // stubs onto orbit positions, up to automorphisms.
    auto assemblies = [&](const std::vector<std::vector<int>>& pick) {
      std::set<std::vector<int>> seen;
      std::vector<std::vector<int>> perm = pick;
      for (auto& p : perm) std::sort(p.begin(), p.end());
      auto rec = [&](auto&& self, std::uint32_t i) -> void {
        if (i == k) {
          std::vector<int> t(info.order());
          for (std::uint32_t j = 0; j < k; ++j)
            for (std::size_t x = 0; x < perm[j].size(); ++x) t[info.symmetry.orbits[j][x]] = perm[j][x];
          std::vector<int> best = t, cur(t.size());
          for (const auto& beta : info.symmetry.automorphisms) {
            for (std::size_t y = 0; y < t.size(); ++y) cur[y] = t[beta[y]];
            best = std::min(best, cur);
          }
          seen.insert(best);
          return;
        }
        do {
          self(self, i + 1);
        } while (std::next_permutation(perm[i].begin(), perm[i].end()));
      };
      rec(rec, 0);
      return seen.size();
    };

    std::vector<std::vector<bool>> used(k);
    for (std::uint32_t i = 0; i < k; ++i) used[i].assign(stubs[i].size(), false);
    // Build atoms one at a time; the first free stub of orbit 0 always goes
    // into the next atom, so each set partition is generated once.
    auto build = [&](auto&& self, std::int64_t built) -> BigInt {
      if (built == counts[m]) return 1;
      std::vector<std::vector<int>> pick(k);
      BigInt sum = 0;
      auto choose = [&](auto&& choose_self, std::uint32_t i, std::size_t start) -> void {
        if (i == k) {
          const auto a = assemblies(pick);
          sum += BigInt(a) * self(self, built + 1);
          return;
        }
        const std::size_t need = info.orbit_size(i);
        if (pick[i].size() == need) {
          choose_self(choose_self, i + 1, 0);
          return;
        }
        for (std::size_t s = start; s < stubs[i].size(); ++s) {
          if (used[i][s]) continue;
          used[i][s] = true;
          pick[i].push_back(stubs[i][s]);
          choose_self(choose_self, i, s + 1);
          pick[i].pop_back();
          used[i][s] = false;
          if (i == 0 && pick[0].empty()) break;  // first free stub is forced
        }
      };
      choose(choose, 0, 0);
      return sum;
    };
    total *= build(build, 0);
  }
  return total;
}

struct CanonicalSolution {
  std::vector<Placement> placements;
  std::vector<double> probabilities;
  double entropy = 0.0;
  /// "full-space" when the maximisation ran over all 2^|H| configurations,
  /// "independent" for the per-placement dual.
  std::string method;
};

namespace detail {

// Rows: placements. Columns: (group, vertex) constraints, then per-atom
// count constraints for atoms with aggregated orbits.
struct Design {
  std::vector<Placement> placements;
  std::vector<std::vector<int>> rows;
  std::vector<double> target;
};

inline Design design_of(const CanonicalDegreeSpec& spec) {
  const auto idx = group_index(spec);
  const auto totals = require_graphical(spec);
  const auto& atoms = *spec.atoms;
  const std::size_t N = spec.n_vertices;
  Design d;
  for (const auto& g : spec.groups) d.target.insert(d.target.end(), g.degrees.begin(), g.degrees.end());
  std::vector<int> count_col(atoms.size(), -1);
  for (std::size_t m = 0; m < atoms.size(); ++m) {
    bool agg = false;
    for (std::size_t i = 0; i < atoms[m].orbit_count(); ++i) agg |= spec.groups[idx[m][i]].members.size() > 1;
    if (agg) {
      count_col[m] = static_cast<int>(d.target.size());
      d.target.push_back(totals[m]);
    }
  }
  d.placements = enumerate_all_placements(N, atoms);
  if (d.placements.size() > kMaxSolverPlacements) throw OracleRefused("oracle: too many placements to solve");
  for (const auto& p : d.placements) {
    std::vector<int> row;
    for (std::size_t pos = 0; pos < p.vertices.size(); ++pos)
      row.push_back(static_cast<int>(idx[p.atom][atoms[p.atom].symmetry.orbit_of[pos]] * N + p.vertices[pos]));
    if (count_col[p.atom] >= 0) row.push_back(count_col[p.atom]);
    d.rows.push_back(std::move(row));
  }
  return d;
}

// Placements pinned to 0 or 1 by boundary targets: 0 = free, 1 = off, 2 = on.
inline std::vector<int> pinned(const Design& d) {
  const std::size_t C = d.target.size();
  std::vector<int> state(d.placements.size(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t c = 0; c < C; ++c) {
      double on = 0, free = 0;
      std::vector<std::size_t> inc;
      for (std::size_t s = 0; s < d.rows.size(); ++s)
        for (int col : d.rows[s])
          if (static_cast<std::size_t>(col) == c) {
            inc.push_back(s);
            if (state[s] == 2) ++on;
            if (state[s] == 0) ++free;
          }
      const double rest = d.target[c] - on;
      if (rest < -1e-9 || rest > free + 1e-9) throw InfeasibleError("oracle: degree target outside the feasible range");
      if (free == 0) continue;
      int to = 0;
      if (std::abs(rest) < 1e-9) to = 1;
      else if (std::abs(rest - free) < 1e-9) to = 2;
      if (!to) continue;
      for (auto s : inc)
        if (state[s] == 0) state[s] = to;
      changed = true;
    }
  }
  return state;
}

// Minimises F(lambda) = log Z(lambda) + lambda . k by damped Newton, given
// a routine that returns (F, gradient, Hessian) at lambda.
template <class Eval>
Eigen::VectorXd newton_minimise(std::size_t dim, Eval&& eval) {
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  for (int it = 0; it < 500; ++it) {
    auto [f, grad, hess] = eval(lambda);
    if (grad.template lpNorm<Eigen::Infinity>() < 1e-13) break;
    hess.diagonal().array() += 1e-12;
    Eigen::VectorXd step = hess.ldlt().solve(-grad);
    double t = 1.0;
    while (t > 1e-12) {
      Eigen::VectorXd trial = lambda + t * step;
      if (std::get<0>(eval(trial)) <= f + 1e-4 * t * grad.dot(step)) {
        lambda = trial;
        break;
      }
      t *= 0.5;
    }
    if (t <= 1e-12) break;
  }
  return lambda;
}

}  // namespace detail

/// Maximum-entropy distribution over configurations with the expected
/// degrees fixed, found by direct numerical maximisation.
inline CanonicalSolution exact_canonical_solution(const CanonicalDegreeSpec& spec) {
  auto d = detail::design_of(spec);
  const auto state = detail::pinned(d);
  const std::size_t S = d.placements.size();

  // Free placements and the constraint columns they touch.
  std::vector<std::size_t> free;
  for (std::size_t s = 0; s < S; ++s)
    if (state[s] == 0) free.push_back(s);
  std::vector<double> target = d.target;
  for (std::size_t s = 0; s < S; ++s)
    if (state[s] == 2)
      for (int c : d.rows[s]) target[static_cast<std::size_t>(c)] -= 1.0;
  std::vector<int> colmap(d.target.size(), -1);
  std::vector<double> k;
  for (auto s : free)
    for (int c : d.rows[s])
      if (colmap[static_cast<std::size_t>(c)] < 0) {
        colmap[static_cast<std::size_t>(c)] = static_cast<int>(k.size());
        k.push_back(target[static_cast<std::size_t>(c)]);
      }
  const auto C = static_cast<Eigen::Index>(k.size());
  Eigen::VectorXd kv = Eigen::Map<Eigen::VectorXd>(k.data(), C);
  // Feature matrix of free placements over the reduced columns.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(free.size()), C);
  for (std::size_t j = 0; j < free.size(); ++j)
    for (int c : d.rows[free[j]]) A(static_cast<Eigen::Index>(j), colmap[static_cast<std::size_t>(c)]) += 1.0;

  CanonicalSolution out;
  out.placements = d.placements;
  out.probabilities.assign(S, 0.0);
  for (std::size_t s = 0; s < S; ++s)
    if (state[s] == 2) out.probabilities[s] = 1.0;

  if (free.size() <= kMaxFullSpacePlacements) {
    // All 2^F subsets of the free placements; P(C) proportional to
    // exp(-lambda . f(C)).
    out.method = "full-space";
    const std::size_t F = free.size();
    const std::size_t Z = std::size_t{1} << F;
    Eigen::MatrixXd feat(static_cast<Eigen::Index>(Z), C);
    for (std::size_t mask = 0; mask < Z; ++mask) {
      Eigen::VectorXd f = Eigen::VectorXd::Zero(C);
      for (std::size_t j = 0; j < F; ++j)
        if (mask >> j & 1) f += A.row(static_cast<Eigen::Index>(j)).transpose();
      feat.row(static_cast<Eigen::Index>(mask)) = f.transpose();
    }
    auto weights = [&](const Eigen::VectorXd& lambda, double& logz) {
      Eigen::VectorXd e = -(feat * lambda);
      const double mx = e.maxCoeff();
      Eigen::VectorXd w = (e.array() - mx).exp();
      const double z = w.sum();
      logz = mx + std::log(z);
      return Eigen::VectorXd(w / z);
    };
    auto eval = [&](const Eigen::VectorXd& lambda) {
      double logz = 0;
      const Eigen::VectorXd P = weights(lambda, logz);
      const Eigen::VectorXd mean = feat.transpose() * P;
      const Eigen::MatrixXd centred = feat.rowwise() - mean.transpose();
      Eigen::MatrixXd cov = centred.transpose() * P.asDiagonal() * centred;
      return std::tuple<double, Eigen::VectorXd, Eigen::MatrixXd>(logz + lambda.dot(kv), Eigen::VectorXd(kv - mean),
                                                                  cov);
    };
    const Eigen::VectorXd lambda = detail::newton_minimise(static_cast<std::size_t>(C), eval);
    double logz = 0;
    const Eigen::VectorXd P = weights(lambda, logz);
    for (std::size_t mask = 0; mask < Z; ++mask) {
      const double p = P(static_cast<Eigen::Index>(mask));
      if (p > 0) out.entropy -= p * std::log(p);
      for (std::size_t j = 0; j < F; ++j)
        if (mask >> j & 1) out.probabilities[free[j]] += p;
    }
    return out;
  }

  // Independent placements: F(lambda) = sum_s ln(1 + exp(-theta_s)) + lambda . k.
  out.method = "independent";
  auto eval = [&](const Eigen::VectorXd& lambda) {
    const Eigen::VectorXd theta = A * lambda;
    double f = lambda.dot(kv);
    Eigen::VectorXd p(theta.size());
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
      const double t = theta(j);
      f += t > 0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
      p(j) = 1.0 / (1.0 + std::exp(t));
    }
    const Eigen::VectorXd grad = kv - A.transpose() * p;
    const Eigen::VectorXd w = (p.array() * (1.0 - p.array())).matrix();
    Eigen::MatrixXd hess = A.transpose() * w.asDiagonal() * A;
    return std::tuple<double, Eigen::VectorXd, Eigen::MatrixXd>(f, grad, hess);
  };
  const Eigen::VectorXd lambda = detail::newton_minimise(static_cast<std::size_t>(C), eval);
  const Eigen::VectorXd theta = A * lambda;
  for (std::size_t j = 0; j < free.size(); ++j) {
    const double p = 1.0 / (1.0 + std::exp(theta(static_cast<Eigen::Index>(j))));
    out.probabilities[free[j]] = p;
    out.entropy += binary_entropy(p);
  }
  return out;
}

struct SamplerDistribution {
  std::vector<Configuration> support;
  std::vector<double> probabilities;
  /// False when no configuration has the requested degrees.
  bool graphical = true;
};

/// The distribution an ideal microcanonical sampler should produce: uniform
/// over all configurations with exactly the requested degrees.
inline SamplerDistribution exact_sampler_distribution(const MicroDegreeSpec& spec) {
  SamplerDistribution out;
  if (!check_graphicality(spec).graphical) {
    out.graphical = false;
    return out;
  }
  out.support = enumerate_configurations(spec.n_vertices, spec.atoms, Constraint::with_degrees(spec));
  out.graphical = !out.support.empty();
  out.probabilities.assign(out.support.size(), out.support.empty() ? 0.0 : 1.0 / static_cast<double>(out.support.size()));
  return out;
}

}  // namespace atomlab::oracle
