#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "atomlab/canonical.hpp"
#include "atomlab/configuration.hpp"
#include "atomlab/error.hpp"
#include "atomlab/graph.hpp"
#include "atomlab/microcanonical.hpp"
#include "atomlab/random.hpp"

namespace atomlab {

// ---------------------------------------------------------------------------
// Canonical ensembles: independent placements.

/// Includes every placement independently with its probability.
inline Configuration sample_canonical(const PlacementDistribution& d, Rng& rng) {
  ConfigurationBuilder b(d.n_vertices, d.atoms);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t s = 0; s < d.placements.size(); ++s) {
    const double p = d.probabilities[s];
    if (p >= 1.0 || (p > 0.0 && u(rng) < p)) b.insert_canonical(d.placements[s]);
  }
  return std::move(b).build();
}

namespace detail {

// A uniformly random m-subgraph of K_N: a uniform ordered tuple of distinct
// vertices hits every subgraph through exactly |Aut(m)| tuples.
inline Placement random_placement(std::size_t n_vertices, std::uint32_t atom, const AtomInfo& info, Rng& rng) {
  const std::uint32_t k = info.order();
  std::vector<Vertex> t;
  t.reserve(k);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n_vertices - 1));
  while (t.size() < k) {
    const Vertex v = pick(rng);
    if (std::find(t.begin(), t.end(), v) == t.end()) t.push_back(v);
  }
  return Placement{atom, canonical_tuple(info.symmetry, t)};
}

}  // namespace detail

/// Placement spaces up to this size are enumerated by the homogeneous sampler.
inline constexpr double kEnumerationLimit = 1e6;

/// Homogeneous model, two-stage: n_m ~ Binomial(|H|, p_m), then n_m distinct
/// placements uniformly at random.
inline Configuration sample_canonical(const CanonicalCountSpec& spec, std::size_t n_vertices, Rng& rng) {
  ConfigurationBuilder b(n_vertices, spec.atoms);
  for (std::uint32_t m = 0; m < spec.atoms->size(); ++m) {
    const auto& info = (*spec.atoms)[m];
    const double p = placement_probability_homogeneous(spec, n_vertices, m);
    const double h = placements_as_double(n_vertices, info);
    if (p <= 0.0 || h == 0) continue;
    if (h <= kEnumerationLimit) {
      auto all = enumerate_placements(n_vertices, m, info);
      const auto total = static_cast<std::int64_t>(all.size());
      std::binomial_distribution<std::int64_t> count(total, p);
      const std::int64_t k = p >= 1.0 ? total : count(rng);
      // partial Fisher-Yates
      for (std::int64_t j = 0; j < k; ++j) {
        std::uniform_int_distribution<std::int64_t> pick(j, total - 1);
        std::swap(all[j], all[pick(rng)]);
        b.insert_canonical(all[j]);
      }
      continue;
    }
    if (h > 9e18) throw SpecError("placement space of '" + info.name() + "' too large to sample");
    std::binomial_distribution<std::int64_t> count(static_cast<std::int64_t>(h), p);
    const std::int64_t k = count(rng);
    if (static_cast<double>(k) > h / 2)
      throw SpecError("dense homogeneous sampling of '" + info.name() + "' beyond the enumeration limit");
    std::int64_t got = 0;
    while (got < k)
      if (b.insert_canonical(detail::random_placement(n_vertices, m, info, rng))) ++got;
  }
  return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Microcanonical ensembles: stub matching with full restarts.

struct SamplerOptions {
  std::uint64_t max_restarts = 1000000;
};

struct MicroSample {
  Configuration configuration;
  /// Rejected attempts before the accepted one.
  std::uint64_t restarts = 0;
};

/// Stub-matching sampler for one degree spec. Pooled stubs of an aggregation
/// group are shuffled together and dealt to the member orbits, so orbit
/// identity is fixed at match time.
class MicroSampler {
public:
  explicit MicroSampler(MicroDegreeSpec spec) : spec_(std::move(spec)) {
    const auto idx = group_index(spec_);
    counts_ = require_realisable(spec_);
    const auto& atoms = *spec_.atoms;
    for (const auto& g : spec_.groups) {
      std::vector<Vertex> stubs;
      for (std::size_t v = 0; v < spec_.n_vertices; ++v)
        stubs.insert(stubs.end(), static_cast<std::size_t>(g.degrees[v]), static_cast<Vertex>(v));
      stubs_.push_back(std::move(stubs));
    }
    // Offsets of each orbit's segment inside its group's stub list.
    segment_.resize(atoms.size());
    std::vector<std::size_t> fill(spec_.groups.size(), 0);
    for (std::size_t g = 0; g < spec_.groups.size(); ++g)
      for (const auto& r : spec_.groups[g].members) {
        if (segment_[r.atom].empty()) segment_[r.atom].resize(atoms[r.atom].orbit_count());
        segment_[r.atom][r.orbit] = {g, fill[g]};
        fill[g] += static_cast<std::size_t>(atoms[r.atom].orbit_size(r.orbit) * counts_[r.atom]);
      }
    for (std::size_t m = 0; m < atoms.size(); ++m)
      if (segment_[m].empty()) segment_[m].resize(atoms[m].orbit_count());
    (void)idx;
  }

  const MicroDegreeSpec& spec() const { return spec_; }

  /// One full matching; empty when it produced a self-match or a duplicate.
  std::optional<Configuration> attempt(Rng& rng) {
    const auto& atoms = *spec_.atoms;
    work_ = stubs_;
    for (auto& s : work_) std::shuffle(s.begin(), s.end(), rng);
    ConfigurationBuilder b(spec_.n_vertices, spec_.atoms);
    std::vector<Vertex> tuple;
    for (std::uint32_t m = 0; m < atoms.size(); ++m) {
      const auto& info = atoms[m];
      tuple.assign(info.order(), 0);
      for (std::int64_t j = 0; j < counts_[m]; ++j) {
        for (std::uint32_t i = 0; i < info.orbit_count(); ++i) {
          const auto [g, off] = segment_[m][i];
          const auto& orbit = info.symmetry.orbits[i];
          const std::size_t base = off + static_cast<std::size_t>(j) * orbit.size();
          for (std::size_t x = 0; x < orbit.size(); ++x) tuple[orbit[x]] = work_[g][base + x];
        }
        for (std::size_t a = 0; a < tuple.size(); ++a)
          for (std::size_t c = 0; c < a; ++c)
            if (tuple[a] == tuple[c]) return std::nullopt;
        if (!b.insert_canonical(Placement{m, canonical_tuple(info.symmetry, tuple)})) return std::nullopt;
      }
    }
    return std::move(b).build();
  }

  MicroSample sample(Rng& rng, const SamplerOptions& opt = {}) {
    MicroSample out;
    while (true) {
      if (auto c = attempt(rng)) {
        out.configuration = std::move(*c);
        return out;
      }
      if (++out.restarts > opt.max_restarts)
        throw SamplerExhausted("stub matching rejected " + std::to_string(out.restarts) +
                                   " attempts in a row; observed acceptance below " +
                                   std::to_string(1.0 / static_cast<double>(out.restarts)),
                               0.0);
    }
  }

private:
  struct Segment {
    std::size_t group = 0;
    std::size_t offset = 0;
  };
  MicroDegreeSpec spec_;
  std::vector<std::int64_t> counts_;
  std::vector<std::vector<Vertex>> stubs_, work_;
  std::vector<std::vector<Segment>> segment_;
};

inline MicroSample sample_microcanonical(const MicroDegreeSpec& spec, Rng& rng, const SamplerOptions& opt = {}) {
  MicroSampler s(spec);
  return s.sample(rng, opt);
}

/// Uniform over configurations with the given counts: n_m distinct
/// placements drawn uniformly for each atom.
inline Configuration sample_fixed_counts(std::size_t n_vertices, const MicroCountSpec& spec, Rng& rng) {
  ConfigurationBuilder b(n_vertices, spec.atoms);
  for (std::uint32_t m = 0; m < spec.atoms->size(); ++m) {
    const auto& info = (*spec.atoms)[m];
    const auto n = spec.counts[m];
    const double h = placements_as_double(n_vertices, info);
    if (n < 0 || static_cast<double>(n) > h) throw InfeasibleError("count of '" + info.name() + "' out of range");
    if (h <= kEnumerationLimit) {
      auto all = enumerate_placements(n_vertices, m, info);
      for (std::int64_t j = 0; j < n; ++j) {
        std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(j), all.size() - 1);
        std::swap(all[j], all[pick(rng)]);
        b.insert_canonical(all[j]);
      }
      continue;
    }
    std::int64_t got = 0;
    while (got < n)
      if (b.insert_canonical(detail::random_placement(n_vertices, m, info, rng))) ++got;
  }
  return std::move(b).build();
}

struct ProjectedSample {
  Graph graph;
  Configuration configuration;
  std::size_t collapsed_duplicates = 0;
  std::uint64_t restarts = 0;
};

inline ProjectedSample project_sample(Configuration c, ProjectionMode mode, std::uint64_t restarts = 0) {
  ProjectedSample out;
  auto pr = project_with_diagnostics(c, mode);
  out.graph = std::move(pr.graph);
  out.collapsed_duplicates = pr.collapsed_duplicates;
  out.configuration = std::move(c);
  out.restarts = restarts;
  return out;
}

inline ProjectedSample sample_and_project(const MicroDegreeSpec& spec, Rng& rng,
                                          ProjectionMode mode = ProjectionMode::Simple,
                                          const SamplerOptions& opt = {}) {
  auto s = sample_microcanonical(spec, rng, opt);
  return project_sample(std::move(s.configuration), mode, s.restarts);
}

inline ProjectedSample sample_and_project(const PlacementDistribution& d, Rng& rng,
                                          ProjectionMode mode = ProjectionMode::Simple) {
  return project_sample(sample_canonical(d, rng), mode);
}

// ---------------------------------------------------------------------------
// Parallel driver.

/// Runs f(index, rng) for index in [0, count) on up to `threads` threads.
/// Each index gets its own stream derived from `seed`, so results do not
/// depend on the thread count. Results are returned in index order.
template <class T>
std::vector<T> parallel_samples(std::size_t count, std::uint64_t seed, unsigned threads,
                                const std::function<T(std::size_t, Rng&)>& f) {
  std::vector<std::optional<T>> slots(count);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned t) {
    try {
      for (std::size_t i = t; i < count; i += threads) {
        Rng rng(derive_seed(seed, i));
        slots[i].emplace(f(i, rng));
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace atomlab
