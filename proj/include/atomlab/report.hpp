#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "atomlab/canonical.hpp"
#include "atomlab/io.hpp"
#include "atomlab/microcanonical.hpp"
#include "atomlab/oracle.hpp"
#include "atomlab/random.hpp"
#include "atomlab/sampler.hpp"
#include "atomlab/special_models.hpp"

// Mode dispatch behind the `entropy` and `sample` commands.
namespace atomlab::report {

using nlohmann::json;

enum class Method { Auto, Combinatorial, Analytic };

inline Method parse_method(const std::string& s) {
  if (s == "auto") return Method::Auto;
  if (s == "combinatorial") return Method::Combinatorial;
  if (s == "analytic") return Method::Analytic;
  throw SpecError("unknown entropy method '" + s + "' (expected auto, combinatorial or analytic)");
}

struct EntropyOptions {
  Method method = Method::Auto;
  int l_max = 10;
  /// Canonical degrees: exact multipliers. Microcanonical degrees: count the
  /// configurations with the oracle.
  bool exact = false;
};

namespace detail {

inline json series_json(const SeriesEntropy& s) {
  return {{"l_max", s.terms.size()}, {"last_term", s.last_term}, {"growing", s.growing}, {"terms", s.terms}};
}

inline json micro_degree_entropy(const MicroDegreeSpec& spec, const EntropyOptions& opt) {
  require_realisable(spec);
  json out;
  const auto b = entropy_combinatorial(spec);
  const auto a = entropy_analytic(spec, opt.l_max);
  out["components"] = {{"stub_matchings", b.stub_matchings},
                       {"self_match", b.self_match},
                       {"multi_subgraph", b.multi_subgraph}};
  out["multi_subgraph_negligible"] = b.multi_subgraph_negligible;
  out["combinatorial"] = b.total;
  out["analytic"] = a.value;
  out["series"] = series_json(a);
  out["predicted_acceptance"] = predicted_acceptance(spec);
  if (opt.exact) {
    const auto n = oracle::enumerate_configurations(spec.n_vertices, spec.atoms, oracle::Constraint::with_degrees(spec)).size();
    if (n == 0) throw InfeasibleError("no configuration has the requested degrees");
    out["method"] = "exact-enumeration";
    out["configurations"] = n;
    out["entropy"] = std::log(static_cast<double>(n));
  } else if (opt.method == Method::Analytic) {
    out["method"] = "analytic";
    out["entropy"] = a.value;
  } else {
    out["method"] = "combinatorial";
    out["entropy"] = b.total;
  }
  return out;
}

}  // namespace detail

/// Entropy in nats with its components and diagnostics.
inline json entropy_report(const io::EnsembleSpec& es, const EntropyOptions& opt = {}) {
  json out;
  out["mode"] = es.mode_name;
  switch (es.mode) {
    case io::Mode::CanonicalCounts: {
      const auto h = entropy_homogeneous(io::canonical_counts(es), es.n_vertices);
      out["method"] = "exact";
      out["entropy"] = h.exact;
      out["sparse"] = h.sparse;
      break;
    }
    case io::Mode::CanonicalDegrees: {
      const auto s = degree_corrected_series(es.canonical, opt.l_max, FeasibilityCheck::Uniform);
      out["series"] = detail::series_json(s);
      out["sparse"] = s.value;
      if (opt.exact) {
        const auto sol = solve_multipliers_exact(es.canonical);
        out["method"] = "exact";
        out["entropy"] = sol.entropy;
        out["iterations"] = sol.iterations;
        out["residual"] = sol.residual;
      } else {
        out["method"] = "sparse";
        out["entropy"] = s.value;
      }
      break;
    }
    case io::Mode::MicroCounts:
      out["method"] = "exact";
      out["entropy"] = log_count_fixed_counts(es.n_vertices, io::micro_counts(es));
      break;
    case io::Mode::MicroDegrees:
      out.update(detail::micro_degree_entropy(es.micro, opt));
      break;
    case io::Mode::MicroAtomDegrees:
    case io::Mode::MicroTotalDegree: {
      auto general = detail::micro_degree_entropy(es.micro, opt);
      const double closed = es.mode == io::Mode::MicroAtomDegrees
                                ? entropy_per_atom_degrees(*es.atoms, es.atom_degrees)
                                : entropy_total_degree(*es.atoms,
                                                       std::vector<std::int64_t>(es.counts.begin(), es.counts.end()),
                                                       es.total_degrees);
      out.update(general);
      out["closed_form"] = closed;
      if (!opt.exact && opt.method == Method::Auto) {
        out["method"] = "closed-form";
        out["entropy"] = closed;
      }
      break;
    }
    case io::Mode::NamedModel: {
      out["model"] = es.model;
      double closed = 0.0;
      switch (es.extra) {
        case io::ExtraModel::BipartiteCliques:
          closed = entropy_bipartite_cliques(es.clique_sizes, es.params.degrees, es.distinguishable);
          break;
        case io::ExtraModel::MultilayerVertexCoupled:
          closed = entropy_multilayer_vertex_coupled(es.layer_edges, es.params.degrees);
          break;
        case io::ExtraModel::SbmInOut:
          closed = entropy_dcsbm_in_out(es.params.block_of, es.params.edge_counts, es.in_community_degrees,
                                        es.out_community_degrees);
          break;
        case io::ExtraModel::None:
          closed = entropy_named_model(*es.kind, es.params);
          out.update(detail::micro_degree_entropy(es.micro, opt));
          out["general"] = out["entropy"];
          break;
      }
      out["closed_form"] = closed;
      if (!opt.exact && opt.method == Method::Auto) {
        out["method"] = "closed-form";
        out["entropy"] = closed;
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sampling.

struct SampleOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 1;
  unsigned threads = 1;
  bool exact = false;  // canonical degrees: use the exact multipliers
  SamplerOptions sampler;
};

struct SampleRun {
  std::vector<Configuration> configurations;
  std::vector<std::uint64_t> restarts;
  /// Only for microcanonical degree modes.
  std::optional<double> predicted_acceptance;

  std::uint64_t total_restarts() const {
    std::uint64_t s = 0;
    for (auto r : restarts) s += r;
    return s;
  }
  double observed_acceptance() const {
    const double n = static_cast<double>(configurations.size());
    return n / (n + static_cast<double>(total_restarts()));
  }
};

inline bool samples_micro_degrees(const io::EnsembleSpec& es) {
  return es.mode == io::Mode::MicroDegrees || es.mode == io::Mode::MicroAtomDegrees ||
         es.mode == io::Mode::MicroTotalDegree || (es.mode == io::Mode::NamedModel && es.kind);
}

/// Draws independent samples; sample i uses stream derive_seed(seed, i), so
/// the result does not depend on the thread count.
inline SampleRun sample_ensemble(const io::EnsembleSpec& es, const SampleOptions& opt) {
  struct One {
    Configuration c;
    std::uint64_t restarts = 0;
  };
  std::function<One(std::size_t, Rng&)> draw;
  SampleRun run;
  std::optional<PlacementDistribution> dist;
  if (samples_micro_degrees(es)) {
    require_realisable(es.micro);
    run.predicted_acceptance = predicted_acceptance(es.micro);
    draw = [&](std::size_t, Rng& rng) {
      MicroSampler s(es.micro);
      auto r = s.sample(rng, opt.sampler);
      return One{std::move(r.configuration), r.restarts};
    };
  } else {
    switch (es.mode) {
      case io::Mode::CanonicalCounts:
        draw = [&](std::size_t, Rng& rng) { return One{sample_canonical(io::canonical_counts(es), es.n_vertices, rng)}; };
        break;
      case io::Mode::MicroCounts:
        draw = [&](std::size_t, Rng& rng) { return One{sample_fixed_counts(es.n_vertices, io::micro_counts(es), rng)}; };
        break;
      case io::Mode::CanonicalDegrees:
        dist = opt.exact ? solve_multipliers_exact(es.canonical).distribution
                         : sparse_placement_distribution(es.canonical, FeasibilityCheck::Strict);
        draw = [&](std::size_t, Rng& rng) { return One{sample_canonical(*dist, rng)}; };
        break;
      default:
        throw SpecError("model '" + es.model + "' has a closed form only and cannot be sampled");
    }
  }
  auto drawn = parallel_samples<One>(opt.samples, opt.seed, opt.threads, draw);
  for (auto& d : drawn) {
    run.configurations.push_back(std::move(d.c));
    run.restarts.push_back(d.restarts);
  }
  return run;
}

}  // namespace atomlab::report
