#include <gtest/gtest.h>

#include <cmath>

#include "atomlab/validation.hpp"

using namespace atomlab;
using namespace atomlab::validation;

TEST(Checks, PlacementCountsPass) {
  const auto r = check_placement_counts(4, 5);
  EXPECT_TRUE(r.passed) << r.detail;
  EXPECT_GT(r.cases, 0u);
}

TEST(Checks, SymmetryTablePasses) {
  const auto r = check_symmetry_table();
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Checks, MatchingCountsPass) {
  const auto r = check_matching_counts(8, 9);
  EXPECT_TRUE(r.passed) << r.detail;
  EXPECT_GT(r.cases, 20u);
}

// A matching formula with an off-by-one in the group total must be caught.
TEST(Checks, MatchingCountsCatchOffByOne) {
  const MatchingFormula broken = [](const MicroDegreeSpec& spec) {
    double s = log_stub_matchings(spec);
    for (const auto& g : spec.groups) {
      double t = 0;
      for (auto d : g.degrees) t += static_cast<double>(d);
      if (t > 0) s += std::log(t + 1);  // (T+1)! in place of T!
    }
    return s;
  };
  const auto r = check_matching_counts(8, 9, broken);
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.detail.empty());
}

TEST(Checks, MatchingCountsCatchDroppedAutomorphisms) {
  const MatchingFormula broken = [](const MicroDegreeSpec& spec) {
    double s = log_stub_matchings(spec);
    const auto counts = require_graphical(spec);
    for (std::size_t m = 0; m < spec.atoms->size(); ++m)
      s += static_cast<double>(counts[m]) * std::log(static_cast<double>((*spec.atoms)[m].aut()));
    return s;
  };
  EXPECT_FALSE(check_matching_counts(8, 9, broken).passed);
}

TEST(Checks, FixedCountsPass) {
  const auto r = check_fixed_counts(4);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Checks, SingleEdgeReductionPasses) {
  const auto r = check_single_edge_reduction(10, 100);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Checks, UnifiedReductionsPass) {
  const auto r = check_unified_reductions(5);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Uniformity, ExactAcceptanceOfPerfectMatching) {
  // Degrees (1,1,1,1): every matching is valid, so acceptance is 1.
  const auto set = make_atom_set({*catalogue_atom("edge")});
  const auto spec = degree_spec_from_orbits<std::int64_t>(set, {{{1, 1, 1, 1}}});
  EXPECT_NEAR(exact_acceptance(spec, 3), 1.0, 1e-12);
}

TEST(Uniformity, CorpusIsFilteredAndSorted) {
  // One spec per relabelling class: per-vertex degree vectors are in
  // non-increasing lexicographic order.
  const auto corpus = uniformity_corpus(64, true, 0.05);
  ASSERT_FALSE(corpus.empty());
  for (const auto& c : corpus) {
    auto column = [&](std::size_t v) {
      std::vector<std::int64_t> col;
      for (const auto& g : c.spec.groups) col.push_back(g.degrees[v]);
      return col;
    };
    for (std::size_t v = 1; v < c.spec.n_vertices; ++v) EXPECT_FALSE(column(v - 1) < column(v)) << c.label;
    const auto support = oracle::exact_sampler_distribution(c.spec).support.size();
    EXPECT_GE(exact_acceptance(c.spec, support), 0.05) << c.label;
  }
}

TEST(Uniformity, SmallRunPasses) {
  const auto r = check_uniformity(2000, 1e-3, true, 3, 2);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Suite, SmallSuitePasses) {
  for (const auto& r : run_suite(Suite::Small)) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}
