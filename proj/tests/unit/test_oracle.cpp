#include <gtest/gtest.h>

#include <cmath>

#include "atomlab/oracle.hpp"

using namespace atomlab;

namespace {

AtomSetPtr atoms(std::initializer_list<const char*> names) {
  std::vector<Atom> v;
  for (auto n : names) v.push_back(*catalogue_atom(n));
  return make_atom_set(v);
}

MicroDegreeSpec edge_spec(const std::vector<std::int64_t>& d) {
  return degree_spec_from_orbits<std::int64_t>(atoms({"edge"}), {{d}});
}

}  // namespace

TEST(Enumerate, AllEdgeSubsets) {
  const auto all = oracle::enumerate_configurations(4, atoms({"edge"}), oracle::Constraint::none());
  EXPECT_EQ(all.size(), 64u);
}

TEST(Enumerate, RefusesLargeSpaces) {
  EXPECT_THROW(oracle::enumerate_configurations(8, atoms({"edge"}), oracle::Constraint::none()), OracleRefused);
}

TEST(Enumerate, DegreeConstraint) {
  // Degrees (2, 2, 1, 1): edge {0,1} must be present, then 0 and 1 take one
  // of vertices 2 and 3 each, in 2 ways.
  const auto spec = edge_spec({2, 2, 1, 1});
  const auto all = oracle::enumerate_configurations(4, spec.atoms, oracle::Constraint::with_degrees(spec));
  EXPECT_EQ(all.size(), 2u);
  for (const auto& c : all) EXPECT_EQ(orbit_degrees(c)[0][0], spec.groups[0].degrees);
}

TEST(Enumerate, TwoRegularOnFive) {
  // 2-regular graphs on 5 labelled vertices are the 4!/2 = 12 five-cycles.
  const auto spec = edge_spec({2, 2, 2, 2, 2});
  EXPECT_EQ(oracle::enumerate_configurations(5, spec.atoms, oracle::Constraint::with_degrees(spec)).size(), 12u);
}

TEST(Enumerate, CountConstraint) {
  const auto set = atoms({"triangle"});
  EXPECT_EQ(oracle::enumerate_configurations(5, set, oracle::Constraint::with_counts({2})).size(), 45u);  // C(10, 2)
}

TEST(Enumerate, AggregatedDegrees) {
  const auto base = degree_spec_from_orbits<std::int64_t>(atoms({"edge", "triangle"}), {{{1, 1, 0, 0}}, {{0, 1, 1, 1}}});
  MicroDegreeSpec agg = base;
  agg.groups = {{{{0, 0}, {1, 0}}, {1, 2, 1, 1}}};
  agg.counts = {1, 1};
  const auto all = oracle::enumerate_configurations(4, agg.atoms, oracle::Constraint::with_degrees(agg));
  // Vertex 1 lies in both atoms: the triangle is {1, a, b} and the edge
  // joins 1 to the remaining vertex, in 3 ways.
  EXPECT_EQ(all.size(), 3u);
}

TEST(MatchingCount, EdgeHandCounts) {
  // Four single stubs: 3 perfect matchings.
  EXPECT_EQ(oracle::exact_matching_count(edge_spec({1, 1, 1, 1})), 3);
  // (2, 1, 1): 4 stubs, 3 matchings including the self-paired one.
  EXPECT_EQ(oracle::exact_matching_count(edge_spec({2, 1, 1})), 3);
}

TEST(MatchingCount, TriangleHandCount) {
  // Six stubs into two triangles: C(6,3)/2 = 10.
  const auto spec = degree_spec_from_orbits<std::int64_t>(atoms({"triangle"}), {{{1, 1, 1, 1, 1, 1}}});
  EXPECT_EQ(oracle::exact_matching_count(spec), 10);
}

TEST(MatchingCount, RefusesManyStubs) {
  EXPECT_THROW(oracle::exact_matching_count(edge_spec(std::vector<std::int64_t>(14, 1))), OracleRefused);
}

TEST(CanonicalSolution, RegularQuadrangle) {
  const auto spec = degree_spec_from_orbits<double>(atoms({"edge"}), {{{2, 2, 2, 2}}});
  const auto sol = oracle::exact_canonical_solution(spec);
  EXPECT_EQ(sol.method, "full-space");
  for (double p : sol.probabilities) EXPECT_NEAR(p, 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(sol.entropy, 6 * binary_entropy(2.0 / 3.0), 1e-9);
}

TEST(CanonicalSolution, FullSpaceFactorisesOverPlacements) {
  // With linear constraints the maximum-entropy distribution over whole
  // configurations is a product over placements.
  const auto spec = degree_spec_from_orbits<double>(atoms({"edge"}), {{{1.5, 1.0, 2.0, 0.5, 1.0}}});
  const auto sol = oracle::exact_canonical_solution(spec);
  double h = 0;
  for (double p : sol.probabilities) h += binary_entropy(p);
  EXPECT_NEAR(sol.entropy, h, 1e-8);
}

TEST(CanonicalSolution, PinnedPlacements) {
  // Vertex 3 has degree 3 on four vertices: every edge at 3 is certain.
  const auto spec = degree_spec_from_orbits<double>(atoms({"edge"}), {{{1, 1, 1, 3}}});
  const auto sol = oracle::exact_canonical_solution(spec);
  for (std::size_t s = 0; s < sol.placements.size(); ++s) {
    const auto& v = sol.placements[s].vertices;
    EXPECT_NEAR(sol.probabilities[s], (v[0] == 3 || v[1] == 3) ? 1.0 : 0.0, 1e-12);
  }
  EXPECT_NEAR(sol.entropy, 0.0, 1e-12);
}

TEST(CanonicalSolution, Infeasible) {
  const auto spec = degree_spec_from_orbits<double>(atoms({"edge"}), {{{4, 1, 1, 2}}});
  EXPECT_THROW(oracle::exact_canonical_solution(spec), InfeasibleError);
}

TEST(SamplerDistribution, UniformOverSupport) {
  const auto d = oracle::exact_sampler_distribution(edge_spec({2, 2, 2, 2, 2}));
  ASSERT_EQ(d.support.size(), 12u);
  for (double p : d.probabilities) EXPECT_DOUBLE_EQ(p, 1.0 / 12);
  EXPECT_FALSE(oracle::exact_sampler_distribution(edge_spec({3, 1})).graphical);
}
