#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "atomlab/canonical.hpp"
#include "atomlab/oracle.hpp"

using namespace atomlab;

namespace {

AtomSetPtr atoms(std::initializer_list<const char*> names) {
  std::vector<Atom> v;
  for (auto n : names) v.push_back(*catalogue_atom(n));
  return make_atom_set(v);
}

CanonicalDegreeSpec edge_spec(const std::vector<double>& k) {
  return degree_spec_from_orbits<double>(atoms({"edge"}), {{k}});
}

}  // namespace

TEST(Homogeneous, EdgeOnThreeVertices) {
  const CanonicalCountSpec spec{atoms({"edge"}), {1.5}};
  EXPECT_DOUBLE_EQ(placement_probability_homogeneous(spec, 3, 0), 0.5);
  EXPECT_NEAR(entropy_homogeneous(spec, 3).exact, 3 * std::log(2.0), 1e-12);
}

TEST(Homogeneous, ZeroAndFullAreDeterministic) {
  const auto set = atoms({"edge"});
  EXPECT_EQ(placement_probability_homogeneous({set, {0.0}}, 5, 0), 0.0);
  EXPECT_EQ(entropy_homogeneous({set, {0.0}}, 5).exact, 0.0);
  EXPECT_NEAR(entropy_homogeneous({set, {10.0}}, 5).exact, 0.0, 1e-12);
}

TEST(Homogeneous, TriangleOnThreeVertices) {
  EXPECT_DOUBLE_EQ(placement_probability_homogeneous({atoms({"triangle"}), {1.0}}, 3, 0), 1.0);
}

TEST(Homogeneous, RejectsImpossibleCounts) {
  EXPECT_THROW(placement_probability_homogeneous({atoms({"edge"}), {4.0}}, 3, 0), InfeasibleError);
  EXPECT_THROW(placement_probability_homogeneous({atoms({"edge"}), {-1.0}}, 3, 0), SpecError);
}

TEST(Homogeneous, SparseFormApproachesExactWhenSparse) {
  const CanonicalCountSpec spec{atoms({"edge", "triangle"}), {500.0, 50.0}};
  const auto h = entropy_homogeneous(spec, 2000);
  EXPECT_NEAR(h.sparse / h.exact, 1.0, 1e-3);
}

TEST(SparseProbability, EdgeIsExpectedDegreeModel) {
  const std::vector<double> k{1.0, 2.0, 3.0, 2.0};
  const auto spec = edge_spec(k);
  const double n = 4.0;  // sum k / 2
  for (Vertex u = 0; u < 4; ++u)
    for (Vertex v = u + 1; v < 4; ++v)
      EXPECT_NEAR(placement_probability_sparse(spec, Placement{0, {u, v}}, FeasibilityCheck::None),
                  k[u] * k[v] / (2 * n), 1e-12);
}

TEST(SparseProbability, UniformTriangle) {
  const std::vector<double> k(9, 1.5);
  const auto spec = degree_spec_from_orbits<double>(atoms({"triangle"}), {{k}});
  const double n = 9 * 1.5 / 3;
  EXPECT_NEAR(placement_probability_sparse(spec, Placement{0, {0, 1, 2}}), 6 * n * std::pow(1.5 / (3 * n), 3), 1e-12);
}

TEST(SparseProbability, InfeasibleDegreesRejected) {
  const auto spec = edge_spec({3.0, 3.0, 0.0, 0.0});
  EXPECT_THROW(placement_probability_sparse(spec, Placement{0, {0, 1}}), InfeasibleError);
  EXPECT_THROW(sparse_placement_distribution(spec, FeasibilityCheck::Strict), InfeasibleError);
}

TEST(Aggregation, SymmetricSplit) {
  const auto set = atoms({"edge", "edge"});
  const auto k = aggregate_orbits_canonical(*set, {{0, 0}, {1, 0}}, {3.0, 3.0}, {2.0, 4.0});
  EXPECT_EQ(k[0], (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(k[1], (std::vector<double>{1.0, 2.0}));
}

TEST(Aggregation, SingleMemberIsIdentity) {
  const auto set = atoms({"triangle"});
  const auto k = aggregate_orbits_canonical(*set, {{0, 0}}, {2.0}, {1.0, 2.0, 3.0});
  EXPECT_EQ(k[0], (std::vector<double>{1.0, 2.0, 3.0}));
}

TEST(Aggregation, EdgeWithTriangle) {
  const auto set = atoms({"edge", "triangle"});
  const auto k = aggregate_orbits_canonical(*set, {{0, 0}, {1, 0}}, {3.0, 2.0}, {4.0});
  EXPECT_DOUBLE_EQ(k[0][0], 2.0);
  EXPECT_DOUBLE_EQ(k[1][0], 2.0);
}

TEST(Series, ZeroDegrees) {
  const auto s = degree_corrected_series(edge_spec({0, 0, 0, 0}));
  EXPECT_EQ(s.value, 0.0);
}

// The edge-only series is the expansion of sum over ordered vertex pairs
// (u, v), halved, of h(k_u k_v / 2E). Summing h directly is the oracle.
TEST(Series, EdgeOnlyMatchesExpectedDegreeEntropy) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> deg(0.5, 4.0);
  std::vector<double> k(300);
  for (auto& x : k) x = deg(rng);
  double two_e = 0;
  for (double x : k) two_e += x;
  double direct = 0;
  for (double a : k)
    for (double b : k) direct += 0.5 * binary_entropy(a * b / two_e);
  const auto s = degree_corrected_series(edge_spec(k), 40);
  EXPECT_FALSE(s.growing);
  EXPECT_NEAR(s.value, direct, 1e-8 * direct);
}

TEST(Series, GrowingSeriesThrows) {
  // p_s close to 1 for the hub pair makes the terms decay slowly but they
  // still shrink; a spec outside the sparse regime is refused up front.
  EXPECT_THROW(entropy_degree_corrected(edge_spec({5, 5, 0.1, 0.1}), 10), InfeasibleError);
}

TEST(ExactSolver, RegularEdgesOnFourVertices) {
  const auto sol = solve_multipliers_exact(edge_spec({2, 2, 2, 2}));
  ASSERT_EQ(sol.distribution.placements.size(), 6u);
  for (double p : sol.distribution.probabilities) EXPECT_NEAR(p, 2.0 / 3.0, 1e-8);
  EXPECT_NEAR(sol.entropy, 6 * binary_entropy(2.0 / 3.0), 1e-6);
  const auto lam = sol.multipliers[0];
  for (double l : lam) EXPECT_NEAR(l, lam[0], 1e-8);
}

TEST(ExactSolver, RecoversTargets) {
  const std::vector<double> k{1.0, 2.0, 1.5, 0.5, 1.0};
  const auto sol = solve_multipliers_exact(edge_spec(k));
  const auto got = expected_orbit_degrees(sol.distribution);
  for (std::size_t v = 0; v < k.size(); ++v) EXPECT_NEAR(got[0][0][v], k[v], 1e-7);
}

TEST(ExactSolver, ZeroTargetExcludesVertex) {
  const auto sol = solve_multipliers_exact(edge_spec({1, 1, 2, 0}));
  for (std::size_t s = 0; s < sol.distribution.placements.size(); ++s) {
    const auto& vs = sol.distribution.placements[s].vertices;
    if (std::find(vs.begin(), vs.end(), 3u) != vs.end()) {
      EXPECT_EQ(sol.distribution.probabilities[s], 0.0);
    }
  }
}

TEST(ExactSolver, BoundaryTargetsForcePlacements) {
  const auto sol = solve_multipliers_exact(edge_spec({3, 3, 3, 3}));
  for (double p : sol.distribution.probabilities) EXPECT_EQ(p, 1.0);
  EXPECT_NEAR(sol.entropy, 0.0, 1e-12);
}

TEST(ExactSolver, InfeasibleTargets) {
  EXPECT_THROW(solve_multipliers_exact(edge_spec({4, 1, 1, 0})), InfeasibleError);
}

TEST(ExactSolver, AgreesWithOracle) {
  const auto set = atoms({"edge", "triangle"});
  const auto spec = degree_spec_from_orbits<double>(set, {{{1.5, 1.0, 1.2, 0.9, 1.4}}, {{0.6, 0.3, 0.6, 0.3, 0.3}}});
  const auto sol = solve_multipliers_exact(spec);
  const auto ref = oracle::exact_canonical_solution(spec);
  EXPECT_NEAR(sol.entropy, ref.entropy, 1e-6);
  ASSERT_EQ(sol.distribution.placements, ref.placements);
  for (std::size_t s = 0; s < ref.placements.size(); ++s)
    EXPECT_NEAR(sol.distribution.probabilities[s], ref.probabilities[s], 1e-6);
}

TEST(ExactSolver, AggregatedGroupWithCount) {
  // Edge and triangle stubs share one degree; the split is set by the counts.
  const auto set = atoms({"edge", "triangle"});
  CanonicalDegreeSpec spec;
  spec.n_vertices = 5;
  spec.atoms = set;
  spec.groups = {{{{0, 0}, {1, 0}}, {2.0, 2.0, 2.0, 2.0, 1.0}}};
  spec.counts = {3.0, 1.0};
  const auto sol = solve_multipliers_exact(spec);
  const auto ref = oracle::exact_canonical_solution(spec);
  EXPECT_NEAR(sol.entropy, ref.entropy, 1e-6);
  double edges = 0, triangles = 0;
  for (std::size_t s = 0; s < sol.distribution.placements.size(); ++s)
    (sol.distribution.placements[s].atom == 0 ? edges : triangles) += sol.distribution.probabilities[s];
  EXPECT_NEAR(edges, 3.0, 1e-6);
  EXPECT_NEAR(triangles, 1.0, 1e-6);
}

// Sparse series against the exact solution on four vertices. The sparse
// form uses k/N where the exact one has k/(N-1), and the gap closes only
// logarithmically in k.
TEST(Series, SmallDegreesNearExact) {
  const auto spec = edge_spec({0.01, 0.01, 0.01, 0.01});
  const double sparse = degree_corrected_series(spec, 10).value;
  const double exact = solve_multipliers_exact(spec).entropy;
  EXPECT_NEAR(sparse / exact, 1.0, 0.05) << "sparse " << sparse << " exact " << exact;
}
