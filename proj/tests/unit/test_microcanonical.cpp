#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "atomlab/microcanonical.hpp"
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

std::vector<std::int64_t> poisson_degrees(std::size_t n, double mean, std::uint64_t seed, int multiple = 2) {
  std::mt19937_64 rng(seed);
  std::poisson_distribution<std::int64_t> pois(mean);
  std::vector<std::int64_t> d(n);
  std::int64_t sum = 0;
  for (auto& x : d) sum += x = pois(rng);
  while (sum % multiple != 0) {
    ++d[0];
    ++sum;
  }
  return d;
}

}  // namespace

TEST(FixedCounts, EdgeOnThreeVertices) {
  const MicroCountSpec spec{atoms({"edge"}), {2}};
  EXPECT_EQ(count_fixed_counts(3, spec), 3);
  EXPECT_NEAR(log_count_fixed_counts(3, spec), std::log(3.0), 1e-12);
}

TEST(FixedCounts, MatchesEnumeration) {
  const auto set = atoms({"edge", "triangle"});
  for (std::int64_t e = 0; e <= 3; ++e)
    for (std::int64_t t = 0; t <= 2; ++t) {
      const auto n = oracle::enumerate_configurations(4, set, oracle::Constraint::with_counts({e, t})).size();
      EXPECT_EQ(count_fixed_counts(4, {set, {e, t}}), n) << e << " edges, " << t << " triangles";
    }
}

TEST(FixedCounts, OutOfRange) {
  EXPECT_THROW(count_fixed_counts(3, {atoms({"edge"}), {4}}), InfeasibleError);
  EXPECT_THROW(log_count_fixed_counts(3, {atoms({"edge"}), {4}}), InfeasibleError);
  EXPECT_THROW(count_fixed_counts(3, {atoms({"edge"}), {}}), SpecError);
}

TEST(StubMatchings, LogFormMatchesBigInteger) {
  const auto spec = degree_spec_from_orbits<std::int64_t>(atoms({"edge", "triangle"}),
                                                          {{{2, 1, 1, 2, 0, 2}}, {{1, 1, 1, 0, 2, 1}}});
  double sum_log_fact = 0;
  for (const auto& g : spec.groups)
    for (auto d : g.degrees) sum_log_fact += std::lgamma(static_cast<double>(d) + 1);
  EXPECT_NEAR(log_stub_matchings(spec), log_big(labelled_stub_matchings(spec)) - sum_log_fact, 1e-9);
}

TEST(StubMatchings, AgreesWithBruteForce) {
  for (const auto& d : std::vector<std::vector<std::int64_t>>{{1, 1}, {2, 1, 1}, {2, 2, 1, 1}, {3, 1, 1, 1}})
    EXPECT_EQ(labelled_stub_matchings(edge_spec(d)), oracle::exact_matching_count(edge_spec(d)));
  const auto tri = degree_spec_from_orbits<std::int64_t>(atoms({"triangle"}), {{{2, 1, 1, 1, 1}}});
  EXPECT_EQ(labelled_stub_matchings(tri), oracle::exact_matching_count(tri));
  const auto path = degree_spec_from_orbits<std::int64_t>(atoms({"path-3"}), {{{1, 1, 1, 1}, {1, 0, 1, 0}}});
  EXPECT_EQ(labelled_stub_matchings(path), oracle::exact_matching_count(path));
}

TEST(Combinatorial, ZeroDegreesGiveZero) {
  const auto b = entropy_combinatorial(edge_spec({0, 0, 0}));
  EXPECT_EQ(b.total, 0.0);
}

// Edge-only: the corrections reduce to -x/2 - x^2/4 with
// x = sum d(d-1) / sum d.
TEST(Combinatorial, EdgeCorrectionsAreClassical) {
  const auto d = poisson_degrees(500, 4.0, 5);
  double s1 = 0, s2 = 0, lf = 0;
  for (auto x : d) {
    s1 += static_cast<double>(x);
    s2 += static_cast<double>(x * (x - 1));
    lf += std::lgamma(static_cast<double>(x) + 1);
  }
  const double x = s2 / s1, e = s1 / 2;
  const auto b = entropy_combinatorial(edge_spec(d));
  EXPECT_NEAR(b.self_match, -x / 2, 1e-9);
  EXPECT_NEAR(b.multi_subgraph, -x * x / 4, 1e-9);
  const double head = std::lgamma(2 * e + 1) - std::lgamma(e + 1) - e * std::log(2.0) - lf;
  EXPECT_NEAR(b.stub_matchings, head, 1e-6);
  EXPECT_FALSE(b.multi_subgraph_negligible[0]);
}

TEST(Combinatorial, TriangleDuplicationFlaggedNegligible) {
  const auto spec = degree_spec_from_orbits<std::int64_t>(atoms({"edge", "triangle"}),
                                                          {{poisson_degrees(60, 3, 1)}, {poisson_degrees(60, 1, 2, 3)}});
  const auto b = entropy_combinatorial(spec);
  EXPECT_FALSE(b.multi_subgraph_negligible[0]);
  EXPECT_TRUE(b.multi_subgraph_negligible[1]);
}

TEST(Combinatorial, SingleAtomHasNoDuplicateTerm) {
  const auto ml = log_multi_subgraph_correction(edge_spec({1, 1, 0}));
  EXPECT_EQ(ml.value, 0.0);
}

TEST(Combinatorial, InfeasibleSpecRejected) {
  EXPECT_THROW(entropy_combinatorial(edge_spec({1, 0, 0})), InfeasibleError);
}

// For a regular edge spec the exact count of simple graphs is known on
// small vertex sets; the approximation should be in the right range.
TEST(Combinatorial, CloseToExactCountOnSmallGraph) {
  const auto spec = edge_spec({2, 2, 2, 2, 2, 2, 2});
  const auto n = oracle::enumerate_configurations(7, spec.atoms, oracle::Constraint::with_degrees(spec)).size();
  const double exact = std::log(static_cast<double>(n));
  EXPECT_NEAR(entropy_combinatorial(spec).total / exact, 1.0, 0.1);
}

TEST(Acceptance, PredictedIsProbability) {
  const double a = predicted_acceptance(edge_spec(poisson_degrees(200, 3, 4)));
  EXPECT_GT(a, 0.0);
  EXPECT_LE(a, 1.0);
  EXPECT_EQ(predicted_acceptance(edge_spec({1, 1, 0})), 1.0);
}

TEST(SelfMatchVertex, EdgeOnVertexWithTwoStubs) {
  // Two stubs out of 2n: chance they pair with each other is 1/(2n-1).
  const auto spec = edge_spec({2, 1, 1, 1, 1});
  const double n = 3;
  EXPECT_NEAR(std::exp(log_self_match_vertex(spec, 0)), 1.0 - 1.0 / (2 * n - 1), 1e-12);
  EXPECT_NEAR(log_self_match_vertex(spec, 1), 0.0, 1e-12);
}

TEST(Duplicate, EdgePairProbability) {
  // Expected number of stub pairs forming two copies of {u,v}:
  // C(d_u,2) C(d_v,2) 2 / (2n)^2 = d_u(d_u-1) d_v(d_v-1) / (8 n^2).
  const auto spec = edge_spec(poisson_degrees(2000, 5, 9));
  const auto& d = spec.groups[0].degrees;
  double n = 0;
  for (auto x : d) n += static_cast<double>(x);
  n /= 2;
  Vertex u = 0, v = 1;
  while (d[u] < 2) ++u;
  v = u + 1;
  while (d[v] < 2) ++v;
  const double du = static_cast<double>(d[u]), dv = static_cast<double>(d[v]);
  const double approx = du * (du - 1) * dv * (dv - 1) / (8 * n * n);
  EXPECT_NEAR(duplicate_probability(spec, Placement{0, {u, v}}) / approx, 1.0, 0.01);
  Vertex low = 0;
  while (d[low] >= 2) ++low;
  EXPECT_EQ(duplicate_probability(spec, Placement{0, {low, u}}), 0.0);
}

TEST(Analytic, EdgeOnlyAgreesWithCombinatorialWhenSparse) {
  const auto spec = edge_spec(poisson_degrees(2000, 3, 11));
  const double a = entropy_analytic(spec).value;
  const double b = entropy_combinatorial(spec).total;
  EXPECT_LT(std::abs(a - b) / 2000, 1e-2);
}

TEST(Analytic, GapPerVertexShrinksWithSize) {
  double last = INFINITY;
  for (std::size_t n : {100, 400, 1600}) {
    const auto spec = degree_spec_from_orbits<std::int64_t>(
        atoms({"edge", "triangle"}), {{poisson_degrees(n, 3, n)}, {poisson_degrees(n, 3, n + 1, 3)}});
    const double gap = std::abs(entropy_analytic(spec).value - entropy_combinatorial(spec).total) / n;
    EXPECT_LT(gap, last) << "N=" << n;
    last = gap;
  }
}

TEST(Analytic, AggregatedRoutesThroughCanonical) {
  const auto base = degree_spec_from_orbits<std::int64_t>(atoms({"edge", "triangle"}),
                                                          {{poisson_degrees(300, 3, 1)}, {poisson_degrees(300, 1, 2, 3)}});
  const auto agg = aggregate_orbits_micro(base, {{0, 0}, {1, 0}});
  const auto a = entropy_analytic(agg);
  EXPECT_TRUE(std::isfinite(a.value));
  EXPECT_THROW(entropy_analytic(base, -1), SpecError);
}

TEST(Aggregation, SumsDegreesAndPinsCounts) {
  const auto base = degree_spec_from_orbits<std::int64_t>(atoms({"edge", "triangle"}), {{{1, 1, 2}}, {{1, 1, 1}}});
  const auto agg = aggregate_orbits_micro(base, {{0, 0}, {1, 0}});
  ASSERT_EQ(agg.groups.size(), 1u);
  EXPECT_EQ(agg.groups[0].degrees, (std::vector<std::int64_t>{2, 2, 3}));
  EXPECT_EQ(agg.counts[0], 2);
  EXPECT_EQ(agg.counts[1], 1);
  EXPECT_THROW(aggregate_orbits_micro(agg, {{0, 0}}), SpecError);
  EXPECT_THROW(aggregate_orbits_micro(base, {{0, 0}, {0, 0}}), SpecError);
  EXPECT_THROW(aggregate_orbits_micro(base, {{0, 0}}, {1, 1, 1}), InfeasibleError);
}

// Per-atom degrees are the general machinery with every orbit of an atom in
// one group; the closed form should track it.
TEST(ClosedForms, PerAtomDegreesMatchGeneral) {
  const auto set = atoms({"edge", "path-3"});
  const std::vector<std::vector<std::int64_t>> d{poisson_degrees(400, 3, 21), poisson_degrees(400, 3, 22, 3)};
  const double closed = entropy_per_atom_degrees(*set, d);
  const double general = entropy_combinatorial(per_atom_degree_spec(set, d)).total;
  EXPECT_NEAR(closed, general, 1e-6 * std::abs(general));
}

TEST(ClosedForms, TotalDegreeMatchesGeneral) {
  const auto set = atoms({"edge", "triangle"});
  const auto d = poisson_degrees(400, 5, 23);
  std::int64_t sum = 0;
  for (auto x : d) sum += x;
  // Split the stubs as 2 e + 3 t = sum with t about a fifth of the stubs.
  std::int64_t t = sum / 15;
  while ((sum - 3 * t) % 2 != 0) --t;
  const std::vector<std::int64_t> counts{(sum - 3 * t) / 2, t};
  const double closed = entropy_total_degree(*set, counts, d);
  const double general = entropy_combinatorial(total_degree_spec(set, counts, d)).total;
  EXPECT_NEAR(closed, general, 1e-6 * std::abs(general));
  EXPECT_THROW(entropy_total_degree(*set, {counts[0] + 1, t}, d), InfeasibleError);
}

TEST(Capacity, DegreeAboveVertexCapacity) {
  // (3, 1, 0) on three vertices has an even sum, but a vertex meets at most
  // two edges.
  const auto spec = edge_spec({3, 1, 0});
  EXPECT_TRUE(check_graphicality(spec).graphical);
  EXPECT_EQ(capacity_violations(spec, require_graphical(spec)).size(), 1u);
  EXPECT_THROW(require_realisable(spec), InfeasibleError);
}

TEST(Capacity, CompleteGraphIsRealisable) {
  EXPECT_NO_THROW(require_realisable(edge_spec({4, 4, 4, 4, 4})));
  // Triangles through one vertex of K_4: C(3, 2) = 3.
  const auto tri = degree_spec_from_orbits<std::int64_t>(atoms({"triangle"}), {{{3, 3, 3, 3}}});
  EXPECT_NO_THROW(require_realisable(tri));
}
