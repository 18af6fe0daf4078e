#include <gtest/gtest.h>

#include "liesublat/catalog.hpp"
#include "liesublat/predicates.hpp"
#include "oracles.hpp"

using namespace liesublat;

namespace {

// Compares every lattice predicate with the literal definitions in oracles.hpp.
void compare_with_oracle(const LieAlgebra& L) {
  const SubalgebraLattice lat = SubalgebraLattice::build(L, {kDefaultSubspaceBudget, 1});
  const oracle::Table t(L);
  oracle::Lattice o{t, {}};
  for (const Subspace& s : lat.nodes()) o.nodes.push_back(oracle::of(s));
  const auto subspaces = oracle::all_subspaces(L.dim(), L.prime());
  for (NodeId u = 0; u < lat.size(); ++u) {
    const oracle::Space& U = o.nodes[u];
    const bool um = o.upper_modular(U), lm = o.lower_modular(U);
    const PredicateReport m = is_modular(lat, u);
    ASSERT_EQ(m.verdict, o.modular(U)) << L.name() << " node " << u;
    ASSERT_EQ(is_upper_modular(lat, u).verdict, um) << L.name() << " node " << u;
    ASSERT_EQ(is_lower_modular(lat, u).verdict, lm) << L.name() << " node " << u;
    ASSERT_EQ(is_semi_modular(lat, u).verdict, um && lm) << L.name() << " node " << u;
    ASSERT_EQ(is_modular_star(lat, u).verdict, o.modular_star(U)) << L.name() << " node " << u;
    const bool qi = oracle::quasi_ideal(t, U, subspaces);
    const PredicateReport q = is_quasi_ideal(lat, u);
    ASSERT_EQ(q.verdict, qi) << L.name() << " node " << u;
    ASSERT_EQ(is_quasi_ideal_bruteforce(L, lat.node(u)), qi);
    for (const PredicateReport& r : {m, q, is_semi_modular(lat, u), is_modular_star(lat, u)}) {
      if (!r.verdict) {
        ASSERT_TRUE(r.witness.has_value());
        ASSERT_TRUE(witness_reproduces(L, r)) << L.name() << " " << r.predicate;
      }
    }
  }
}

// Every one-dimensional subalgebra inside U is an ideal (quasi-ideal) of L.
bool strong_oracle(const oracle::Table& t, const oracle::Space& U, bool quasi,
                   const std::vector<oracle::Space>& subspaces) {
  for (const oracle::Vec& x : U) {
    if (std::all_of(x.begin(), x.end(), [](int c) { return c == 0; })) continue;
    const oracle::Space line = oracle::span({x}, t.n, t.p);
    if (quasi) {
      if (!oracle::quasi_ideal(t, line, subspaces)) return false;
    } else {
      for (const oracle::Vec& y : oracle::all_vectors(t.n, t.p)) {
        if (!line.count(t.bracket(x, y))) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST(Predicates, FixturesMatchOracle) {
  for (const LieAlgebra& L : {algebra_K(), sl2(3), nonabelian2(3), heisenberg(2), heisenberg(3), almost_abelian(3, 3),
                              upper_triangular(2, 2)}) {
    compare_with_oracle(L);
  }
}

TEST(Predicates, EveryThreeDimensionalBinaryAlgebraMatchesOracle) {
  enumerate_structures(3, 2, [](const LieAlgebra& L) { compare_with_oracle(L); });
}

TEST(Predicates, StrongIdealsMatchOracle) {
  for (const LieAlgebra& L : {algebra_K(), sl2(3), almost_abelian(3, 3), heisenberg(3), nonabelian2(5)}) {
    const SubalgebraLattice lat = SubalgebraLattice::build(L);
    const oracle::Table t(L);
    const auto subspaces = oracle::all_subspaces(L.dim(), L.prime());
    for (NodeId u = 0; u < lat.size(); ++u) {
      const oracle::Space U = oracle::of(lat.node(u));
      const PredicateReport si = is_strong_ideal(lat, u), sq = is_strong_quasi_ideal(lat, u);
      EXPECT_EQ(si.verdict, strong_oracle(t, U, false, subspaces)) << L.name() << " node " << u;
      EXPECT_EQ(sq.verdict, strong_oracle(t, U, true, subspaces)) << L.name() << " node " << u;
      if (!sq.verdict) EXPECT_TRUE(witness_reproduces(L, sq));
    }
  }
}

TEST(Predicates, KExample) {
  const LieAlgebra K = algebra_K();
  const SubalgebraLattice lat = SubalgebraLattice::build(K);
  const NodeId fc = lat.id_of(Subspace::span(std::vector{K.basis_vector(2)}, 3, 2));
  EXPECT_TRUE(is_quasi_ideal(lat, fc).verdict);
  EXPECT_TRUE(is_strong_quasi_ideal(lat, fc).verdict);
  EXPECT_FALSE(is_strong_ideal(lat, fc).verdict);
  EXPECT_TRUE(is_semi_modular(lat, fc).verdict);
  EXPECT_FALSE(is_mu_algebra(lat));
  EXPECT_FALSE(has_one_and_half_generation(lat).verdict);
}

TEST(Predicates, WithinMatchesInducedLattice) {
  // Predicates restricted to S agree with the predicate computed in the
  // lattice of S as an algebra of its own.
  const LieAlgebra L = direct_sum(sl2(3), LieAlgebra::abelian(1, 3));
  const SubalgebraLattice lat = SubalgebraLattice::build(L);
  for (NodeId s = 0; s < lat.size(); ++s) {
    if (lat.dim(s) != 3) continue;
    const LieAlgebra S = restrict_to(L, lat.node(s));
    const SubalgebraLattice sub = SubalgebraLattice::build(S);
    ASSERT_EQ(sub.size(), lat.down_set(s).size());
    for (NodeId u : lat.down_set(s)) {
      std::vector<FqVector> coords;
      for (std::size_t i = 0; i < lat.node(u).dim(); ++i) {
        const auto c = lat.node(s).coordinates(lat.node(u).row(i));
        FqVector v(3, 3);
        for (std::size_t k = 0; k < c.size(); ++k) v.set(k, c[k]);
        coords.push_back(v);
      }
      const NodeId v = sub.id_of(Subspace::span(coords, 3, 3));
      EXPECT_EQ(is_modular(lat, u, s).verdict, is_modular(sub, v).verdict);
      EXPECT_EQ(is_semi_modular(lat, u, s).verdict, is_semi_modular(sub, v).verdict);
    }
  }
}

TEST(Predicates, GenerationAndMu) {
  const SubalgebraLattice s5 = SubalgebraLattice::build(sl2(5));
  EXPECT_TRUE(has_one_and_half_generation(s5).verdict);
  EXPECT_FALSE(is_mu_algebra(s5));
  // Any two independent elements span a 2-dimensional algebra.
  EXPECT_TRUE(has_one_and_half_generation(SubalgebraLattice::build(nonabelian2(3))).verdict);
  // The centre of the Heisenberg algebra has no mate.
  const SubalgebraLattice n = SubalgebraLattice::build(heisenberg(3));
  EXPECT_FALSE(is_mu_algebra(n));
  const PredicateReport g = has_one_and_half_generation(n);
  EXPECT_FALSE(g.verdict);
  EXPECT_TRUE(g.witness.has_value());
}

TEST(Predicates, MaximalDirect) {
  const LieAlgebra L = sl2(3);
  const SubalgebraLattice lat = SubalgebraLattice::build(L);
  for (NodeId a = 0; a < lat.size(); ++a) {
    for (NodeId b = 0; b < lat.size(); ++b) {
      if (lat.leq(a, b)) EXPECT_EQ(is_maximal_direct(L, lat.node(a), lat.node(b)), lat.is_maximal_in(a, b));
    }
  }
}

TEST(Predicates, ParsingAndGuards) {
  EXPECT_EQ(parse_predicate("sm"), Predicate::semi_modular);
  EXPECT_EQ(parse_predicate("semi_modular"), Predicate::semi_modular);
  EXPECT_EQ(parse_predicate("um"), Predicate::upper_modular);
  EXPECT_EQ(parse_predicate(predicate_name(Predicate::modular_star)), Predicate::modular_star);
  EXPECT_THROW(parse_predicate("bogus"), UsageError);
  EXPECT_THROW(is_quasi_ideal_bruteforce(LieAlgebra::abelian(5, 2), Subspace(5, 2)), ResourceError);
  const SubalgebraLattice lat = SubalgebraLattice::build(sl2(5));
  const Json j = report_to_json(is_modular(lat, 1));
  EXPECT_TRUE(j.contains("verdict"));
}
