#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "liesublat/catalog.hpp"
#include "liesublat/lattice.hpp"
#include "oracles.hpp"

using namespace liesublat;
namespace fs = std::filesystem;

namespace {

std::set<oracle::Space> node_sets(const SubalgebraLattice& lat) {
  std::set<oracle::Space> out;
  for (const Subspace& s : lat.nodes()) out.insert(oracle::of(s));
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp(const std::string& name) { return fs::temp_directory_path() / ("liesublat_" + name); }

}  // namespace

TEST(Lattice, FixtureCountsMatchOracle) {
  const SubalgebraLattice k = SubalgebraLattice::build(algebra_K());
  EXPECT_EQ(k.size(), 12u);
  const SubalgebraLattice s = SubalgebraLattice::build(sl2(3));
  EXPECT_EQ(s.size(), 19u);
  for (const LieAlgebra& L : {algebra_K(), sl2(3), heisenberg(3), nonabelian2(5), random_solvable(3, 3, 4),
                              random_solvable(4, 2, 8), upper_triangular(2, 3)}) {
    const SubalgebraLattice lat = SubalgebraLattice::build(L);
    const oracle::Table t(L);
    const auto expect = oracle::all_subalgebras(t);
    EXPECT_EQ(node_sets(lat), std::set<oracle::Space>(expect.begin(), expect.end())) << L.name();
  }
}

TEST(Lattice, KPlanesContainC) {
  const LieAlgebra K = algebra_K();
  const SubalgebraLattice lat = SubalgebraLattice::build(K);
  const auto [a, b] = lat.dim_range(2);
  EXPECT_EQ(b - a, 3u);
  for (NodeId id = a; id < b; ++id) EXPECT_TRUE(lat.node(id).contains(K.basis_vector(2)));
  EXPECT_EQ(lat.node(lat.frattini()), Subspace::span(std::vector{K.basis_vector(2)}, 3, 2));
}

TEST(Lattice, OrderingAndBasics) {
  const SubalgebraLattice lat = SubalgebraLattice::build(sl2(5));
  EXPECT_TRUE(lat.node(lat.bottom()).is_zero());
  EXPECT_TRUE(lat.node(lat.top()).is_full());
  for (NodeId i = 1; i < lat.size(); ++i) EXPECT_LE(lat.dim(i - 1), lat.dim(i));
  for (NodeId i = 0; i < lat.size(); ++i) EXPECT_EQ(lat.id_of(lat.node(i)), i);
  EXPECT_THROW(lat.id_of(Subspace::span(std::vector{FqVector({0, 1, 1}, 5), FqVector({1, 0, 0}, 5)}, 3, 5)),
               UsageError);
  EXPECT_THROW(lat.node(static_cast<NodeId>(lat.size())), UsageError);
  EXPECT_EQ(lat.stats().nodes, lat.size());
}

TEST(Lattice, JoinMeetMatchLinearAlgebra) {
  for (const LieAlgebra& L : {sl2(5), random_solvable(4, 3, 7), algebra_K(), witt(5)}) {
    const SubalgebraLattice lat = SubalgebraLattice::build(L);
    ASSERT_TRUE(lat.has_order_index());
    const NodeId step = lat.size() > 200 ? 7 : 1;
    for (NodeId a = 0; a < lat.size(); a += step) {
      for (NodeId b = 0; b < lat.size(); ++b) {
        const Subspace& A = lat.node(a);
        const Subspace& B = lat.node(b);
        ASSERT_EQ(lat.node(lat.join(a, b)), generated_subalgebra(L, subspace_sum(A, B)));
        ASSERT_EQ(lat.node(lat.meet(a, b)), subspace_meet(A, B));
        ASSERT_EQ(lat.leq(a, b), A.is_subset_of(B));
      }
    }
  }
}

TEST(Lattice, MaximalMatchesNoIntermediateScan) {
  for (const LieAlgebra& L : {algebra_K(), sl2(3), heisenberg(2)}) {
    const SubalgebraLattice lat = SubalgebraLattice::build(L);
    for (NodeId a = 0; a < lat.size(); ++a) {
      for (NodeId b = 0; b < lat.size(); ++b) {
        if (!lat.leq(a, b)) {
          EXPECT_THROW(lat.is_maximal_in(a, b), UsageError);
          continue;
        }
        bool none = a != b;
        for (NodeId c = 0; c < lat.size(); ++c) {
          if (c != a && c != b && lat.node(a).is_subset_of(lat.node(c)) && lat.node(c).is_subset_of(lat.node(b))) {
            none = false;
          }
        }
        EXPECT_EQ(lat.is_maximal_in(a, b), none);
        const auto& up = lat.upper_covers(a);
        EXPECT_EQ(std::find(up.begin(), up.end(), b) != up.end(), none);
        const auto& down = lat.lower_covers(b);
        EXPECT_EQ(std::find(down.begin(), down.end(), a) != down.end(), none);
      }
    }
  }
}

TEST(Lattice, IntervalsAndSets) {
  const SubalgebraLattice lat = SubalgebraLattice::build(sl2(5));
  for (NodeId a = 0; a < lat.size(); ++a) {
    std::vector<NodeId> seen;
    lat.for_each_between(a, lat.top(), [&](NodeId c) { seen.push_back(c); });
    EXPECT_EQ(seen, lat.up_set(a));
    EXPECT_EQ(lat.count_between(a, lat.top()), seen.size());
    std::vector<NodeId> below;
    lat.for_each_between(lat.bottom(), a, [&](NodeId c) { below.push_back(c); });
    EXPECT_EQ(below, lat.down_set(a));
  }
  std::size_t visits = 0;
  EXPECT_FALSE(lat.all_between(0, lat.top(), [&](NodeId) { return ++visits < 3; }));
  EXPECT_EQ(visits, 3u);
}

TEST(Lattice, FallbackWithoutOrderIndex) {
  // GF(3)^6 abelian: 56632 subalgebras, above the index cap.
  const LieAlgebra L = LieAlgebra::abelian(6, 3);
  const SubalgebraLattice lat = SubalgebraLattice::build(L);
  EXPECT_EQ(BigInt(lat.size()), subspace_count(6, 3));
  ASSERT_FALSE(lat.has_order_index());
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const NodeId a = static_cast<NodeId>(rng() % lat.size()), b = static_cast<NodeId>(rng() % lat.size());
    EXPECT_EQ(lat.node(lat.join(a, b)), subspace_sum(lat.node(a), lat.node(b)));
    EXPECT_EQ(lat.node(lat.meet(a, b)), subspace_meet(lat.node(a), lat.node(b)));
    EXPECT_EQ(lat.leq(a, b), lat.node(a).is_subset_of(lat.node(b)));
  }
  const auto [l0, l1] = lat.dim_range(1);
  EXPECT_TRUE(lat.is_maximal_in(0, l0));
  EXPECT_FALSE(lat.is_maximal_in(0, lat.top()));
  EXPECT_EQ(lat.upper_covers(l1 - 1).size(), (BigInt(243 - 1) / 2).convert_to<std::size_t>());
}

TEST(Lattice, BudgetAndThreads) {
  EXPECT_THROW(SubalgebraLattice::build(psl3_char3(), {1000, 1}), ResourceError);
  const SubalgebraLattice one = SubalgebraLattice::build(witt(5), {kDefaultSubspaceBudget, 1});
  const SubalgebraLattice four = SubalgebraLattice::build(witt(5), {kDefaultSubspaceBudget, 4});
  EXPECT_EQ(one.nodes(), four.nodes());
}

TEST(Lattice, CacheRoundTripIsBitExact) {
  const LieAlgebra L = sl2(7);
  const fs::path a = temp("cache_a.json"), b = temp("cache_b.json");
  const SubalgebraLattice lat = SubalgebraLattice::build(L);
  save_cache(lat, a);
  const SubalgebraLattice back = load_cache(a, L);
  EXPECT_EQ(back.nodes(), lat.nodes());
  EXPECT_TRUE(back.stats().from_cache);
  save_cache(back, b);
  EXPECT_EQ(slurp(a), slurp(b));
  fs::remove(a);
  fs::remove(b);
}

TEST(Lattice, CacheRejectsMismatches) {
  const fs::path path = temp("cache_bad.json");
  save_cache(SubalgebraLattice::build(sl2(5)), path);
  EXPECT_THROW(load_cache(path, sl2(7)), CacheError);

  Json doc = Json::parse(slurp(path));
  doc["version"] = kLatticeCacheVersion + 1;
  std::ofstream(path) << doc.dump();
  EXPECT_THROW(load_cache(path, sl2(5)), CacheError);

  doc["version"] = kLatticeCacheVersion;
  Json dropped = doc;
  dropped["nodes"].erase(dropped["nodes"].begin() + 1);
  std::ofstream(path) << dropped.dump();
  EXPECT_THROW(load_cache(path, sl2(5)), CacheError);

  doc["nodes"][1][0][0] = 2;  // row no longer starts with a pivot 1
  std::ofstream(path) << doc.dump();
  EXPECT_THROW(load_cache(path, sl2(5)), CacheError);

  std::ofstream(path) << "garbage";
  EXPECT_THROW(load_cache(path, sl2(5)), CacheError);
  // A bad cache is rebuilt and replaced.
  const SubalgebraLattice rebuilt = build_or_load(sl2(5), path);
  EXPECT_FALSE(rebuilt.stats().from_cache);
  EXPECT_TRUE(build_or_load(sl2(5), path).stats().from_cache);
  fs::remove(path);
  EXPECT_THROW(load_cache(path, sl2(5)), CacheError);
}

TEST(Lattice, FromNodesValidates) {
  const LieAlgebra L = sl2(3);
  std::vector<Subspace> nodes = SubalgebraLattice::build(L).nodes();
  std::swap(nodes[1], nodes[nodes.size() - 2]);
  EXPECT_THROW(SubalgebraLattice::from_nodes(L, nodes), CacheError);
  std::vector<Subspace> bad{L.zero_space(), Subspace::span(std::vector{FqVector({1, 1, 0}, 3), FqVector({0, 0, 1}, 3)}, 3, 3),
                            L.whole()};
  EXPECT_THROW(SubalgebraLattice::from_nodes(L, bad), CacheError);
}
