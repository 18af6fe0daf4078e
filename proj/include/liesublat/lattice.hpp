#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "liesublat/lie_algebra.hpp"
#include "liesublat/subspace.hpp"

namespace liesublat {

using NodeId = std::uint32_t;

struct LatticeBuildOptions {
  std::uint64_t max_subspaces = kDefaultSubspaceBudget;
  /// 0 means hardware concurrency.
  unsigned threads = 0;
};

struct LatticeStats {
  std::uint64_t candidates = 0;  // subspaces tested for closure
  std::size_t nodes = 0;
  double seconds = 0.0;
  bool from_cache = false;
  std::vector<std::size_t> nodes_per_dim;
};

/// Every subalgebra of a Lie algebra, ordered by dimension and then by the
/// subspace enumeration order (pivot pattern, free-entry counter). Node 0 is
/// the zero subalgebra and the last node is L.
///
/// The lattice is immutable after construction. Query caches (joins, covers,
/// up-sets) are filled lazily under a lock, so concurrent readers are safe.
class SubalgebraLattice {
 public:
  static SubalgebraLattice build(const LieAlgebra& L, const LatticeBuildOptions& opts = {});
  /// Wraps an already known node list (from a cache). Validates closure,
  /// canonical form, uniqueness and ordering; throws CacheError otherwise.
  static SubalgebraLattice from_nodes(const LieAlgebra& L, std::vector<Subspace> nodes);

  SubalgebraLattice(SubalgebraLattice&&) noexcept;
  SubalgebraLattice& operator=(SubalgebraLattice&&) noexcept;
  ~SubalgebraLattice();

  const LieAlgebra& algebra() const noexcept { return algebra_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Subspace& node(NodeId id) const;
  const std::vector<Subspace>& nodes() const noexcept { return nodes_; }
  std::size_t dim(NodeId id) const { return node(id).dim(); }
  NodeId bottom() const noexcept { return 0; }
  NodeId top() const noexcept { return static_cast<NodeId>(nodes_.size() - 1); }
  /// Node ids [first, last) of the given dimension.
  std::pair<NodeId, NodeId> dim_range(std::size_t k) const;
  const LatticeStats& stats() const noexcept { return stats_; }
  void mark_from_cache() noexcept { stats_.from_cache = true; }

  std::optional<NodeId> find(const Subspace& s) const;
  /// Throws UsageError if s is not a subalgebra of this lattice's algebra.
  NodeId id_of(const Subspace& s) const;

  /// a is contained in b
  bool leq(NodeId a, NodeId b) const;
  NodeId join(NodeId a, NodeId b) const;
  NodeId meet(NodeId a, NodeId b) const;
  /// <a, x>
  NodeId join_vector(NodeId a, const FqVector& x) const;

  /// a is a maximal subalgebra of b. Throws UsageError unless a is inside b.
  bool is_maximal_in(NodeId a, NodeId b) const;
  /// b covers a; the same relation as is_maximal_in(a, b).
  bool covers(NodeId a, NodeId b) const { return is_maximal_in(a, b); }
  /// Nodes covering a, ascending id.
  const std::vector<NodeId>& upper_covers(NodeId a) const;
  /// Maximal subalgebras of b, ascending id.
  const std::vector<NodeId>& lower_covers(NodeId b) const;
  /// Nodes containing a (a included), ascending id.
  const std::vector<NodeId>& up_set(NodeId a) const;
  /// Nodes contained in b (b included), ascending id.
  const std::vector<NodeId>& down_set(NodeId b) const;

  std::vector<NodeId> maximal_subalgebras() const { return lower_covers(top()); }
  /// Intersection of all maximal subalgebras. L must be nonzero.
  NodeId frattini() const;

  /// Calls f(c) for every node with a <= c <= b, in ascending id order.
  template <class F>
  void for_each_between(NodeId a, NodeId b, F&& f) const {
    all_between(a, b, [&](NodeId c) {
      f(c);
      return true;
    });
  }
  /// Like for_each_between but stops at the first c with f(c) false, and
  /// returns false in that case.
  template <class F>
  bool all_between(NodeId a, NodeId b, F&& f) const;
  std::size_t count_between(NodeId a, NodeId b) const;

  /// Lattices up to this many nodes carry containment bitsets, which make
  /// leq, join, meet and cover queries a few word operations each. Larger
  /// lattices fall back to linear algebra per query.
  static constexpr std::size_t kOrderIndexCap = 20000;
  bool has_order_index() const noexcept { return words_ != 0; }

 private:
  struct Caches;

  SubalgebraLattice(LieAlgebra L, std::vector<Subspace> nodes, LatticeStats stats);
  void check_id(NodeId id) const;
  void build_order_index();
  const std::uint64_t* up_bits(NodeId a) const noexcept { return up_.data() + std::size_t{a} * words_; }
  const std::uint64_t* down_bits(NodeId b) const noexcept { return down_.data() + std::size_t{b} * words_; }

  LieAlgebra algebra_;
  std::vector<Subspace> nodes_;
  std::vector<NodeId> dim_start_;  // size dim+2
  LatticeStats stats_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> up_, down_;
  std::unique_ptr<Caches> caches_;
};

template <class F>
bool SubalgebraLattice::all_between(NodeId a, NodeId b, F&& f) const {
  check_id(a);
  check_id(b);
  if (nodes_[a].dim() > nodes_[b].dim()) return true;
  if (!has_order_index()) {
    for (NodeId c : up_set(a)) {
      if (leq(c, b) && !f(c)) return false;
    }
    return true;
  }
  const std::uint64_t* u = up_bits(a);
  const std::uint64_t* d = down_bits(b);
  const std::size_t w0 = dim_start_[nodes_[a].dim()] / 64;
  const std::size_t w1 = (dim_start_[nodes_[b].dim() + 1] + 63) / 64;
  for (std::size_t w = w0; w < w1; ++w) {
    std::uint64_t bits = u[w] & d[w];
    while (bits) {
      if (!f(static_cast<NodeId>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))))) return false;
      bits &= bits - 1;
    }
  }
  return true;
}

/// Subspace intersection done on packed rows; same result as subspace_meet.
Subspace fast_meet(const Subspace& a, const Subspace& b);

inline constexpr int kLatticeCacheVersion = 1;

/// Cache document: {"version", "algebra_sha256", "nodes": [[[digits]...]...]}.
void save_cache(const SubalgebraLattice& lat, const std::filesystem::path& path);
/// Throws CacheError on a version or algebra hash mismatch, or if the file is
/// unreadable or malformed.
SubalgebraLattice load_cache(const std::filesystem::path& path, const LieAlgebra& L);

/// Loads the cache if it matches, otherwise builds and (re)writes it.
SubalgebraLattice build_or_load(const LieAlgebra& L, const std::optional<std::filesystem::path>& cache,
                                const LatticeBuildOptions& opts = {});

}  // namespace liesublat
