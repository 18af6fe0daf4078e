#include "liesublat/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <fstream>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "liesublat/algebra_io.hpp"
#include "liesublat/errors.hpp"

namespace liesublat {

namespace {

constexpr std::size_t kJoinMemoCap = std::size_t{1} << 22;

std::size_t leading_lane(std::uint64_t w) noexcept { return static_cast<std::size_t>(std::countr_zero(w)) / 8; }

bool closed_under_bracket(const LieAlgebra& L, const Subspace& s) {
  for (std::size_t i = 0; i < s.dim(); ++i) {
    for (std::size_t j = i + 1; j < s.dim(); ++j) {
      if (!s.contains_word(L.bracket_word(s.row_word(i), s.row_word(j)))) return false;
    }
  }
  return true;
}

std::uint64_t to_u64(const BigInt& v) {
  return v > BigInt(UINT64_MAX) ? UINT64_MAX : static_cast<std::uint64_t>(v);
}

}  // namespace

Subspace fast_meet(const Subspace& a, const Subspace& b) {
  const std::size_t n = a.ambient_dim();
  const unsigned p = a.modulus();
  if (b.ambient_dim() != n || b.modulus() != p) throw UsageError("meet of subspaces from different spaces");
  Subspace out(n, p);
  // Row-reduce the images of a's rows in V/b, tracking combinations of a's rows.
  std::array<std::uint64_t, kMaxDim> img{}, combo{};
  std::array<std::size_t, kMaxDim> lead{};
  std::size_t stored = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    std::uint64_t r = b.reduce_word(a.row_word(i));
    std::uint64_t c = detail::with_lane(0, i, 1);
    for (std::size_t s = 0; s < stored; ++s) {
      const Residue f = detail::lane(r, lead[s]);
      if (f == 0) continue;
      const Residue nf = detail::neg(f, p);
      r = detail::lanes_axpy(r, nf, img[s], p);
      c = detail::lanes_axpy(c, nf, combo[s], p);
    }
    if (r == 0) {
      std::uint64_t v = 0;
      for (std::size_t j = 0; j <= i; ++j) {
        const Residue cj = detail::lane(c, j);
        if (cj != 0) v = detail::lanes_axpy(v, cj, a.row_word(j), p);
      }
      out.absorb_word(v);
      continue;
    }
    const std::size_t l = leading_lane(r);
    const Residue s = detail::inv_unchecked(detail::lane(r, l), p);
    img[stored] = detail::lanes_scale(r, s, p);
    combo[stored] = detail::lanes_scale(c, s, p);
    lead[stored] = l;
    ++stored;
  }
  return out;
}

struct SubalgebraLattice::Caches {
  std::unordered_map<Subspace, NodeId, SubspaceHash> index;
  std::mutex mu;
  std::unordered_map<std::uint64_t, NodeId> join_memo;
  std::vector<std::unique_ptr<const std::vector<NodeId>>> upper, lower, up, down;
};

SubalgebraLattice::SubalgebraLattice(LieAlgebra L, std::vector<Subspace> nodes, LatticeStats stats)
    : algebra_(std::move(L)), nodes_(std::move(nodes)), stats_(std::move(stats)), caches_(std::make_unique<Caches>()) {
  const std::size_t n = algebra_.dim();
  dim_start_.assign(n + 2, 0);
  for (const Subspace& s : nodes_) ++dim_start_[s.dim() + 1];
  for (std::size_t k = 1; k < dim_start_.size(); ++k) dim_start_[k] += dim_start_[k - 1];
  stats_.nodes = nodes_.size();
  stats_.nodes_per_dim.assign(n + 1, 0);
  for (std::size_t k = 0; k <= n; ++k) stats_.nodes_per_dim[k] = dim_start_[k + 1] - dim_start_[k];
  caches_->index.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) caches_->index.emplace(nodes_[i], static_cast<NodeId>(i));
  caches_->upper.resize(nodes_.size());
  caches_->lower.resize(nodes_.size());
  caches_->up.resize(nodes_.size());
  caches_->down.resize(nodes_.size());
  if (nodes_.size() <= kOrderIndexCap) build_order_index();
}

void SubalgebraLattice::build_order_index() {
  const std::size_t N = nodes_.size();
  const std::size_t words = (N + 63) / 64;
  std::vector<std::uint64_t> up(N * words, 0), down(N * words, 0);
  auto set = [words](std::vector<std::uint64_t>& m, std::size_t row, std::size_t col) {
    m[row * words + col / 64] |= std::uint64_t{1} << (col % 64);
  };
  // A node lies above a iff it contains every RREF row of a, so up(a) is the
  // intersection of the up-sets of the lines through a's rows.
  for (std::size_t c = 0; c < N; ++c) set(up, 0, c);
  const std::size_t lines_begin = dim_start_[1];
  const std::size_t lines_end = algebra_.dim() >= 1 ? dim_start_[2] : lines_begin;
  for (std::size_t l = lines_begin; l < lines_end; ++l) {
    const std::uint64_t w = nodes_[l].row_word(0);
    for (std::size_t c = lines_begin; c < N; ++c) {
      if (nodes_[c].contains_word(w)) set(up, l, c);
    }
  }
  for (std::size_t a = lines_end; a < N; ++a) {
    const Subspace& s = nodes_[a];
    std::uint64_t* dst = up.data() + a * words;
    for (std::size_t i = 0; i < s.dim(); ++i) {
      const std::uint64_t row = s.row_word(i);
      const NodeId l = caches_->index.at(Subspace::from_rref_words(s.ambient_dim(), s.modulus(), {&row, 1}));
      const std::uint64_t* src = up.data() + std::size_t{l} * words;
      if (i == 0) {
        std::copy(src, src + words, dst);
      } else {
        for (std::size_t w = 0; w < words; ++w) dst[w] &= src[w];
      }
    }
  }
  for (std::size_t a = 0; a < N; ++a) {
    const std::uint64_t* row = up.data() + a * words;
    for (std::size_t w = 0; w < words; ++w) {
      for (std::uint64_t bits = row[w]; bits; bits &= bits - 1) {
        set(down, w * 64 + static_cast<std::size_t>(std::countr_zero(bits)), a);
      }
    }
  }
  words_ = words;
  up_ = std::move(up);
  down_ = std::move(down);
}

std::size_t SubalgebraLattice::count_between(NodeId a, NodeId b) const {
  std::size_t count = 0;
  if (has_order_index()) {
    check_id(a);
    check_id(b);
    if (nodes_[a].dim() > nodes_[b].dim()) return 0;
    const std::uint64_t* u = up_bits(a);
    const std::uint64_t* d = down_bits(b);
    const std::size_t w0 = dim_start_[nodes_[a].dim()] / 64;
    const std::size_t w1 = (dim_start_[nodes_[b].dim() + 1] + 63) / 64;
    for (std::size_t w = w0; w < w1; ++w) count += static_cast<std::size_t>(std::popcount(u[w] & d[w]));
    return count;
  }
  for_each_between(a, b, [&](NodeId) { ++count; });
  return count;
}

SubalgebraLattice::SubalgebraLattice(SubalgebraLattice&&) noexcept = default;
SubalgebraLattice& SubalgebraLattice::operator=(SubalgebraLattice&&) noexcept = default;
SubalgebraLattice::~SubalgebraLattice() = default;

SubalgebraLattice SubalgebraLattice::build(const LieAlgebra& L, const LatticeBuildOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = L.dim();
  const unsigned p = L.prime();
  const BigInt total = subspace_count(n, p);
  if (total > BigInt(opts.max_subspaces)) {
    throw ResourceError("lattice of " + (L.name().empty() ? std::string("algebra") : L.name()) + " needs " +
                            total.str() + " subspaces, over the budget of " + std::to_string(opts.max_subspaces),
                        to_u64(total));
  }

  struct Job {
    std::vector<std::uint8_t> pivots;
    std::vector<Subspace> found;
    std::uint64_t tested = 0;
  };
  std::vector<Job> jobs;
  for (std::size_t k = 0; k <= n; ++k) {
    for (auto& pat : pivot_patterns(n, k)) jobs.push_back(Job{std::move(pat), {}, 0});
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next.fetch_add(1); j < jobs.size(); j = next.fetch_add(1)) {
      Job& job = jobs[j];
      for_each_subspace_with_pivots(n, p, job.pivots, [&](const Subspace& s) {
        ++job.tested;
        if (closed_under_bracket(L, s)) job.found.push_back(s);
      });
    }
  };
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  LatticeStats stats;
  std::vector<Subspace> nodes;
  for (Job& job : jobs) {
    stats.candidates += job.tested;
    nodes.insert(nodes.end(), job.found.begin(), job.found.end());
  }
  stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return SubalgebraLattice(L, std::move(nodes), std::move(stats));
}

SubalgebraLattice SubalgebraLattice::from_nodes(const LieAlgebra& L, std::vector<Subspace> nodes) {
  if (nodes.empty()) throw CacheError("cache holds no nodes");
  std::size_t last_dim = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Subspace& s = nodes[i];
    if (s.ambient_dim() != L.dim() || s.modulus() != L.prime()) throw CacheError("cache node has the wrong shape");
    const auto basis = s.basis();
    if (!(Subspace::span(basis, L.dim(), L.prime()) == s)) throw CacheError("cache node is not in canonical form");
    if (s.dim() < last_dim) throw CacheError("cache nodes are not ordered by dimension");
    last_dim = s.dim();
    if (!closed_under_bracket(L, s)) throw CacheError("cache node is not a subalgebra");
  }
  if (!nodes.front().is_zero() || !nodes.back().is_full()) throw CacheError("cache must start at 0 and end at L");
  // Every line is a subalgebra, so a complete cache lists all of them.
  const std::size_t lines = std::count_if(nodes.begin(), nodes.end(), [](const Subspace& s) { return s.dim() == 1; });
  if (BigInt(lines) != gaussian_binomial(L.dim(), std::min<std::size_t>(1, L.dim()), L.prime()) && L.dim() > 0) {
    throw CacheError("cache is missing one-dimensional subalgebras");
  }
  LatticeStats stats;
  SubalgebraLattice lat(L, std::move(nodes), std::move(stats));
  if (lat.caches_->index.size() != lat.nodes_.size()) throw CacheError("cache contains duplicate nodes");
  return lat;
}

void SubalgebraLattice::check_id(NodeId id) const {
  if (id >= nodes_.size()) throw UsageError("node id " + std::to_string(id) + " is not in the lattice");
}

const Subspace& SubalgebraLattice::node(NodeId id) const {
  check_id(id);
  return nodes_[id];
}

std::pair<NodeId, NodeId> SubalgebraLattice::dim_range(std::size_t k) const {
  if (k > algebra_.dim()) return {top() + 1, top() + 1};
  return {dim_start_[k], dim_start_[k + 1]};
}

std::optional<NodeId> SubalgebraLattice::find(const Subspace& s) const {
  auto it = caches_->index.find(s);
  if (it == caches_->index.end()) return std::nullopt;
  return it->second;
}

NodeId SubalgebraLattice::id_of(const Subspace& s) const {
  algebra_.check_space(s);
  auto id = find(s);
  if (!id) throw UsageError("subspace " + s.to_string() + " is not a subalgebra");
  return *id;
}

bool SubalgebraLattice::leq(NodeId a, NodeId b) const {
  check_id(a);
  check_id(b);
  if (has_order_index()) return (up_bits(a)[b / 64] >> (b % 64)) & 1;
  const Subspace& x = nodes_[a];
  const Subspace& y = nodes_[b];
  if (x.dim() > y.dim()) return false;
  if (x.dim() == y.dim()) return a == b;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (!y.contains_word(x.row_word(i))) return false;
  }
  return true;
}

NodeId SubalgebraLattice::join(NodeId a, NodeId b) const {
  if (leq(a, b)) return b;
  if (leq(b, a)) return a;
  if (has_order_index()) {
    // Least common upper bound: every common upper bound contains the join,
    // so the first one in dimension order is the join itself.
    const std::uint64_t* u = up_bits(a);
    const std::uint64_t* v = up_bits(b);
    for (std::size_t w = dim_start_[std::max(nodes_[a].dim(), nodes_[b].dim()) + 1] / 64; w < words_; ++w) {
      const std::uint64_t bits = u[w] & v[w];
      if (bits) return static_cast<NodeId>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
    }
    return top();
  }
  const std::uint64_t key = (std::uint64_t{std::min(a, b)} << 32) | std::max(a, b);
  {
    std::lock_guard lock(caches_->mu);
    auto it = caches_->join_memo.find(key);
    if (it != caches_->join_memo.end()) return it->second;
  }
  Subspace s = nodes_[a];
  const Subspace& t = nodes_[b];
  for (std::size_t i = 0; i < t.dim(); ++i) s.absorb_word(t.row_word(i));
  const NodeId out = *find(generated_subalgebra(algebra_, s));
  std::lock_guard lock(caches_->mu);
  if (caches_->join_memo.size() < kJoinMemoCap) caches_->join_memo.emplace(key, out);
  return out;
}

NodeId SubalgebraLattice::meet(NodeId a, NodeId b) const {
  if (leq(a, b)) return a;
  if (leq(b, a)) return b;
  if (has_order_index()) {
    const std::uint64_t* u = down_bits(a);
    const std::uint64_t* v = down_bits(b);
    for (std::size_t w = (dim_start_[std::min(nodes_[a].dim(), nodes_[b].dim())] + 63) / 64; w-- > 0;) {
      const std::uint64_t bits = u[w] & v[w];
      if (bits) return static_cast<NodeId>(w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(bits)));
    }
    return bottom();
  }
  return *find(fast_meet(nodes_[a], nodes_[b]));
}

NodeId SubalgebraLattice::join_vector(NodeId a, const FqVector& x) const {
  check_id(a);
  algebra_.check_vector(x);
  Subspace s = nodes_[a];
  if (!s.absorb_word(x.word())) return a;
  return *find(generated_subalgebra(algebra_, s));
}

namespace {

template <class Compute>
const std::vector<NodeId>& cached(std::mutex& mu, std::unique_ptr<const std::vector<NodeId>>& slot, Compute&& f) {
  {
    std::lock_guard lock(mu);
    if (slot) return *slot;
  }
  auto fresh = std::make_unique<const std::vector<NodeId>>(f());
  std::lock_guard lock(mu);
  if (!slot) slot = std::move(fresh);
  return *slot;
}

}  // namespace

const std::vector<NodeId>& SubalgebraLattice::up_set(NodeId a) const {
  check_id(a);
  return cached(caches_->mu, caches_->up[a], [&] {
    std::vector<NodeId> out{a};
    if (has_order_index()) {
      out.clear();
      for_each_between(a, top(), [&](NodeId c) { out.push_back(c); });
      return out;
    }
    for (NodeId c = dim_start_[nodes_[a].dim() + 1]; c < nodes_.size(); ++c) {
      if (leq(a, c)) out.push_back(c);
    }
    return out;
  });
}

const std::vector<NodeId>& SubalgebraLattice::down_set(NodeId b) const {
  check_id(b);
  return cached(caches_->mu, caches_->down[b], [&] {
    std::vector<NodeId> out;
    if (has_order_index()) {
      for_each_between(bottom(), b, [&](NodeId c) { out.push_back(c); });
      return out;
    }
    for (NodeId c = 0; c < dim_start_[nodes_[b].dim()]; ++c) {
      if (leq(c, b)) out.push_back(c);
    }
    out.push_back(b);
    return out;
  });
}

const std::vector<NodeId>& SubalgebraLattice::upper_covers(NodeId a) const {
  check_id(a);
  return cached(caches_->mu, caches_->upper[a], [&] {
    std::vector<NodeId> out;
    for (NodeId c : up_set(a)) {
      if (c == a) continue;
      const bool above_cover = std::any_of(out.begin(), out.end(), [&](NodeId m) { return leq(m, c); });
      if (!above_cover) out.push_back(c);
    }
    return out;
  });
}

const std::vector<NodeId>& SubalgebraLattice::lower_covers(NodeId b) const {
  check_id(b);
  return cached(caches_->mu, caches_->lower[b], [&] {
    const auto& down = down_set(b);
    std::vector<NodeId> out;
    for (auto it = down.rbegin(); it != down.rend(); ++it) {
      if (*it == b) continue;
      const bool below_cover = std::any_of(out.begin(), out.end(), [&](NodeId m) { return leq(*it, m); });
      if (!below_cover) out.push_back(*it);
    }
    std::sort(out.begin(), out.end());
    return out;
  });
}

bool SubalgebraLattice::is_maximal_in(NodeId a, NodeId b) const {
  if (!leq(a, b)) {
    throw UsageError("is_maximal_in: " + nodes_[a].to_string() + " is not contained in " + nodes_[b].to_string());
  }
  if (a == b) return false;
  if (nodes_[b].dim() == nodes_[a].dim() + 1) return true;
  if (has_order_index()) return count_between(a, b) == 2;
  const auto& covers = upper_covers(a);
  return std::binary_search(covers.begin(), covers.end(), b);
}

NodeId SubalgebraLattice::frattini() const {
  if (algebra_.dim() == 0) throw UsageError("frattini subalgebra of the zero algebra");
  NodeId acc = top();
  for (NodeId m : maximal_subalgebras()) acc = meet(acc, m);
  return acc;
}

// ---- cache --------------------------------------------------------------------

void save_cache(const SubalgebraLattice& lat, const std::filesystem::path& path) {
  Json nodes = Json::array();
  for (const Subspace& s : lat.nodes()) nodes.push_back(s.rows_as_digits());
  const Json doc{{"version", kLatticeCacheVersion},
                 {"algebra_sha256", algebra_sha256(lat.algebra())},
                 {"nodes", std::move(nodes)}};
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw CacheError("cannot write lattice cache " + tmp.string());
    out << doc.dump() << '\n';
    if (!out) throw CacheError("failed writing lattice cache " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

SubalgebraLattice load_cache(const std::filesystem::path& path, const LieAlgebra& L) {
  std::ifstream in(path);
  if (!in) throw CacheError("cannot open lattice cache " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw CacheError(std::string("malformed lattice cache: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("version") || !doc.contains("algebra_sha256") || !doc.contains("nodes")) {
    throw CacheError("lattice cache lacks version, algebra_sha256 or nodes");
  }
  if (doc["version"] != kLatticeCacheVersion) {
    throw CacheError("lattice cache version " + doc["version"].dump() + " (expected " +
                     std::to_string(kLatticeCacheVersion) + ")");
  }
  if (doc["algebra_sha256"] != algebra_sha256(L)) throw CacheError("lattice cache belongs to a different algebra");
  const std::size_t n = L.dim();
  const unsigned p = L.prime();
  std::vector<Subspace> nodes;
  try {
    for (const Json& jn : doc.at("nodes")) {
      std::vector<std::uint64_t> rows;
      for (const Json& jr : jn) {
        if (!jr.is_array() || jr.size() != n) throw CacheError("cache row has the wrong length");
        std::uint64_t w = 0;
        for (std::size_t c = 0; c < n; ++c) {
          const int d = jr[c].get<int>();
          if (d < 0 || d >= static_cast<int>(p)) throw CacheError("cache digit out of range");
          w = detail::with_lane(w, c, static_cast<Residue>(d));
        }
        rows.push_back(w);
      }
      if (rows.size() > n) throw CacheError("cache node has too many rows");
      nodes.push_back(Subspace::span(
          [&] {
            std::vector<FqVector> v;
            for (auto w : rows) v.push_back(FqVector::from_word(w, n, p));
            return v;
          }(),
          n, p));
      if (nodes.back().rows_as_digits() != jn.get<std::vector<std::vector<int>>>()) {
        throw CacheError("cache node is not in reduced row-echelon form");
      }
    }
  } catch (const Json::exception& e) {
    throw CacheError(std::string("malformed lattice cache: ") + e.what());
  }
  auto lat = SubalgebraLattice::from_nodes(L, std::move(nodes));
  lat.mark_from_cache();
  return lat;
}

SubalgebraLattice build_or_load(const LieAlgebra& L, const std::optional<std::filesystem::path>& cache,
                                const LatticeBuildOptions& opts) {
  if (cache && std::filesystem::exists(*cache)) {
    try {
      return load_cache(*cache, L);
    } catch (const CacheError&) {
      // stale or foreign cache: rebuild below
    }
  }
  auto lat = SubalgebraLattice::build(L, opts);
  if (cache) save_cache(lat, *cache);
  return lat;
}

}  // namespace liesublat
