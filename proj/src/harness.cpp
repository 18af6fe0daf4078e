#include "liesublat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "liesublat/catalog.hpp"
#include "liesublat/errors.hpp"
#include "liesublat/predicates.hpp"

namespace liesublat {

Json SuiteConfig::to_json() const {
  Json j;
  j["seed"] = seed;
  j["random_per_pair"] = random_per_pair;
  j["random_max_dim"] = random_max_dim;
  j["random_primes"] = random_primes;
  j["exhaustive_max_dim"] = exhaustive_max_dim;
  j["exhaustive_primes"] = exhaustive_primes;
  j["include_psl3"] = include_psl3;
  j["max_subspaces"] = max_subspaces;
  return j;
}

std::string status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::reported: return "reported";
  }
  return "?";
}

bool SuiteReport::any_failed() const {
  return std::any_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.status == Status::fail; });
}

std::filesystem::path default_cache_dir() {
  if (const char* d = std::getenv("LIESUBLAT_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "liesublat";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "liesublat";
  return std::filesystem::temp_directory_path() / "liesublat";
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Entry {
  LieAlgebra algebra;
  std::string origin;
  bool solvable;
};

void add(std::vector<Entry>& out, LieAlgebra L, const std::string& origin) {
  const bool s = is_solvable(L);
  out.push_back({std::move(L), origin, s});
}

void add_catalog_solvables(std::vector<Entry>& out) {
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    add(out, LieAlgebra::abelian(1, p, "abelian(1," + std::to_string(p) + ")"), "catalog");
    add(out, LieAlgebra::abelian(2, p, "abelian(2," + std::to_string(p) + ")"), "catalog");
    add(out, LieAlgebra::abelian(3, p, "abelian(3," + std::to_string(p) + ")"), "catalog");
    add(out, nonabelian2(p), "catalog");
    add(out, heisenberg(p), "catalog");
    add(out, almost_abelian(3, p), "catalog");
    add(out, almost_abelian(4, p), "catalog");
    add(out, upper_triangular(2, p), "catalog");
  }
  add(out, upper_triangular(3, 2), "catalog");
  add(out, upper_triangular(3, 3), "catalog");
  add(out, strictly_upper(4, 2), "catalog");
  add(out, almost_abelian(5, 3), "catalog");
}

void add_structures(std::vector<Entry>& out, const SuiteConfig& c, bool want_solvable) {
  for (std::size_t d = 1; d <= c.exhaustive_max_dim; ++d) {
    for (unsigned p : c.exhaustive_primes) {
      enumerate_structures(d, p, [&](const LieAlgebra& L) {
        if (is_solvable(L) == want_solvable) out.push_back({L, "enumerated", want_solvable});
      });
    }
  }
}

void add_random(std::vector<Entry>& out, const SuiteConfig& c) {
  for (std::size_t d = 1; d <= c.random_max_dim; ++d) {
    for (unsigned p : c.random_primes) {
      for (std::size_t i = 0; i < c.random_per_pair; ++i) add(out, random_solvable(d, p, c.seed + i), "random");
    }
  }
}

std::vector<Entry> solvable_universe(const SuiteConfig& c) {
  std::vector<Entry> out;
  add_catalog_solvables(out);
  add_structures(out, c, true);
  add_random(out, c);
  return out;
}

void add_nonsolvable_fixtures(std::vector<Entry>& out, const SuiteConfig& c) {
  add(out, algebra_K(), "fixture");
  add(out, direct_sum(algebra_K(), LieAlgebra::abelian(1, 2), "K+F"), "fixture");
  for (unsigned p : {3u, 5u, 7u}) add(out, sl2(p), "fixture");
  add(out, direct_sum(sl2(3), LieAlgebra::abelian(1, 3), "sl2(3)+F"), "fixture");
  add(out, direct_sum(sl2(5), LieAlgebra::abelian(1, 5), "sl2(5)+F"), "fixture");
  add(out, direct_sum(sl2(7), LieAlgebra::abelian(1, 7), "sl2(7)+F"), "fixture");
  add(out, witt(5), "fixture");
  if (c.include_psl3) add(out, psl3_char3(), "fixture");
}

std::vector<Entry> full_universe(const SuiteConfig& c) {
  std::vector<Entry> out = solvable_universe(c);
  add_structures(out, c, false);
  add_nonsolvable_fixtures(out, c);
  return out;
}

Json describe_universe(const std::vector<Entry>& u, const SuiteConfig& c, const std::string& text) {
  Json j;
  j["description"] = text;
  j["algebras"] = u.size();
  Json by = Json::object();
  std::size_t solv = 0;
  for (const Entry& e : u) {
    by[e.origin] = by.value(e.origin, 0) + 1;
    if (e.solvable) ++solv;
  }
  j["by_origin"] = by;
  j["solvable"] = solv;
  j["random_seeds"] = {{"first", c.seed}, {"count", c.random_per_pair}};
  j["config"] = c.to_json();
  return j;
}

// ---- tallies --------------------------------------------------------------------

struct Tally {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  Json witness;

  template <class W>
  void record(bool ok, W&& make_witness) {
    ++checked;
    if (!ok && violations++ == 0) witness = make_witness();
  }
  void merge(const Tally& o) {
    if (violations == 0 && o.violations > 0) witness = o.witness;
    checked += o.checked;
    violations += o.violations;
  }
};

using Tallies = std::map<std::string, Tally>;

Json rows(const Subspace& s) { return s.rows_as_digits(); }

Json instance(const LieAlgebra& L, const Subspace& u, Json predicate = nullptr, Json extra = nullptr) {
  Json w;
  w["algebra"] = algebra_to_json(L);
  w["subalgebra"] = rows(u);
  w["predicate"] = std::move(predicate);
  if (!extra.is_null()) w["detail"] = std::move(extra);
  return w;
}

struct ClaimSpec {
  std::string id;
  std::string statement;
  bool asserted = true;
};

struct Outcome {
  Tallies tallies;
  double lattice_seconds = 0;
  double scan_seconds = 0;
  std::uint64_t candidates = 0;
  std::optional<std::string> resource_error;
};

struct Budget {
  Clock::time_point start = Clock::now();
  double limit = 0;
  bool expired() const { return limit > 0 && since(start) > limit; }
};

SubalgebraLattice lattice_for(const LieAlgebra& L, const SuiteConfig& c, unsigned threads) {
  LatticeBuildOptions opts{c.max_subspaces, threads};
  std::optional<std::filesystem::path> path;
  if (c.cache_dir && subspace_count(L.dim(), L.prime()) > SuiteConfig::kCacheThreshold) {
    std::filesystem::create_directories(*c.cache_dir);
    path = *c.cache_dir / (algebra_sha256(L) + ".lat.json");
  }
  return build_or_load(L, path, opts);
}

using PerAlgebra = std::function<void(const Entry&, const SubalgebraLattice&, Tallies&)>;

// Runs fn over the universe on a worker pool; outcomes come back in universe
// order so merging them is deterministic regardless of scheduling.
std::vector<std::optional<Outcome>> run_over(const std::vector<Entry>& universe, const SuiteConfig& c,
                                             const Budget& budget, const PerAlgebra& fn) {
  std::vector<std::optional<Outcome>> results(universe.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(c.threads ? c.threads : hw, std::max<std::size_t>(universe.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= universe.size()) return;
      if (budget.expired()) continue;
      Outcome out;
      try {
        const auto t0 = Clock::now();
        // Nested parallelism only helps when the pool itself is idle.
        SubalgebraLattice lat = lattice_for(universe[i].algebra, c, workers == 1 ? c.threads : 1);
        out.lattice_seconds = since(t0);
        out.candidates = lat.stats().candidates;
        const auto t1 = Clock::now();
        fn(universe[i], lat, out.tallies);
        out.scan_seconds = since(t1);
      } catch (const ResourceError& e) {
        out.resource_error = universe[i].algebra.name() + ": " + e.what();
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
      results[i] = std::move(out);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

class SuiteBuilder {
 public:
  SuiteBuilder(std::string name, const SuiteConfig& c) : config_(c) {
    report_.suite = std::move(name);
    budget_.limit = c.time_budget_secs;
  }

  void claim(std::string id, std::string statement, bool asserted = true) {
    specs_.push_back({std::move(id), std::move(statement), asserted});
  }
  Tally& tally(const std::string& id) { return tallies_[id]; }
  void note(const std::string& id, std::string details) { notes_[id] = std::move(details); }
  void timing(std::string phase, double secs) { report_.timings.emplace_back(std::move(phase), secs); }
  const Budget& budget() const { return budget_; }
  const SuiteConfig& config() const { return config_; }

  void truncate(const std::string& why) {
    if (!report_.truncated) report_.truncation = why;
    report_.truncated = true;
  }

  void set_universe(Json u) { report_.universe = std::move(u); }

  void scan(const std::vector<Entry>& universe, const PerAlgebra& fn) {
    const auto t0 = Clock::now();
    auto results = run_over(universe, config_, budget_, fn);
    double lat = 0, scans = 0;
    std::size_t done = 0;
    for (auto& r : results) {
      if (!r) continue;
      if (r->resource_error) {
        truncate("subspace budget exceeded for " + *r->resource_error);
        continue;
      }
      ++done;
      lat += r->lattice_seconds;
      scans += r->scan_seconds;
      for (auto& [id, t] : r->tallies) tallies_[id].merge(t);
    }
    if (done + resource_skips(results) < universe.size()) {
      truncate("time budget of " + std::to_string(config_.time_budget_secs) + " s exhausted after " +
               std::to_string(done) + " of " + std::to_string(universe.size()) + " algebras");
    }
    timing("lattices", lat);
    timing("predicate_scans", scans);
    timing("universe_wall", since(t0));
  }

  SuiteReport finish() {
    for (const ClaimSpec& s : specs_) {
      Assertion a;
      a.claim = s.id;
      a.statement = s.statement;
      const Tally& t = tallies_[s.id];
      a.checked = t.checked;
      a.violations = t.violations;
      a.witness = t.witness;
      if (s.asserted) {
        a.status = t.violations == 0 ? Status::pass : Status::fail;
      } else {
        a.status = Status::reported;
      }
      std::ostringstream d;
      d << t.checked << " checked, " << t.violations << (s.asserted ? " violations" : " exceptions");
      if (auto it = notes_.find(s.id); it != notes_.end()) d << "; " << it->second;
      a.details = d.str();
      report_.assertions.push_back(std::move(a));
    }
    timing("total", since(budget_.start));
    return std::move(report_);
  }

 private:
  static std::size_t resource_skips(const std::vector<std::optional<Outcome>>& rs) {
    return static_cast<std::size_t>(
        std::count_if(rs.begin(), rs.end(), [](const auto& r) { return r && r->resource_error; }));
  }

  SuiteConfig config_;
  SuiteReport report_;
  Budget budget_;
  std::vector<ClaimSpec> specs_;
  Tallies tallies_;
  std::map<std::string, std::string> notes_;
};

bool sm(const SubalgebraLattice& lat, NodeId u) { return is_semi_modular(lat, u).verdict; }

// ---- suites -------------------------------------------------------------------------

SuiteReport suite_solvable_equivalence(const SuiteConfig& c) {
  SuiteBuilder b("solvable-equivalence", c);
  b.claim("modular-iff-sm", "in a solvable algebra every subalgebra is modular exactly when it is sm");
  b.claim("sm-iff-quasi-ideal", "in a solvable algebra every subalgebra is sm exactly when it is a quasi-ideal");
  b.claim("modular-iff-quasi-ideal", "in a solvable algebra every subalgebra is modular exactly when it is a quasi-ideal");
  b.claim("quasi-ideal-oracle", "line-based quasi-ideal test agrees with the all-subspaces definition (dim <= 3)");
  b.claim("witnesses-replay", "every negative verdict carries a witness that re-derives it without the lattice");
  const auto u = solvable_universe(c);
  b.set_universe(describe_universe(u, c, "catalog solvables, every solvable structure tensor up to the exhaustive "
                                         "dimension, seeded random solvables"));
  b.scan(u, [](const Entry& e, const SubalgebraLattice& lat, Tallies& t) {
    const LieAlgebra& L = e.algebra;
    for (NodeId id = 0; id < lat.size(); ++id) {
      const PredicateReport m = is_modular(lat, id), s = is_semi_modular(lat, id), q = is_quasi_ideal(lat, id);
      auto both = [&](const PredicateReport& x, const PredicateReport& y) {
        return instance(L, lat.node(id), Json::array({report_to_json(x), report_to_json(y)}));
      };
      t["modular-iff-sm"].record(m.verdict == s.verdict, [&] { return both(m, s); });
      t["sm-iff-quasi-ideal"].record(s.verdict == q.verdict, [&] { return both(s, q); });
      t["modular-iff-quasi-ideal"].record(m.verdict == q.verdict, [&] { return both(m, q); });
      if (L.dim() <= 3) {
        const bool brute = is_quasi_ideal_bruteforce(L, lat.node(id));
        t["quasi-ideal-oracle"].record(brute == q.verdict, [&] {
          return instance(L, lat.node(id), report_to_json(q), {{"bruteforce", brute}});
        });
      }
      for (const PredicateReport* r : {&m, &s, &q}) {
        if (!r->verdict) {
          t["witnesses-replay"].record(witness_reproduces(L, *r),
                                       [&] { return instance(L, lat.node(id), report_to_json(*r)); });
        }
      }
    }
  });
  return b.finish();
}

SuiteReport suite_solvable_corefree(const SuiteConfig& c) {
  SuiteBuilder b("solvable-corefree", c);
  b.claim("corefree-sm-is-line-in-almost-abelian",
          "in a solvable algebra a nonzero core-free sm subalgebra is one-dimensional and the algebra is almost abelian");
  const auto u = solvable_universe(c);
  b.set_universe(describe_universe(u, c, "same universe as solvable-equivalence"));
  std::atomic<std::uint64_t> found{0};
  b.scan(u, [&](const Entry& e, const SubalgebraLattice& lat, Tallies& t) {
    const LieAlgebra& L = e.algebra;
    const bool aa = is_almost_abelian(L);
    for (NodeId id = 1; id < lat.top(); ++id) {
      if (!core(L, lat.node(id)).is_zero()) continue;
      const PredicateReport s = is_semi_modular(lat, id);
      if (!s.verdict) continue;
      ++found;
      t["corefree-sm-is-line-in-almost-abelian"].record(lat.dim(id) == 1 && aa, [&] {
        return instance(L, lat.node(id), report_to_json(s), {{"almost_abelian", aa}});
      });
    }
  });
  b.note("corefree-sm-is-line-in-almost-abelian", std::to_string(found.load()) + " core-free sm subalgebras found");
  return b.finish();
}

SuiteReport suite_psl3(const SuiteConfig& c) {
  SuiteBuilder b("psl3", c);
  b.claim("simple", "psl_3 over GF(3) is simple of dimension 7");
  b.claim("B-subalgebras", "each B_{i,j} = F e_0 + F e_i + F e_j with i, j of opposite sign is a 3-dimensional "
                           "subalgebra");
  b.claim("B-maximal-planes", "for opposite signs and j != -i, every maximal subalgebra of B_{i,j} is 2-dimensional");
  b.claim("B-maximal-planes-sl2", "every maximal subalgebra of B_{i,-i} (a copy of sl_2) is 2-dimensional; over GF(3) "
                                  "non-split tori give 1-dimensional maximal subalgebras",
          false);
  b.claim("no-maximal-sm", "no maximal subalgebra of psl_3 over GF(3) is sm");
  b.claim("witnesses-replay", "each failed sm verdict re-derives from its witness alone");
  const LieAlgebra L = psl3_char3();
  b.set_universe({{"description", "psl_3 over GF(3), signed basis e_-3..e_3"},
                  {"algebras", 1},
                  {"config", c.to_json()}});

  auto t0 = Clock::now();
  std::optional<SubalgebraLattice> lat;
  try {
    lat.emplace(lattice_for(L, c, c.threads));
  } catch (const ResourceError& e) {
    b.truncate(std::string("subspace budget exceeded: ") + e.what());
    return b.finish();
  }
  const double enum_secs = since(t0);
  b.timing("enumeration", enum_secs);
  b.timing("enumeration_from_cache", lat->stats().from_cache ? 1.0 : 0.0);
  if (!lat->stats().from_cache && enum_secs > 0) {
    b.timing("enumeration_candidates_per_sec", static_cast<double>(lat->stats().candidates) / enum_secs);
  }
  b.note("simple", std::to_string(lat->size()) + " subalgebras");

  t0 = Clock::now();
  b.tally("simple").record(is_simple(L) && L.dim() == 7, [&] { return instance(L, L.whole()); });
  for (int i = 1; i <= 3; ++i) {
    for (int j = -3; j <= -1; ++j) {
      const Subspace B = psl3_B(i, j);
      const auto id = lat->find(B);
      const Json ij = {{"i", i}, {"j", j}};
      b.tally("B-subalgebras").record(id && B.dim() == 3, [&] { return instance(L, B, nullptr, ij); });
      if (!id) continue;
      std::optional<NodeId> small;
      for (NodeId m : lat->lower_covers(*id)) {
        if (lat->dim(m) != 2 && !small) small = m;
      }
      b.tally(i == -j ? "B-maximal-planes-sl2" : "B-maximal-planes").record(!small, [&] {
        return instance(L, B, nullptr, {{"i", i}, {"j", j}, {"maximal_subalgebra", rows(lat->node(*small))}});
      });
    }
  }
  std::size_t maximal = 0;
  for (NodeId m : lat->maximal_subalgebras()) {
    if (b.budget().expired()) {
      b.truncate("time budget exhausted during predicate scans");
      break;
    }
    ++maximal;
    const PredicateReport r = is_semi_modular(*lat, m);
    b.tally("no-maximal-sm").record(!r.verdict, [&] { return instance(L, lat->node(m), report_to_json(r)); });
    if (!r.verdict) {
      b.tally("witnesses-replay").record(witness_reproduces(L, r),
                                        [&] { return instance(L, lat->node(m), report_to_json(r)); });
    }
  }
  b.note("no-maximal-sm", std::to_string(maximal) + " maximal subalgebras scanned");
  b.timing("predicate_scans", since(t0));
  return b.finish();
}

SuiteReport suite_k_example(const SuiteConfig& c) {
  SuiteBuilder b("K-example", c);
  b.claim("lattice-is-predicted", "K has exactly 12 subalgebras: 0, the 7 lines, the 3 planes containing c, and K");
  b.claim("unique-line-quasi-ideal", "Fc is the only one-dimensional quasi-ideal of K");
  b.claim("simple", "K is simple");
  b.claim("core-free", "the core of Fc is zero");
  b.claim("frattini", "Fc is the Frattini subalgebra of K");
  b.claim("pairs-generate", "two elements whose images in K/Fc are independent generate K");
  b.claim("pairs-generate-literal",
          "two independent elements outside Fc generate K (literal reading; pairs dependent modulo Fc generate a plane)",
          false);
  b.claim("sm-Fc", "Fc is sm in K", false);
  b.claim("not-almost-abelian", "K is not almost abelian");
  const LieAlgebra K = algebra_K();
  b.set_universe({{"description", "K over GF(2): [a,b] = c, [b,c] = b, [a,c] = a"}, {"algebras", 1}});
  const auto t0 = Clock::now();
  const SubalgebraLattice lat = SubalgebraLattice::build(K);
  b.timing("enumeration", since(t0));

  const FqVector a = K.basis_vector(0), bb = K.basis_vector(1), cc = K.basis_vector(2);
  const Subspace Fc = Subspace::span(std::vector{cc}, 3, 2);

  // Predicted node set, built without looking at brackets.
  std::vector<Subspace> predicted{K.zero_space()};
  for_each_line(K.whole(), [&](const FqVector& v) { predicted.push_back(Subspace::span(std::vector{v}, 3, 2)); });
  for (const FqVector& v : {a, bb, a + bb}) predicted.push_back(Subspace::span(std::vector{cc, v}, 3, 2));
  predicted.push_back(K.whole());
  std::sort(predicted.begin(), predicted.end());
  std::vector<Subspace> actual = lat.nodes();
  std::sort(actual.begin(), actual.end());
  b.tally("lattice-is-predicted").record(actual == predicted && lat.size() == 12, [&] {
    Json nodes = Json::array();
    for (const Subspace& s : lat.nodes()) nodes.push_back(rows(s));
    return instance(K, K.whole(), nullptr, {{"nodes", nodes}});
  });

  std::vector<NodeId> qi_lines;
  const auto [l0, l1] = lat.dim_range(1);
  for (NodeId id = l0; id < l1; ++id) {
    if (is_quasi_ideal(lat, id).verdict) qi_lines.push_back(id);
  }
  b.tally("unique-line-quasi-ideal").record(qi_lines.size() == 1 && lat.node(qi_lines[0]) == Fc, [&] {
    Json found = Json::array();
    for (NodeId id : qi_lines) found.push_back(rows(lat.node(id)));
    return instance(K, Fc, nullptr, {{"quasi_ideal_lines", found}});
  });
  b.tally("simple").record(is_simple(K), [&] { return instance(K, K.whole()); });
  b.tally("core-free").record(core(K, Fc).is_zero(), [&] { return instance(K, Fc); });
  b.tally("frattini").record(lat.node(lat.frattini()) == Fc,
                             [&] { return instance(K, lat.node(lat.frattini()), nullptr, "computed Frattini"); });

  const std::vector<FqVector> elems = enumerate_vectors(K.whole());
  for (const FqVector& x : elems) {
    for (const FqVector& y : elems) {
      if (x.word() >= y.word() || Fc.contains(x) || Fc.contains(y)) continue;
      const std::vector<FqVector> xy{x, y};
      if (Subspace::span(xy, 3, 2).dim() != 2) continue;
      const bool gen = generated_subalgebra(K, xy).is_full();
      const Json pair = {{"x", x.coords()}, {"y", y.coords()}};
      b.tally("pairs-generate-literal").record(gen, [&] { return instance(K, Subspace::span(xy, 3, 2), nullptr, pair); });
      if (Subspace::span(std::vector{x, y, cc}, 3, 2).is_full()) {
        b.tally("pairs-generate").record(gen, [&] { return instance(K, Subspace::span(xy, 3, 2), nullptr, pair); });
      }
    }
  }
  const PredicateReport s = is_semi_modular(lat, lat.id_of(Fc));
  b.tally("sm-Fc").record(s.verdict, [&] { return instance(K, Fc, report_to_json(s)); });
  b.note("sm-Fc", std::string("sm(Fc) = ") + (s.verdict ? "true" : "false"));
  if (s.verdict) b.tally("sm-Fc").witness = instance(K, Fc, report_to_json(s));
  b.tally("not-almost-abelian").record(!is_almost_abelian(K), [&] { return instance(K, K.whole()); });
  return b.finish();
}

SuiteReport suite_sm_implies_local(const SuiteConfig& c) {
  SuiteBuilder b("sm-implies-local", c);
  b.claim("maximal-in-join", "a proper sm subalgebra U is maximal in <U, x> for every x outside U");
  b.claim("modular-in-join", "a proper sm subalgebra U is modular in the subalgebra lattice of <U, x> for every x outside U");
  const auto u = full_universe(c);
  b.set_universe(describe_universe(u, c, "solvable universe plus non-solvable structure tensors and fixtures"));
  b.scan(u, [](const Entry& e, const SubalgebraLattice& lat, Tallies& t) {
    const LieAlgebra& L = e.algebra;
    const auto [l0, l1] = lat.dim_range(1);
    for (NodeId id = 0; id < lat.top(); ++id) {
      if (!sm(lat, id)) continue;
      std::map<NodeId, bool> modular_in;
      for (NodeId line = l0; line < l1; ++line) {
        if (lat.leq(line, id)) continue;
        const NodeId S = lat.join(id, line);
        auto detail = [&] { return Json{{"x", lat.node(line).row(0).coords()}, {"join", rows(lat.node(S))}}; };
        t["maximal-in-join"].record(lat.is_maximal_in(id, S), [&] { return instance(L, lat.node(id), nullptr, detail()); });
        auto it = modular_in.find(S);
        if (it == modular_in.end()) {
          const PredicateReport r = is_modular(lat, id, S);
          it = modular_in.emplace(S, r.verdict).first;
          t["modular-in-join"].record(r.verdict, [&] { return instance(L, lat.node(id), report_to_json(r), detail()); });
        }
      }
    }
  });
  return b.finish();
}

SuiteReport suite_quasi_ideal_sm(const SuiteConfig& c) {
  SuiteBuilder b("quasi-ideal-sm", c);
  b.claim("quasi-ideal-is-sm", "every quasi-ideal is sm");
  b.claim("ideal-is-quasi-ideal", "every ideal is a quasi-ideal");
  b.claim("modular-is-sm", "every modular subalgebra is sm");
  b.claim("quasi-ideal-is-modular-solvable", "in a solvable algebra every quasi-ideal is modular");
  b.claim("quasi-ideal-is-modular-nonsolvable", "in a non-solvable algebra every quasi-ideal is modular", false);
  const auto u = full_universe(c);
  b.set_universe(describe_universe(u, c, "solvable universe plus non-solvable structure tensors and fixtures"));
  b.scan(u, [](const Entry& e, const SubalgebraLattice& lat, Tallies& t) {
    const LieAlgebra& L = e.algebra;
    for (NodeId id = 0; id < lat.size(); ++id) {
      const PredicateReport q = is_quasi_ideal(lat, id), s = is_semi_modular(lat, id), m = is_modular(lat, id);
      if (q.verdict) {
        t["quasi-ideal-is-sm"].record(s.verdict, [&] { return instance(L, lat.node(id), report_to_json(s)); });
        t[e.solvable ? "quasi-ideal-is-modular-solvable" : "quasi-ideal-is-modular-nonsolvable"].record(
            m.verdict, [&] { return instance(L, lat.node(id), report_to_json(m)); });
      }
      if (is_ideal(L, lat.node(id))) {
        t["ideal-is-quasi-ideal"].record(q.verdict, [&] { return instance(L, lat.node(id), report_to_json(q)); });
      }
      if (m.verdict) {
        t["modular-is-sm"].record(s.verdict, [&] { return instance(L, lat.node(id), report_to_json(s)); });
      }
    }
  });
  return b.finish();
}

SuiteReport suite_strong_quasi_ideal(const SuiteConfig& c) {
  SuiteBuilder b("strong-quasi-ideal", c);
  b.claim("trichotomy", "a strong quasi-ideal is a strong ideal, or the algebra is almost abelian, or p = 2, the "
                        "algebra is isomorphic to K and the subalgebra is the image of Fc");
  b.claim("modular-star-quasi-ideal-is-strong", "a proper quasi-ideal that is modular* is a strong quasi-ideal");
  b.claim("K-branch", "in K, Fc is a strong quasi-ideal but not a strong ideal");
  const auto u = full_universe(c);
  b.set_universe(describe_universe(u, c, "solvable universe plus non-solvable structure tensors and fixtures"));
  const LieAlgebra K = algebra_K();
  std::atomic<std::uint64_t> k_branch{0};
  b.scan(u, [&](const Entry& e, const SubalgebraLattice& lat, Tallies& t) {
    const LieAlgebra& L = e.algebra;
    const bool aa = is_almost_abelian(L);
    std::optional<std::vector<Subspace>> fc_images;
    auto is_k_fc = [&](const Subspace& s) {
      if (L.prime() != 2 || L.dim() != 3 || s.dim() != 1) return false;
      if (!fc_images) {
        fc_images.emplace();
        for (const auto& phi : isomorphisms(K, L)) fc_images->push_back(Subspace::span(std::vector{phi[2]}, 3, 2));
      }
      return std::find(fc_images->begin(), fc_images->end(), s) != fc_images->end();
    };
    for (NodeId id = 0; id < lat.size(); ++id) {
      const PredicateReport sq = is_strong_quasi_ideal(lat, id);
      if (sq.verdict) {
        const PredicateReport si = is_strong_ideal(lat, id);
        const bool via_k = !si.verdict && !aa && is_k_fc(lat.node(id));
        if (via_k) ++k_branch;
        t["trichotomy"].record(si.verdict || aa || via_k, [&] {
          return instance(L, lat.node(id), report_to_json(si), {{"almost_abelian", aa}});
        });
      }
      if (id != lat.top() && is_quasi_ideal(lat, id).verdict && is_modular_star(lat, id).verdict) {
        t["modular-star-quasi-ideal-is-strong"].record(sq.verdict,
                                                       [&] { return instance(L, lat.node(id), report_to_json(sq)); });
      }
    }
  });
  const SubalgebraLattice lk = SubalgebraLattice::build(K);
  const NodeId fc = lk.id_of(Subspace::span(std::vector{K.basis_vector(2)}, 3, 2));
  const PredicateReport sq = is_strong_quasi_ideal(lk, fc), si = is_strong_ideal(lk, fc);
  b.tally("K-branch").record(sq.verdict && !si.verdict, [&] {
    return instance(K, lk.node(fc), Json::array({report_to_json(sq), report_to_json(si)}));
  });
  b.note("trichotomy", std::to_string(k_branch.load()) + " strong quasi-ideals settled by the K case");
  return b.finish();
}

bool scalar_case(const LieAlgebra& L, bool aa, const Subspace& sq, const FqVector& u) {
  if (!aa) return false;
  const auto c = scalar_action(L, u, sq);
  return c && *c != 0 && !sq.is_zero();
}

SuiteReport suite_sm_atoms(const SuiteConfig& c) {
  SuiteBuilder b("sm-atoms", c);
  b.claim("sm-atom-is-ideal-or-scalar", "for p in {5,7}, an sm line Fu is an ideal, or the algebra is almost abelian "
                                        "with ad u a nonzero scalar on L^2");
  b.claim("ideal-or-scalar-atom-is-sm", "for p in {5,7}, a line that is an ideal, or spanned by u acting as a nonzero "
                                        "scalar on L^2 of an almost abelian algebra, is sm");
  b.claim("no-mu-algebras", "no algebra in the universe is non-solvable with all proper subalgebras of dimension <= 1");
  b.claim("char-2-3-forward", "the same forward direction for p in {2,3}", false);
  b.claim("char-2-3-converse", "the same converse direction for p in {2,3}", false);
  b.claim("K-Fc-atom", "Fc in K is an sm line that is neither an ideal nor in the almost abelian case", false);
  auto u = full_universe(c);
  b.set_universe(describe_universe(u, c, "full universe; assertions use the algebras over GF(5) and GF(7), the "
                                         "GF(2) and GF(3) algebras are reported"));
  b.scan(u, [](const Entry& e, const SubalgebraLattice& lat, Tallies& t) {
    const LieAlgebra& L = e.algebra;
    t["no-mu-algebras"].record(!is_mu_algebra(lat), [&] { return instance(L, L.whole()); });
    const bool aa = is_almost_abelian(L);
    const bool big = L.prime() >= 5;
    const Subspace sq = bracket_spaces(L, L.whole(), L.whole());
    const auto [l0, l1] = lat.dim_range(1);
    for (NodeId id = l0; id < l1; ++id) {
      const FqVector x = lat.node(id).row(0);
      const bool ideal = is_ideal(L, lat.node(id));
      const bool scalar = scalar_case(L, aa, sq, x);
      const PredicateReport s = is_semi_modular(lat, id);
      auto detail = [&] { return Json{{"ideal", ideal}, {"almost_abelian", aa}, {"scalar_case", scalar}}; };
      if (s.verdict) {
        t[big ? "sm-atom-is-ideal-or-scalar" : "char-2-3-forward"].record(
            ideal || scalar, [&] { return instance(L, lat.node(id), report_to_json(s), detail()); });
      }
      if (ideal || scalar) {
        t[big ? "ideal-or-scalar-atom-is-sm" : "char-2-3-converse"].record(
            s.verdict, [&] { return instance(L, lat.node(id), report_to_json(s), detail()); });
      }
    }
  });
  const LieAlgebra K = algebra_K();
  const SubalgebraLattice lk = SubalgebraLattice::build(K);
  const Subspace Fc = Subspace::span(std::vector{K.basis_vector(2)}, 3, 2);
  const PredicateReport s = is_semi_modular(lk, lk.id_of(Fc));
  const bool outside = s.verdict && !is_ideal(K, Fc) && !is_almost_abelian(K);
  b.tally("K-Fc-atom").record(!outside, [&] { return instance(K, Fc, report_to_json(s)); });
  b.note("K-Fc-atom", std::string("sm(Fc) = ") + (s.verdict ? "true" : "false"));
  return b.finish();
}

SuiteReport suite_two_dim(const SuiteConfig& c) {
  SuiteBuilder b("two-dim", c);
  b.claim("corefree-plane-forces-sl2", "for p in {5,7}, an algebra with a 2-dimensional core-free sm subalgebra is "
                                       "3-dimensional split simple");
  b.claim("borel-sl2-5", "the Borel subalgebra Fh + Fe of sl_2 over GF(5) is sm and core-free");
  b.claim("borel-sl2-7", "the Borel subalgebra Fh + Fe of sl_2 over GF(7) is sm and core-free", false);
  std::vector<Entry> u;
  for (Entry& e : full_universe(c)) {
    if (e.algebra.prime() >= 5) u.push_back(std::move(e));
  }
  b.set_universe(describe_universe(u, c, "algebras of the full universe over GF(5) and GF(7)"));
  b.scan(u, [](const Entry& e, const SubalgebraLattice& lat, Tallies& t) {
    const LieAlgebra& L = e.algebra;
    if (L.dim() < 2) return;
    std::optional<bool> simple3;
    const auto [p0, p1] = lat.dim_range(2);
    for (NodeId id = p0; id < p1; ++id) {
      if (!core(L, lat.node(id)).is_zero()) continue;
      const PredicateReport s = is_semi_modular(lat, id);
      if (!s.verdict) continue;
      if (!simple3) simple3 = structural_flags(L).is_three_dim_split_simple;
      t["corefree-plane-forces-sl2"].record(*simple3, [&] { return instance(L, lat.node(id), report_to_json(s)); });
    }
  });
  for (unsigned p : {5u, 7u}) {
    const LieAlgebra S = sl2(p);
    const SubalgebraLattice lat = SubalgebraLattice::build(S);
    const Subspace borel = Subspace::span(std::vector{S.basis_vector(0), S.basis_vector(1)}, 3, p);
    const auto id = lat.find(borel);
    const PredicateReport s = id ? is_semi_modular(lat, *id) : PredicateReport{};
    const bool ok = id && s.verdict && core(S, borel).is_zero();
    b.tally(p == 5 ? "borel-sl2-5" : "borel-sl2-7").record(ok, [&] {
      return instance(S, borel, id ? report_to_json(s) : Json(nullptr));
    });
  }
  return b.finish();
}

SuiteReport suite_gen15(const SuiteConfig& c) {
  SuiteBuilder b("gen15", c);
  b.claim("sm-is-modular-maximal", "with one-and-a-half generation, every nonzero proper sm subalgebra is modular "
                                   "and maximal");
  b.claim("gen15-algebras", "algebras of the universe with one-and-a-half generation", false);
  b.claim("gen15-sl2", "sl_2 over GF(5) and GF(7) have one-and-a-half generation", false);
  const auto u = full_universe(c);
  b.set_universe(describe_universe(u, c, "solvable universe plus non-solvable structure tensors and fixtures"));
  b.scan(u, [](const Entry& e, const SubalgebraLattice& lat, Tallies& t) {
    const LieAlgebra& L = e.algebra;
    if (L.dim() == 0) return;
    const PredicateReport g = has_one_and_half_generation(lat);
    // Counts algebras with the property; "exceptions" are those without it.
    t["gen15-algebras"].record(g.verdict, [] { return Json(nullptr); });
    if (!g.verdict) return;
    for (NodeId id = 1; id < lat.top(); ++id) {
      const PredicateReport s = is_semi_modular(lat, id);
      if (!s.verdict) continue;
      const PredicateReport m = is_modular(lat, id);
      const bool maximal = lat.is_maximal_in(id, lat.top());
      t["sm-is-modular-maximal"].record(m.verdict && maximal, [&] {
        return instance(L, lat.node(id), report_to_json(m), {{"maximal", maximal}});
      });
    }
  });
  std::string verdicts;
  for (unsigned p : {5u, 7u}) {
    const LieAlgebra S = sl2(p);
    const PredicateReport g = has_one_and_half_generation(SubalgebraLattice::build(S));
    b.tally("gen15-sl2").record(g.verdict, [&] { return instance(S, S.whole(), report_to_json(g)); });
    verdicts += (verdicts.empty() ? "" : ", ") + S.name() + ": " + (g.verdict ? "yes" : "no");
  }
  b.note("gen15-sl2", verdicts);
  return b.finish();
}

SuiteReport suite_witt(const SuiteConfig& c) {
  SuiteBuilder b("witt", c);
  b.claim("L0-codim-1", "L_0 = span{e_0, ..., e_{p-2}} is a subalgebra of codimension 1 in W(1:1) over GF(5)");
  b.claim("L0-solvable", "L_0 is solvable");
  b.claim("L0-supersolvable", "L_0 is supersolvable");
  b.claim("modular-inventory", "modular subalgebras of W(1:1) over GF(5)", false);
  b.claim("sm-inventory", "sm subalgebras of W(1:1) over GF(5)", false);
  b.claim("L0-unique-proper-sm", "L_0 is the only nonzero proper sm subalgebra", false);
  const LieAlgebra W = witt(5);
  const Subspace L0 = witt_L0(5);
  b.set_universe({{"description", "W(1:1) over GF(5); GF(7) exceeds the default subspace budget"}, {"algebras", 1}});
  const auto t0 = Clock::now();
  const SubalgebraLattice lat = lattice_for(W, c, c.threads);
  b.timing("enumeration", since(t0));
  const auto t1 = Clock::now();
  const bool sub = is_subalgebra(W, L0);
  b.tally("L0-codim-1").record(sub && L0.dim() + 1 == W.dim(), [&] { return instance(W, L0); });
  b.tally("L0-solvable").record(sub && is_solvable(W, L0), [&] { return instance(W, L0); });
  b.tally("L0-supersolvable").record(sub && is_supersolvable(restrict_to(W, L0)), [&] { return instance(W, L0); });
  Json mods = Json::array(), sms = Json::array();
  bool unique = true;
  for (NodeId id = 0; id < lat.size(); ++id) {
    const bool m = is_modular(lat, id).verdict, s = is_semi_modular(lat, id).verdict;
    if (m) mods.push_back(rows(lat.node(id)));
    if (s) sms.push_back(rows(lat.node(id)));
    if (s && id != 0 && id != lat.top() && lat.node(id) != L0) unique = false;
  }
  b.tally("modular-inventory").record(true, [] { return Json(nullptr); });
  b.tally("modular-inventory").witness = instance(W, W.whole(), nullptr, {{"modular", mods}});
  b.tally("sm-inventory").record(true, [] { return Json(nullptr); });
  b.tally("sm-inventory").witness = instance(W, W.whole(), nullptr, {{"sm", sms}});
  b.note("modular-inventory", std::to_string(mods.size()) + " of " + std::to_string(lat.size()) + " nodes");
  b.note("sm-inventory", std::to_string(sms.size()) + " of " + std::to_string(lat.size()) + " nodes");
  b.tally("L0-unique-proper-sm").record(unique, [&] { return instance(W, L0); });
  b.note("L0-unique-proper-sm", unique ? "holds over GF(5)" : "fails over GF(5)");
  b.timing("predicate_scans", since(t1));
  return b.finish();
}

using SuiteFn = SuiteReport (*)(const SuiteConfig&);

struct SuiteDef {
  SuiteInfo info;
  SuiteFn fn;
};

const std::vector<SuiteDef>& definitions() {
  static const std::vector<SuiteDef> defs{
      {{"solvable-equivalence", "in a solvable algebra, modular, sm and quasi-ideal coincide",
        "solvable universe"},
       suite_solvable_equivalence},
      {{"solvable-corefree", "in a solvable algebra a core-free sm subalgebra is a line and the algebra is almost abelian",
        "solvable universe"},
       suite_solvable_corefree},
      {{"psl3", "psl_3 over GF(3) has no maximal sm subalgebra", "psl3_char3"}, suite_psl3},
      {{"K-example", "the characteristic-two algebra K and its quasi-ideal Fc", "K"}, suite_k_example},
      {{"sm-implies-local", "a proper sm subalgebra U is maximal and modular in <U, x>", "full universe"},
       suite_sm_implies_local},
      {{"quasi-ideal-sm", "quasi-ideals are sm; quasi-ideals are modular (asserted for solvable algebras only)",
        "full universe"},
       suite_quasi_ideal_sm},
      {{"strong-quasi-ideal", "strong quasi-ideal trichotomy; modular* quasi-ideals are strong", "full universe"},
       suite_strong_quasi_ideal},
      {{"sm-atoms", "sm lines are ideals or the almost abelian scalar case (p = 5, 7)", "full universe"},
       suite_sm_atoms},
      {{"two-dim", "a 2-dimensional core-free sm subalgebra forces sl_2 (p = 5, 7)", "full universe over GF(5), GF(7)"},
       suite_two_dim},
      {{"gen15", "with one-and-a-half generation every sm subalgebra is modular and maximal", "full universe"},
       suite_gen15},
      {{"witt", "L_0 in W(1:1) over GF(5); modular and sm inventory", "witt(5)"}, suite_witt},
  };
  return defs;
}

}  // namespace

const std::vector<SuiteInfo>& suite_registry() {
  static const std::vector<SuiteInfo> infos = [] {
    std::vector<SuiteInfo> v;
    for (const SuiteDef& d : definitions()) v.push_back(d.info);
    return v;
  }();
  return infos;
}

const std::vector<OmittedResult>& omitted_results() {
  static const std::vector<OmittedResult> v{
      {"if every two independent elements generate a 3-dimensional non-split simple algebra, two maximal "
       "subalgebras meet in zero",
       "non-split 3-dimensional simple algebras do not exist over finite fields, so the hypothesis is empty"},
      {"modular, sm and quasi-ideal coincide when the toral rank is at most one",
       "stated over algebraically closed fields"},
      {"modular, sm and quasi-ideal coincide for proper subalgebras of restricted algebras",
       "stated over algebraically closed fields"},
      {"every sm subalgebra of a form of a classical simple algebra is modular and maximal",
       "stated over infinite fields; the finite-field ingredient (one-and-a-half generation) is computed in gen15"},
      {"W(1:n)_0 is the unique sm subalgebra of W(1:n)",
       "stated over infinite perfect fields; the witt suite reports the GF(5) inventory instead"},
      {"a Cartan line of a rank one simple algebra has a generating mate",
       "stated over infinite fields; gen15 reports whether sl_2 over GF(5), GF(7) has the property"},
      {"an sm subalgebra with solvable core quotient of dimension > 1 is modular",
       "stated over algebraically closed fields of characteristic > 5"},
      {"a split sm subalgebra containing the normaliser of each nonzero subalgebra is modular",
       "rests on an external classification of modular subalgebras; split subalgebras are not implemented"},
  };
  return v;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
  for (const SuiteDef& d : definitions()) {
    if (d.info.name == name) {
      SuiteReport r = d.fn(config);
      r.statement = d.info.statement;
      return r;
    }
  }
  throw UsageError("unknown suite '" + name + "'");
}

Json report_to_json(const SuiteReport& r, bool include_timings) {
  Json j;
  j["suite"] = r.suite;
  j["statement"] = r.statement;
  j["universe"] = r.universe;
  Json as = Json::array();
  for (const Assertion& a : r.assertions) {
    as.push_back({{"claim", a.claim},
                  {"statement", a.statement},
                  {"status", status_name(a.status)},
                  {"checked", a.checked},
                  {"violations", a.violations},
                  {"details", a.details},
                  {"witness", a.witness}});
  }
  j["assertions"] = std::move(as);
  j["truncated"] = r.truncated;
  j["truncation"] = r.truncated ? Json(r.truncation) : Json(nullptr);
  if (include_timings) {
    Json t = Json::object();
    for (const auto& [k, v] : r.timings) t[k] = v;
    j["timings"] = std::move(t);
  }
  return j;
}

std::string report_digest(const SuiteReport& r) { return sha256_hex(report_to_json(r, false).dump()); }

int suite_exit_code(const SuiteReport& r) {
  if (r.any_failed()) return 1;
  if (r.truncated) return 2;
  return 0;
}

}  // namespace liesublat
