#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "liesublat/algebra_io.hpp"
#include "liesublat/catalog.hpp"
#include "liesublat/errors.hpp"
#include "liesublat/harness.hpp"
#include "liesublat/lattice.hpp"
#include "liesublat/predicates.hpp"

using namespace liesublat;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string algebra;
  std::string file;
  std::optional<unsigned> p;
  std::optional<std::size_t> dim;
  std::optional<std::uint64_t> seed;
  std::string predicates = "modular,um,lm,sm,quasi_ideal";
  std::optional<std::size_t> only_dim;
  std::string suite;
  std::string cache;
  bool json = false;
  bool list = false;
  bool stream = false;
  std::uint64_t max_subspaces = kDefaultSubspaceBudget;
  double time_budget = 600.0;
  unsigned threads = 0;
};

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

LieAlgebra load(const Options& o) {
  if (!o.file.empty()) return load_algebra_file(o.file);
  if (o.algebra.empty()) throw UsageError("give --algebra NAME or --file PATH");
  return catalog_build(o.algebra, CatalogParams{o.dim, o.p, o.seed});
}

std::optional<fs::path> cache_path(const Options& o, const LieAlgebra& L, bool default_on) {
  if (!o.cache.empty()) return fs::path(o.cache);
  if (!default_on) return std::nullopt;
  const fs::path dir = default_cache_dir();
  fs::create_directories(dir);
  return dir / (algebra_sha256(L) + ".lat.json");
}

Json stats_json(const SubalgebraLattice& lat, const std::optional<fs::path>& cache) {
  const LatticeStats& s = lat.stats();
  Json j;
  j["nodes"] = s.nodes;
  j["nodes_per_dim"] = s.nodes_per_dim;
  j["candidates"] = s.candidates;
  j["seconds"] = s.seconds;
  j["from_cache"] = s.from_cache;
  j["cache"] = cache ? Json(cache->string()) : Json(nullptr);
  return j;
}

Json flags_json(const SubalgebraLattice& lat) {
  const LieAlgebra& L = lat.algebra();
  const StructuralFlags f = structural_flags(L);
  Json j;
  j["solvable"] = is_solvable(L);
  j["nilpotent"] = is_nilpotent(L);
  j["abelian"] = L.is_abelian();
  j["simple"] = f.is_simple;
  j["almost_abelian"] = f.is_almost_abelian;
  j["supersolvable"] = f.is_supersolvable;
  j["three_dim_split_simple"] = f.is_three_dim_split_simple;
  j["mu_algebra"] = is_mu_algebra(lat);
  j["one_and_half_generation"] = L.dim() > 0 && has_one_and_half_generation(lat).verdict;
  return j;
}

std::vector<Predicate> parse_list(const std::string& s) {
  std::vector<Predicate> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_predicate(item));
  }
  return out;
}

int cmd_catalog(const Options& o) {
  if (!o.algebra.empty() || !o.file.empty()) {
    print(algebra_to_json(load(o)));
    return 0;
  }
  if (o.json) {
    Json j = Json::array();
    for (const CatalogEntry& e : catalog()) j.push_back({{"name", e.name}, {"params", e.params}, {"provenance", e.provenance}});
    print(j);
    return 0;
  }
  for (const CatalogEntry& e : catalog()) {
    std::cout << std::left << std::setw(18) << e.name << std::setw(36) << e.params << e.provenance << "\n";
  }
  return 0;
}

int cmd_lattice(const Options& o) {
  const LieAlgebra L = load(o);
  const auto cache = cache_path(o, L, true);
  const SubalgebraLattice lat = build_or_load(L, cache, {o.max_subspaces, o.threads});
  Json j;
  j["algebra"] = L.name();
  j["algebra_sha256"] = algebra_sha256(L);
  j["stats"] = stats_json(lat, cache);
  if (o.json) {
    print(j);
    return 0;
  }
  std::cout << L.name() << " (dim " << L.dim() << ", GF(" << L.prime() << "))\n"
            << "  subalgebras: " << lat.size() << "\n  per dimension:";
  for (std::size_t n : lat.stats().nodes_per_dim) std::cout << " " << n;
  std::cout << "\n  candidates: " << lat.stats().candidates << "\n  seconds: " << lat.stats().seconds
            << "\n  cache: " << (lat.stats().from_cache ? "hit " : "written ") << cache->string() << "\n"
            << "  sha256: " << algebra_sha256(L) << "\n";
  return 0;
}

int cmd_analyze(const Options& o) {
  const LieAlgebra L = load(o);
  const auto preds = parse_list(o.predicates);
  const auto cache = cache_path(o, L, false);
  const SubalgebraLattice lat = build_or_load(L, cache, {o.max_subspaces, o.threads});

  Json rows = Json::array();
  for (NodeId id = 0; id < lat.size(); ++id) {
    if (o.only_dim && lat.dim(id) != *o.only_dim) continue;
    Json verdicts = Json::object(), witnesses = Json::object();
    for (Predicate p : preds) {
      const PredicateReport r = evaluate(lat, id, p);
      verdicts[predicate_name(p)] = r.verdict;
      if (r.witness) witnesses[predicate_name(p)] = witness_to_json(*r.witness);
    }
    rows.push_back({{"id", id},
                    {"dim", lat.dim(id)},
                    {"basis", lat.node(id).rows_as_digits()},
                    {"verdicts", verdicts},
                    {"witnesses", witnesses}});
  }
  if (o.json) {
    Json j;
    j["algebra"] = algebra_to_json(L);
    j["algebra_sha256"] = algebra_sha256(L);
    j["structure"] = flags_json(lat);
    j["stats"] = stats_json(lat, cache);
    j["subalgebras"] = std::move(rows);
    print(j);
    return 0;
  }
  std::cout << L.name() << " (dim " << L.dim() << ", GF(" << L.prime() << ")): " << lat.size() << " subalgebras\n";
  for (const auto& [k, v] : flags_json(lat).items()) std::cout << "  " << k << ": " << (v.get<bool>() ? "yes" : "no") << "\n";
  for (const Json& r : rows) {
    std::cout << std::setw(6) << r["id"].get<NodeId>() << "  dim " << r["dim"].get<std::size_t>() << "  "
              << lat.node(r["id"].get<NodeId>()).to_string() << "\n       ";
    for (const auto& [k, v] : r["verdicts"].items()) std::cout << " " << k << "=" << (v.get<bool>() ? "yes" : "no");
    std::cout << "\n";
    for (const auto& [k, v] : r["witnesses"].items()) std::cout << "        not " << k << ": " << v.dump() << "\n";
  }
  return 0;
}

int cmd_verify(const Options& o) {
  if (o.list) {
    Json j;
    j["suites"] = Json::array();
    for (const SuiteInfo& s : suite_registry()) {
      j["suites"].push_back({{"name", s.name}, {"statement", s.statement}, {"universe", s.universe}});
    }
    j["omitted"] = Json::array();
    for (const OmittedResult& r : omitted_results()) j["omitted"].push_back({{"statement", r.statement}, {"reason", r.reason}});
    if (o.json) {
      print(j);
    } else {
      for (const SuiteInfo& s : suite_registry()) std::cout << std::left << std::setw(22) << s.name << s.statement << "\n";
      std::cout << "\nomitted:\n";
      for (const OmittedResult& r : omitted_results()) std::cout << "  " << r.statement << "\n    (" << r.reason << ")\n";
    }
    return 0;
  }
  if (o.suite.empty()) throw UsageError("give --suite NAME (or --list)");
  SuiteConfig c;
  if (o.seed) c.seed = *o.seed;
  c.time_budget_secs = o.time_budget;
  c.max_subspaces = o.max_subspaces;
  c.threads = o.threads;
  c.cache_dir = o.cache.empty() ? default_cache_dir() : fs::path(o.cache);
  const SuiteReport r = run_suite(o.suite, c);
  if (o.json) {
    Json j = report_to_json(r);
    j["digest"] = report_digest(r);
    print(j);
  } else {
    std::cout << r.suite << ": " << r.statement << "\n";
    for (const Assertion& a : r.assertions) {
      std::cout << "  [" << status_name(a.status) << "] " << a.claim << ": " << a.details << "\n";
      if (a.status == Status::fail) std::cout << "    witness: " << a.witness.dump() << "\n";
    }
    if (r.truncated) std::cout << "  truncated: " << r.truncation << "\n";
    for (const auto& [k, v] : r.timings) std::cout << "  time " << k << ": " << v << "\n";
    std::cout << "  digest: " << report_digest(r) << "\n";
  }
  return suite_exit_code(r);
}

int cmd_enumerate(const Options& o) {
  if (!o.dim || !o.p) throw UsageError("enumerate needs --dim and --p");
  std::uint64_t solvable = 0, nilpotent = 0, abelian = 0;
  const std::uint64_t valid = enumerate_structures(*o.dim, *o.p, [&](const LieAlgebra& L) {
    if (is_solvable(L)) ++solvable;
    if (is_nilpotent(L)) ++nilpotent;
    if (L.is_abelian()) ++abelian;
    if (o.stream) std::cout << algebra_to_json(L).dump() << "\n";
  });
  const std::size_t pairs = *o.dim * (*o.dim - 1) / 2;
  std::uint64_t tensors = 1;
  for (std::size_t i = 0; i < pairs * *o.dim; ++i) tensors *= *o.p;
  Json j = {{"dim", *o.dim}, {"p", *o.p}, {"tensors", tensors}, {"jacobi_valid", valid},
            {"solvable", solvable}, {"nilpotent", nilpotent}, {"abelian", abelian}};
  if (o.stream) return 0;
  if (o.json) {
    print(j);
  } else {
    std::cout << "dim " << *o.dim << " over GF(" << *o.p << "): " << valid << " of " << tensors
              << " tensors satisfy Jacobi (" << solvable << " solvable, " << nilpotent << " nilpotent, " << abelian
              << " abelian)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subalgebra lattices of small Lie algebras over GF(p)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "liesublat 0.1.0");
  Options o;

  auto source = [&](CLI::App* c) {
    auto* a = c->add_option("--algebra", o.algebra, "catalog name (see `catalog`)");
    auto* f = c->add_option("--file", o.file, "algebra JSON file")->check(CLI::ExistingFile);
    a->excludes(f);
    c->add_option("--p", o.p, "prime for parameterised catalog entries")->check(CLI::IsMember({2, 3, 5, 7}));
    c->add_option("--dim", o.dim, "dimension for parameterised catalog entries");
    c->add_option("--seed", o.seed, "seed for random_solvable");
  };
  auto budgets = [&](CLI::App* c) {
    c->add_option("--max-subspaces", o.max_subspaces, "subspace enumeration budget")->capture_default_str();
    c->add_option("--threads", o.threads, "worker threads, 0 = hardware")->capture_default_str();
  };

  auto* cat = app.add_subcommand("catalog", "list catalog algebras, or export one as JSON");
  source(cat);
  cat->add_flag("--json", o.json, "JSON output");

  auto* lat = app.add_subcommand("lattice", "build (or load) and cache a subalgebra lattice");
  source(lat);
  budgets(lat);
  lat->add_option("--cache", o.cache, "cache file (default: a file under $LIESUBLAT_CACHE_DIR)");
  lat->add_flag("--json", o.json, "JSON output");

  auto* an = app.add_subcommand("analyze", "lattice stats and predicate verdicts per subalgebra");
  source(an);
  budgets(an);
  an->add_option("--predicates", o.predicates,
                 "comma list of ideal, modular, um, lm, sm, quasi_ideal, strong_ideal, strong_quasi_ideal, modular*")
      ->capture_default_str();
  an->add_option("--only-dim", o.only_dim, "list only subalgebras of this dimension");
  an->add_option("--cache", o.cache, "lattice cache file");
  an->add_flag("--json", o.json, "JSON output");

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("--suite", o.suite, "suite name (see --list)");
  ver->add_flag("--list", o.list, "list suites and omitted results");
  ver->add_option("--seed", o.seed, "universe seed (default 1)");
  ver->add_option("--time-budget-secs", o.time_budget, "wall-clock budget, 0 = none")->capture_default_str();
  ver->add_option("--cache", o.cache, "lattice cache directory (default $LIESUBLAT_CACHE_DIR)");
  ver->add_flag("--json", o.json, "JSON report");
  budgets(ver);

  auto* en = app.add_subcommand("enumerate", "count Jacobi-valid structure tensors");
  en->add_option("--dim", o.dim, "dimension")->required();
  en->add_option("--p", o.p, "prime")->required()->check(CLI::IsMember({2, 3, 5, 7}));
  en->add_flag("--stream", o.stream, "print each valid algebra as one JSON line");
  en->add_flag("--json", o.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*cat) return cmd_catalog(o);
    if (*lat) return cmd_lattice(o);
    if (*an) return cmd_analyze(o);
    if (*ver) return cmd_verify(o);
    if (*en) return cmd_enumerate(o);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
