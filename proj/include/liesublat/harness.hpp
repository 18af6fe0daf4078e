#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "liesublat/algebra_io.hpp"
#include "liesublat/lattice.hpp"

namespace liesublat {

struct SuiteConfig {
  std::uint64_t seed = 1;
  /// Random solvable algebras drawn per (dimension, prime) pair.
  std::size_t random_per_pair = 25;
  std::size_t random_max_dim = 5;
  std::vector<unsigned> random_primes{2, 3, 5};
  /// Every Jacobi-valid structure tensor up to this dimension.
  std::size_t exhaustive_max_dim = 3;
  std::vector<unsigned> exhaustive_primes{2, 3};
  bool include_psl3 = true;
  /// Wall clock for one suite run; 0 means unlimited.
  double time_budget_secs = 600.0;
  std::uint64_t max_subspaces = kDefaultSubspaceBudget;
  unsigned threads = 0;
  /// Lattices with more than kCacheThreshold candidate subspaces are cached here.
  std::optional<std::filesystem::path> cache_dir;

  static constexpr std::uint64_t kCacheThreshold = 100000;
  Json to_json() const;
};

enum class Status { pass, fail, reported };
std::string status_name(Status s);

struct Assertion {
  std::string claim;
  std::string statement;
  Status status = Status::pass;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::string details;
  /// Algebra, subalgebra and predicate witness of the first violation (or of
  /// the reported instance); null when there is nothing to show.
  Json witness;
};

struct SuiteReport {
  std::string suite;
  std::string statement;
  Json universe;
  std::vector<Assertion> assertions;
  std::vector<std::pair<std::string, double>> timings;
  bool truncated = false;
  std::string truncation;

  bool any_failed() const;
};

struct SuiteInfo {
  std::string name;
  std::string statement;
  std::string universe;
};

const std::vector<SuiteInfo>& suite_registry();

/// Results that need infinite, perfect infinite or algebraically closed
/// fields and so have no finite-field check; listed with the reason.
struct OmittedResult {
  std::string statement;
  std::string reason;
};
const std::vector<OmittedResult>& omitted_results();

/// Throws UsageError for an unknown suite name. Budget exhaustion does not
/// throw; the report comes back truncated.
SuiteReport run_suite(const std::string& name, const SuiteConfig& config = {});

Json report_to_json(const SuiteReport& r, bool include_timings = true);
/// SHA-256 of the report without timings.
std::string report_digest(const SuiteReport& r);
/// 0 all pass, 1 any failure, 2 truncated by a budget.
int suite_exit_code(const SuiteReport& r);

/// Default lattice cache directory: $LIESUBLAT_CACHE_DIR, else
/// $XDG_CACHE_HOME/liesublat, else ~/.cache/liesublat.
std::filesystem::path default_cache_dir();

}  // namespace liesublat
