#include <gtest/gtest.h>

#include <filesystem>

#include "liesublat/harness.hpp"

using namespace liesublat;

namespace {

SuiteConfig small() {
  SuiteConfig c;
  c.random_per_pair = 2;
  c.random_max_dim = 3;
  c.exhaustive_max_dim = 2;
  c.include_psl3 = false;
  c.threads = 2;
  return c;
}

}  // namespace

TEST(Harness, KExamplePasses) {
  const SuiteReport r = run_suite("K-example");
  EXPECT_FALSE(r.any_failed());
  EXPECT_EQ(suite_exit_code(r), 0);
  bool reported = false;
  for (const Assertion& a : r.assertions) {
    if (a.status == Status::reported) {
      reported = true;
      if (!a.witness.is_null()) EXPECT_TRUE(a.witness.contains("algebra"));
    }
  }
  EXPECT_TRUE(reported);
}

TEST(Harness, DigestIsDeterministic) {
  const SuiteConfig c = small();
  SuiteConfig other = c;
  other.threads = 1;
  for (const char* name : {"solvable-corefree", "sm-atoms", "K-example"}) {
    const SuiteReport a = run_suite(name, c), b = run_suite(name, other);
    EXPECT_EQ(report_digest(a), report_digest(b)) << name;
    EXPECT_EQ(report_to_json(a, false).dump(), report_to_json(b, false).dump());
  }
  SuiteConfig seeded = c;
  seeded.seed = 2;
  EXPECT_NE(report_digest(run_suite("solvable-corefree", c)), report_digest(run_suite("solvable-corefree", seeded)));
}

TEST(Harness, TinyBudgetTruncates) {
  SuiteConfig c = small();
  c.time_budget_secs = 1e-6;
  const SuiteReport r = run_suite("solvable-equivalence", c);
  EXPECT_TRUE(r.truncated);
  EXPECT_FALSE(r.truncation.empty());
  EXPECT_EQ(suite_exit_code(r), 2);
}

TEST(Harness, RegistryAndErrors) {
  EXPECT_THROW(run_suite("no-such-suite"), UsageError);
  EXPECT_GE(suite_registry().size(), 10u);
  for (const OmittedResult& o : omitted_results()) EXPECT_FALSE(o.reason.empty());
  const Json j = report_to_json(run_suite("witt"));
  EXPECT_EQ(j["suite"], "witt");
  EXPECT_TRUE(j.contains("assertions"));
}

TEST(Harness, FailedAssertionExitCode) {
  SuiteReport r;
  r.assertions.push_back({"x", "y", Status::fail, 1, 1, "", Json()});
  EXPECT_TRUE(r.any_failed());
  EXPECT_EQ(suite_exit_code(r), 1);
  r.truncated = true;
  EXPECT_EQ(suite_exit_code(r), 1);
}

TEST(Harness, CacheDirDoesNotChangeDigest) {
  const auto dir = std::filesystem::temp_directory_path() / "liesublat_harness_cache";
  std::filesystem::remove_all(dir);
  SuiteConfig c;
  c.cache_dir = dir;
  const SuiteReport a = run_suite("witt", c), b = run_suite("witt");
  EXPECT_EQ(report_digest(a), report_digest(b));
  std::filesystem::remove_all(dir);
}
