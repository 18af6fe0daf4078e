#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "liesublat/algebra_io.hpp"
#include "liesublat/catalog.hpp"

using namespace liesublat;

namespace {

Json good() {
  return Json::parse(R"({"name": "n2", "p": 5, "dim": 2, "basis": ["x", "y"],
                         "brackets": [{"i": 0, "j": 1, "coeffs": [0, 1]}]})");
}

std::string location_of(const Json& doc) {
  try {
    algebra_from_json(doc);
  } catch (const SchemaError& e) {
    return e.location();
  }
  return "<none>";
}

}  // namespace

TEST(AlgebraIo, RoundTripsEveryFixture) {
  for (const LieAlgebra& L : {algebra_K(), psl3_char3(), sl2(7), witt(5), heisenberg(2), upper_triangular(3, 3),
                              random_solvable(5, 5, 9), LieAlgebra::abelian(0, 2)}) {
    const LieAlgebra back = algebra_from_json(algebra_to_json(L));
    EXPECT_TRUE(back.same_structure(L));
    EXPECT_EQ(back.name(), L.name());
    EXPECT_EQ(back.basis_names(), L.basis_names());
    EXPECT_EQ(algebra_to_json(back).dump(), algebra_to_json(L).dump());
  }
}

TEST(AlgebraIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "liesublat_io_test.json";
  save_algebra_file(sl2(3), path);
  EXPECT_TRUE(load_algebra_file(path).same_structure(sl2(3)));
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(load_algebra_file(path), SchemaError);
  std::filesystem::remove(path);
  EXPECT_THROW(load_algebra_file(path), UsageError);
}

TEST(AlgebraIo, SchemaErrorsNameTheField) {
  EXPECT_EQ(location_of(good()), "<none>");
  Json d = good();
  d.erase("basis");
  EXPECT_EQ(location_of(d), "/basis");
  d = good();
  d["p"] = 4;
  EXPECT_EQ(location_of(d), "/p");
  d = good();
  d["dim"] = 9;
  EXPECT_EQ(location_of(d), "/dim");
  d = good();
  d["basis"] = {"x"};
  EXPECT_EQ(location_of(d), "/basis");
  d = good();
  d["brackets"][0]["coeffs"][1] = 5;
  EXPECT_EQ(location_of(d), "/brackets/0/coeffs/1");
  d = good();
  d["brackets"][0]["i"] = 1;
  d["brackets"][0]["j"] = 0;
  EXPECT_EQ(location_of(d), "/brackets/0/j");
  d = good();
  d["brackets"].push_back(d["brackets"][0]);
  EXPECT_EQ(location_of(d), "/brackets/1");
  d = good();
  d["brackets"][0]["coeffs"] = {1};
  EXPECT_EQ(location_of(d), "/brackets/0/coeffs");
  d = good();
  d["brackets"][0]["j"] = "one";
  EXPECT_EQ(location_of(d), "/brackets/0/j");
}

TEST(AlgebraIo, JacobiFailureIsReported) {
  const Json d = Json::parse(R"({"name": "bad", "p": 3, "dim": 3, "basis": ["a", "b", "c"],
      "brackets": [{"i": 0, "j": 1, "coeffs": [0, 1, 0]}, {"i": 0, "j": 2, "coeffs": [0, 1, 0]},
                   {"i": 1, "j": 2, "coeffs": [1, 0, 0]}]})");
  EXPECT_THROW(algebra_from_json(d), JacobiError);
}

TEST(AlgebraIo, HashIgnoresNamesOnly) {
  EXPECT_EQ(algebra_sha256(sl2(5)), algebra_sha256(sl2(5).renamed("other")));
  EXPECT_NE(algebra_sha256(sl2(5)), algebra_sha256(sl2(7)));
  EXPECT_NE(algebra_sha256(LieAlgebra::abelian(2, 3)), algebra_sha256(LieAlgebra::abelian(3, 3)));
  EXPECT_EQ(algebra_sha256(sl2(5)).size(), 64u);
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
