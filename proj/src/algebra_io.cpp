#include "liesublat/algebra_io.hpp"

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

namespace liesublat {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

namespace {

Json brackets_json(const LieAlgebra& L) {
  Json arr = Json::array();
  for (const auto& e : L.nonzero_brackets()) {
    arr.push_back(Json{{"i", e.i}, {"j", e.j}, {"coeffs", e.coeffs}});
  }
  return arr;
}

long long require_int(const Json& doc, const std::string& ptr) {
  const Json& v = doc.at(Json::json_pointer(ptr));
  if (!v.is_number_integer()) throw SchemaError(ptr, "expected an integer");
  return v.get<long long>();
}

}  // namespace

Json algebra_to_json(const LieAlgebra& L) {
  return Json{{"name", L.name()},
              {"p", L.prime()},
              {"dim", L.dim()},
              {"basis", L.basis_names()},
              {"brackets", brackets_json(L)}};
}

std::string algebra_sha256(const LieAlgebra& L) {
  const Json canon{{"p", L.prime()}, {"dim", L.dim()}, {"brackets", brackets_json(L)}};
  return sha256_hex(canon.dump());
}

LieAlgebra algebra_from_json(const Json& doc) {
  if (!doc.is_object()) throw SchemaError("", "expected an object");
  for (const char* key : {"name", "p", "dim", "basis", "brackets"}) {
    if (!doc.contains(key)) throw SchemaError(std::string("/") + key, "missing field");
  }
  if (!doc["name"].is_string()) throw SchemaError("/name", "expected a string");
  const long long p = require_int(doc, "/p");
  if (p < 0 || !is_supported_prime(static_cast<unsigned>(p))) throw SchemaError("/p", "expected 2, 3, 5 or 7");
  const long long dim = require_int(doc, "/dim");
  if (dim < 0 || dim > static_cast<long long>(kMaxDim)) {
    throw SchemaError("/dim", "expected 0.." + std::to_string(kMaxDim));
  }
  const Json& basis = doc["basis"];
  if (!basis.is_array()) throw SchemaError("/basis", "expected an array");
  if (basis.size() != static_cast<std::size_t>(dim)) throw SchemaError("/basis", "length must equal dim");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!basis[i].is_string()) throw SchemaError("/basis/" + std::to_string(i), "expected a string");
    names.push_back(basis[i].get<std::string>());
  }
  const Json& brackets = doc["brackets"];
  if (!brackets.is_array()) throw SchemaError("/brackets", "expected an array");
  std::vector<BracketEntry> entries;
  std::set<std::pair<long long, long long>> seen;
  for (std::size_t b = 0; b < brackets.size(); ++b) {
    const std::string base = "/brackets/" + std::to_string(b);
    const Json& e = brackets[b];
    if (!e.is_object()) throw SchemaError(base, "expected an object");
    for (const char* key : {"i", "j", "coeffs"}) {
      if (!e.contains(key)) throw SchemaError(base + "/" + key, "missing field");
    }
    const long long i = require_int(doc, base + "/i");
    const long long j = require_int(doc, base + "/j");
    if (i < 0 || i >= dim) throw SchemaError(base + "/i", "index out of range");
    if (j < 0 || j >= dim) throw SchemaError(base + "/j", "index out of range");
    if (i >= j) throw SchemaError(base + "/j", "expected i < j");
    if (!seen.emplace(i, j).second) throw SchemaError(base, "duplicate product");
    const Json& coeffs = e["coeffs"];
    if (!coeffs.is_array()) throw SchemaError(base + "/coeffs", "expected an array");
    if (coeffs.size() != static_cast<std::size_t>(dim)) throw SchemaError(base + "/coeffs", "length must equal dim");
    BracketEntry entry{static_cast<std::size_t>(i), static_cast<std::size_t>(j), {}};
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const long long c = require_int(doc, base + "/coeffs/" + std::to_string(k));
      if (c < 0 || c >= p) throw SchemaError(base + "/coeffs/" + std::to_string(k), "coefficient outside [0, p)");
      entry.coeffs.push_back(c);
    }
    entries.push_back(std::move(entry));
  }
  return LieAlgebra::create(static_cast<unsigned>(p), static_cast<std::size_t>(dim), entries, std::move(names),
                            doc["name"].get<std::string>());
}

LieAlgebra load_algebra_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open algebra file " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
  return algebra_from_json(doc);
}

void save_algebra_file(const LieAlgebra& L, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out << algebra_to_json(L).dump(2) << '\n';
}

}  // namespace liesublat
