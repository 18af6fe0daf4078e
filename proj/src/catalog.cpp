#include "liesublat/catalog.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "liesublat/errors.hpp"

namespace liesublat {

namespace {

std::string suffix(std::size_t n, unsigned p) {
  return "(" + std::to_string(n) + "," + std::to_string(p) + ")";
}

/// Collects products given in any index order, folding antisymmetry.
class TableBuilder {
 public:
  TableBuilder(std::size_t n, unsigned p) : n_(n), p_(p) {}

  void add(std::size_t i, std::size_t j, std::size_t k, long long c) {
    if (i == j) throw UsageError("product of a basis vector with itself");
    if (i > j) {
      std::swap(i, j);
      c = -c;
    }
    auto& coeffs = entries_[{i, j}];
    if (coeffs.empty()) coeffs.assign(n_, 0);
    coeffs[k] += c;
  }

  LieAlgebra build(std::vector<std::string> names, std::string name) const {
    std::vector<BracketEntry> out;
    for (const auto& [ij, coeffs] : entries_) out.push_back(BracketEntry{ij.first, ij.second, coeffs});
    return LieAlgebra::create(p_, n_, out, std::move(names), std::move(name));
  }

 private:
  std::size_t n_;
  unsigned p_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<long long>> entries_;
};

void require_dim(std::size_t n, std::size_t lo, std::size_t hi, const char* what) {
  if (n < lo || n > hi) {
    throw UsageError(std::string(what) + ": dimension " + std::to_string(n) + " outside " + std::to_string(lo) +
                     ".." + std::to_string(hi));
  }
}

}  // namespace

LieAlgebra algebra_K() {
  TableBuilder t(3, 2);
  t.add(0, 1, 2, 1);  // [a,b] = c
  t.add(1, 2, 1, 1);  // [b,c] = b
  t.add(0, 2, 0, 1);  // [a,c] = a
  return t.build({"a", "b", "c"}, "K");
}

std::size_t psl3_index(int i) {
  if (i < -3 || i > 3) throw UsageError("psl3 index must lie in -3..3");
  return static_cast<std::size_t>(i + 3);
}

LieAlgebra psl3_char3() {
  TableBuilder t(7, 3);
  auto e = psl3_index;
  for (int i = 1; i <= 3; ++i) {
    t.add(e(0), e(i), e(i), 1);
    t.add(e(0), e(-i), e(-i), -1);
    t.add(e(-i), e(i), e(0), 1);
  }
  const int cyc[2][3][3] = {{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}, {{-3, -2, -1}, {-2, -1, -3}, {-1, -3, -2}}};
  for (const auto& block : cyc) {
    for (const auto& ijk : block) t.add(e(ijk[0]), e(ijk[1]), e(-ijk[2]), 1);
  }
  return t.build({"e-3", "e-2", "e-1", "e0", "e1", "e2", "e3"}, "psl3_char3");
}

Subspace psl3_B(int i, int j) {
  if (i == 0 || j == 0 || i == j) throw UsageError("psl3_B needs distinct nonzero indices");
  const std::vector<FqVector> gens{FqVector::unit(7, 3, psl3_index(0)), FqVector::unit(7, 3, psl3_index(i)),
                                   FqVector::unit(7, 3, psl3_index(j))};
  return Subspace::span(gens, 7, 3);
}

LieAlgebra almost_abelian(std::size_t n, unsigned p) {
  require_dim(n, 1, kMaxDim, "almost_abelian");
  TableBuilder t(n, p);
  std::vector<std::string> names{"x"};
  for (std::size_t i = 1; i < n; ++i) {
    t.add(0, i, i, 1);
    names.push_back("e" + std::to_string(i));
  }
  return t.build(std::move(names), "almost_abelian" + suffix(n, p));
}

LieAlgebra heisenberg(unsigned p) {
  TableBuilder t(3, p);
  t.add(0, 1, 2, 1);
  return t.build({"x", "y", "z"}, "heisenberg(" + std::to_string(p) + ")");
}

LieAlgebra nonabelian2(unsigned p) {
  TableBuilder t(2, p);
  t.add(0, 1, 1, 1);
  return t.build({"x", "y"}, "nonabelian2(" + std::to_string(p) + ")");
}

LieAlgebra sl2(unsigned p) {
  require_supported_prime(p);
  if (p < 3) throw UsageError("sl2 requires p >= 3");
  TableBuilder t(3, p);
  t.add(0, 1, 1, 2);   // [h,e] = 2e
  t.add(0, 2, 2, -2);  // [h,f] = -2f
  t.add(1, 2, 0, 1);   // [e,f] = h
  return t.build({"h", "e", "f"}, "sl2(" + std::to_string(p) + ")");
}

LieAlgebra witt(unsigned p) {
  require_supported_prime(p);
  if (p < 5) throw UsageError("witt requires p >= 5");
  TableBuilder t(p, p);
  std::vector<std::string> names;
  const int lo = -1, hi = static_cast<int>(p) - 2;
  for (int i = lo; i <= hi; ++i) names.push_back("e" + std::to_string(i));
  for (int i = lo; i <= hi; ++i) {
    for (int j = i + 1; j <= hi; ++j) {
      if (i + j < lo || i + j > hi) continue;
      t.add(static_cast<std::size_t>(i - lo), static_cast<std::size_t>(j - lo), static_cast<std::size_t>(i + j - lo),
            j - i);
    }
  }
  return t.build(std::move(names), "witt(" + std::to_string(p) + ")");
}

Subspace witt_L0(unsigned p) {
  if (p < 5) throw UsageError("witt requires p >= 5");
  std::vector<FqVector> gens;
  for (std::size_t i = 1; i < p; ++i) gens.push_back(FqVector::unit(p, p, i));
  return Subspace::span(gens, p, p);
}

namespace {

LieAlgebra matrix_algebra(std::size_t n, unsigned p, bool strict, const std::string& name) {
  std::vector<std::pair<std::size_t, std::size_t>> units;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = strict ? i + 1 : i; j < n; ++j) units.emplace_back(i, j);
  }
  if (units.size() > kMaxDim) throw UsageError(name + ": dimension exceeds " + std::to_string(kMaxDim));
  auto index = [&](std::size_t i, std::size_t j) {
    return static_cast<std::size_t>(std::find(units.begin(), units.end(), std::make_pair(i, j)) - units.begin());
  };
  TableBuilder t(units.size(), p);
  std::vector<std::string> names;
  for (std::size_t a = 0; a < units.size(); ++a) {
    names.push_back("E" + std::to_string(units[a].first + 1) + std::to_string(units[a].second + 1));
    for (std::size_t b = a + 1; b < units.size(); ++b) {
      // [E_ij, E_kl] = d_jk E_il - d_li E_kj
      const auto [i, j] = units[a];
      const auto [k, l] = units[b];
      if (j == k) t.add(a, b, index(i, l), 1);
      if (l == i) t.add(a, b, index(k, j), -1);
    }
  }
  return t.build(std::move(names), name);
}

}  // namespace

LieAlgebra upper_triangular(std::size_t n, unsigned p) {
  require_dim(n, 1, 3, "upper_triangular");
  return matrix_algebra(n, p, false, "t" + suffix(n, p));
}

LieAlgebra strictly_upper(std::size_t n, unsigned p) {
  require_dim(n, 2, 4, "strictly_upper");
  return matrix_algebra(n, p, true, "n" + suffix(n, p));
}

LieAlgebra random_solvable(std::size_t dim, unsigned p, std::uint64_t seed) {
  require_supported_prime(p);
  require_dim(dim, 1, 6, "random_solvable");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(dim), p};
  std::mt19937_64 rng(seq);
  LieAlgebra L = LieAlgebra::abelian(1, p);
  while (L.dim() < dim) {
    const auto basis = derivation_basis(L);
    FqMatrix d(L.dim(), L.dim(), p);
    for (const FqMatrix& b : basis) {
      // Half the basis terms are dropped so sparse actions (and nilpotent
      // algebras) show up alongside generic ones.
      if (rng() & 1) continue;
      const long long c = static_cast<long long>(rng() % p);
      for (std::size_t r = 0; r < d.rows(); ++r) {
        for (std::size_t s = 0; s < d.cols(); ++s) d.set(r, s, d(r, s) + c * b(r, s));
      }
    }
    L = semidirect_extend(L, d);
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim; ++i) names.push_back("e" + std::to_string(i));
  const auto brackets = L.nonzero_brackets();
  LieAlgebra out = LieAlgebra::create(p, dim, brackets, std::move(names),
                                      "random_solvable" + suffix(dim, p) + "#" + std::to_string(seed));
  if (!is_solvable(out)) throw Error("random_solvable produced a non-solvable algebra");
  return out;
}

bool structure_enumeration_allowed(std::size_t dim, unsigned p) noexcept {
  if (!is_supported_prime(p) || dim > kMaxDim) return false;
  const std::size_t slots = dim * dim * (dim - (dim > 0 ? 1 : 0)) / 2;
  BigInt total = 1;
  for (std::size_t i = 0; i < slots; ++i) {
    total *= p;
    if (total > (BigInt(1) << 25)) return false;
  }
  return true;
}

std::uint64_t enumerate_structures(std::size_t dim, unsigned p, const std::function<void(const LieAlgebra&)>& visit) {
  require_supported_prime(p);
  if (!structure_enumeration_allowed(dim, p)) {
    BigInt total = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(dim * dim * (dim ? dim - 1 : 0) / 2));
    throw ResourceError("structure enumeration for dim " + std::to_string(dim) + " over GF(" + std::to_string(p) +
                            ") exceeds 2^25 tensors",
                        total > BigInt(UINT64_MAX) ? UINT64_MAX : static_cast<std::uint64_t>(total));
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) pairs.emplace_back(i, j);
  }
  const std::size_t slots = pairs.size() * dim;
  std::vector<Residue> digits(slots, 0);
  std::array<std::array<std::uint64_t, kMaxDim>, kMaxDim> table{};
  auto bracket_basis = [&](std::uint64_t w, std::size_t k) {
    std::uint64_t acc = 0;
    for (std::size_t a = 0; a < dim; ++a) {
      const Residue c = detail::lane(w, a);
      if (c != 0) acc = detail::lanes_axpy(acc, c, table[a][k], p);
    }
    return acc;
  };
  std::uint64_t index = 0, valid = 0;
  while (true) {
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      std::uint64_t w = 0;
      for (std::size_t k = 0; k < dim; ++k) w = detail::with_lane(w, k, digits[q * dim + k]);
      const auto [i, j] = pairs[q];
      table[i][j] = w;
      table[j][i] = detail::lanes_neg(w, p);
    }
    bool ok = true;
    for (std::size_t i = 0; i < dim && ok; ++i) {
      for (std::size_t j = i + 1; j < dim && ok; ++j) {
        for (std::size_t k = j + 1; k < dim && ok; ++k) {
          std::uint64_t s = bracket_basis(table[i][j], k);
          s = detail::lanes_add(s, bracket_basis(table[j][k], i), p);
          s = detail::lanes_add(s, bracket_basis(table[k][i], j), p);
          ok = s == 0;
        }
      }
    }
    if (ok) {
      ++valid;
      if (visit) {
        std::vector<BracketEntry> entries;
        for (std::size_t q = 0; q < pairs.size(); ++q) {
          BracketEntry e{pairs[q].first, pairs[q].second, std::vector<long long>(dim)};
          for (std::size_t k = 0; k < dim; ++k) e.coeffs[k] = digits[q * dim + k];
          entries.push_back(std::move(e));
        }
        visit(LieAlgebra::create(p, dim, entries, {},
                                 "struct" + suffix(dim, p) + "#" + std::to_string(index)));
      }
    }
    ++index;
    std::size_t pos = slots;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < p) break;
      digits[pos] = 0;
      if (pos == 0) return valid;
    }
    if (slots == 0) return valid;
  }
}

// ---- registry -----------------------------------------------------------------

namespace {

unsigned need_p(const CatalogParams& c, const std::string& name) {
  if (!c.p) throw UsageError(name + " needs --p");
  require_supported_prime(*c.p);
  return *c.p;
}

std::size_t need_dim(const CatalogParams& c, const std::string& name) {
  if (!c.dim) throw UsageError(name + " needs --dim");
  return *c.dim;
}

void forbid_p(const CatalogParams& c, unsigned fixed, const std::string& name) {
  if (c.p && *c.p != fixed) throw UsageError(name + " is defined over GF(" + std::to_string(fixed) + ") only");
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"K", "none (GF(2), dim 3)", "[a,b] = c, [b,c] = b, [a,c] = a in characteristic two",
       [](const CatalogParams& c) {
         forbid_p(c, 2, "K");
         return algebra_K();
       }},
      {"psl3_char3", "none (GF(3), dim 7)", "psl_3 in the signed basis e_-3..e_3",
       [](const CatalogParams& c) {
         forbid_p(c, 3, "psl3_char3");
         return psl3_char3();
       }},
      {"abelian", "--dim n --p p", "standard construction",
       [](const CatalogParams& c) {
         const unsigned p = need_p(c, "abelian");
         const std::size_t n = need_dim(c, "abelian");
         return LieAlgebra::abelian(n, p, "abelian" + suffix(n, p));
       }},
      {"almost_abelian", "--dim n --p p", "L = L^2 + Fx with ad x the identity on L^2",
       [](const CatalogParams& c) { return almost_abelian(need_dim(c, "almost_abelian"), need_p(c, "almost_abelian")); }},
      {"heisenberg", "--p p", "standard construction, [x,y] = z",
       [](const CatalogParams& c) { return heisenberg(need_p(c, "heisenberg")); }},
      {"nonabelian2", "--p p", "standard construction, [x,y] = y",
       [](const CatalogParams& c) { return nonabelian2(need_p(c, "nonabelian2")); }},
      {"sl2", "--p p (p >= 3)", "standard construction",
       [](const CatalogParams& c) { return sl2(need_p(c, "sl2")); }},
      {"witt", "--p p (p = 5 or 7)", "W(1:1), [e_i,e_j] = (j-i) e_{i+j}",
       [](const CatalogParams& c) { return witt(need_p(c, "witt")); }},
      {"upper_triangular", "--dim n (matrix size 1..3) --p p", "standard construction",
       [](const CatalogParams& c) {
         return upper_triangular(need_dim(c, "upper_triangular"), need_p(c, "upper_triangular"));
       }},
      {"strictly_upper", "--dim n (matrix size 2..4) --p p", "standard construction",
       [](const CatalogParams& c) {
         return strictly_upper(need_dim(c, "strictly_upper"), need_p(c, "strictly_upper"));
       }},
      {"random_solvable", "--dim n (1..6) --p p --seed s", "iterated extensions by random derivations",
       [](const CatalogParams& c) {
         return random_solvable(need_dim(c, "random_solvable"), need_p(c, "random_solvable"), c.seed.value_or(0));
       }},
  };
  return entries;
}

LieAlgebra catalog_build(const std::string& name, const CatalogParams& params) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e.builder(params);
  }
  throw UsageError("unknown catalog algebra '" + name + "'");
}

}  // namespace liesublat
