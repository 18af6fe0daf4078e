#include "liesublat/lie_algebra.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace liesublat {

namespace {

using Table = std::array<std::array<std::uint64_t, kMaxDim>, kMaxDim>;

std::uint64_t table_bracket(const Table& t, std::size_t n, unsigned p, std::uint64_t x,
                            std::uint64_t y) noexcept {
  std::uint64_t acc = 0;
  for (std::size_t a = 0; a < n; ++a) {
    const Residue xa = detail::lane(x, a);
    if (xa == 0) continue;
    for (std::size_t b = 0; b < n; ++b) {
      const Residue yb = detail::lane(y, b);
      if (yb == 0 || a == b) continue;
      acc = detail::lanes_axpy(acc, detail::mul(xa, yb, p), t[a][b], p);
    }
  }
  return acc;
}

Table build_table(unsigned p, std::size_t dim, std::span<const BracketEntry> brackets) {
  require_supported_prime(p);
  if (dim > kMaxDim) throw UsageError("dimension " + std::to_string(dim) + " exceeds " + std::to_string(kMaxDim));
  Table t{};
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& b : brackets) {
    if (b.i >= b.j) {
      throw UsageError("bracket entry (" + std::to_string(b.i) + ", " + std::to_string(b.j) +
                       ") must have i < j");
    }
    if (b.j >= dim) throw UsageError("bracket index out of range");
    if (b.coeffs.size() != dim) throw UsageError("bracket coefficient vector has wrong length");
    if (!seen.emplace(b.i, b.j).second) {
      throw UsageError("duplicate bracket entry (" + std::to_string(b.i) + ", " + std::to_string(b.j) + ")");
    }
    std::uint64_t w = 0;
    for (std::size_t k = 0; k < dim; ++k) w = detail::with_lane(w, k, reduce_mod(b.coeffs[k], p));
    t[b.i][b.j] = w;
    t[b.j][b.i] = detail::lanes_neg(w, p);
  }
  return t;
}

std::optional<std::array<std::size_t, 3>> table_jacobi_violation(const Table& t, std::size_t n, unsigned p) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const std::uint64_t ei = std::uint64_t{1} << (8 * i);
        const std::uint64_t ej = std::uint64_t{1} << (8 * j);
        const std::uint64_t ek = std::uint64_t{1} << (8 * k);
        std::uint64_t s = table_bracket(t, n, p, t[i][j], ek);
        s = detail::lanes_add(s, table_bracket(t, n, p, t[j][k], ei), p);
        s = detail::lanes_add(s, table_bracket(t, n, p, t[k][i], ej), p);
        if (s != 0) return std::array<std::size_t, 3>{i, j, k};
      }
    }
  }
  return std::nullopt;
}

std::vector<Residue> word_coords(std::uint64_t w, std::size_t n) {
  std::vector<Residue> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::lane(w, i);
  return out;
}

}  // namespace

// ---- LieAlgebra ---------------------------------------------------------------

std::optional<std::array<std::size_t, 3>> jacobi_violation(unsigned p, std::size_t dim,
                                                           std::span<const BracketEntry> brackets) {
  return table_jacobi_violation(build_table(p, dim, brackets), dim, p);
}

LieAlgebra LieAlgebra::create(unsigned p, std::size_t dim, std::span<const BracketEntry> brackets,
                              std::vector<std::string> basis_names, std::string name) {
  LieAlgebra L;
  L.table_ = build_table(p, dim, brackets);
  if (auto bad = table_jacobi_violation(L.table_, dim, p)) throw JacobiError((*bad)[0], (*bad)[1], (*bad)[2]);
  L.p_ = p;
  L.n_ = dim;
  if (basis_names.empty()) {
    for (std::size_t i = 0; i < dim; ++i) basis_names.push_back("e" + std::to_string(i));
  }
  if (basis_names.size() != dim) throw UsageError("basis name count does not match dimension");
  L.names_ = std::move(basis_names);
  L.name_ = std::move(name);
  return L;
}

LieAlgebra LieAlgebra::abelian(std::size_t dim, unsigned p, std::string name) {
  return create(p, dim, {}, {}, std::move(name));
}

FqVector LieAlgebra::basis_bracket(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw UsageError("basis index out of range");
  return FqVector::from_word(i == j ? 0 : table_[i][j], n_, p_);
}

void LieAlgebra::check_vector(const FqVector& v) const {
  if (v.size() != n_ || v.modulus() != p_) {
    throw UsageError("vector " + v.to_string() + " does not belong to an algebra of dimension " +
                     std::to_string(n_) + " over GF(" + std::to_string(p_) + ")");
  }
}

void LieAlgebra::check_space(const Subspace& s) const {
  if (s.ambient_dim() != n_ || s.modulus() != p_) throw UsageError("subspace does not live in this algebra");
}

FqVector LieAlgebra::bracket(const FqVector& x, const FqVector& y) const {
  check_vector(x);
  check_vector(y);
  return FqVector::from_word(bracket_word(x.word(), y.word()), n_, p_);
}

FqMatrix LieAlgebra::ad(const FqVector& x) const {
  check_vector(x);
  FqMatrix m(n_, n_, p_);
  for (std::size_t c = 0; c < n_; ++c) {
    const std::uint64_t col = bracket_word(x.word(), std::uint64_t{1} << (8 * c));
    for (std::size_t r = 0; r < n_; ++r) m.set(r, c, detail::lane(col, r));
  }
  return m;
}

std::vector<BracketEntry> LieAlgebra::nonzero_brackets() const {
  std::vector<BracketEntry> out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (table_[i][j] == 0) continue;
      BracketEntry e{i, j, {}};
      for (std::size_t k = 0; k < n_; ++k) e.coeffs.push_back(detail::lane(table_[i][j], k));
      out.push_back(std::move(e));
    }
  }
  return out;
}

bool LieAlgebra::is_abelian() const noexcept {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (table_[i][j] != 0) return false;
    }
  }
  return true;
}

LieAlgebra LieAlgebra::renamed(std::string name) const {
  LieAlgebra copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool LieAlgebra::same_structure(const LieAlgebra& other) const noexcept {
  return p_ == other.p_ && n_ == other.n_ && table_ == other.table_;
}

// ---- substructures ------------------------------------------------------------

Subspace bracket_spaces(const LieAlgebra& L, const Subspace& a, const Subspace& b) {
  L.check_space(a);
  L.check_space(b);
  std::vector<FqVector> gens;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      const std::uint64_t w = L.bracket_word(a.row_word(i), b.row_word(j));
      if (w != 0) gens.push_back(FqVector::from_word(w, L.dim(), L.prime()));
    }
  }
  return Subspace::span(gens, L.dim(), L.prime());
}

bool is_subalgebra(const LieAlgebra& L, const Subspace& s) {
  L.check_space(s);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    for (std::size_t j = i + 1; j < s.dim(); ++j) {
      if (!s.contains_word(L.bracket_word(s.row_word(i), s.row_word(j)))) return false;
    }
  }
  return true;
}

bool is_ideal(const LieAlgebra& L, const Subspace& s) {
  L.check_space(s);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    for (std::size_t e = 0; e < L.dim(); ++e) {
      if (!s.contains_word(L.bracket_word(std::uint64_t{1} << (8 * e), s.row_word(i)))) return false;
    }
  }
  return true;
}

Subspace generated_subalgebra(const LieAlgebra& L, std::span<const FqVector> gens) {
  const std::size_t n = L.dim();
  const unsigned p = L.prime();
  // `added` holds independent vectors spanning `span`; every pair gets bracketed once.
  std::vector<std::uint64_t> added;
  Subspace span(n, p);
  auto absorb = [&](std::uint64_t w) {
    if (span.absorb_word(w)) added.push_back(w);
  };
  for (const FqVector& g : gens) {
    L.check_vector(g);
    absorb(g.word());
  }
  for (std::size_t i = 0; i < added.size() && !span.is_full(); ++i) {
    for (std::size_t j = 0; j < i && !span.is_full(); ++j) absorb(L.bracket_word(added[j], added[i]));
  }
  return span;
}

Subspace generated_subalgebra(const LieAlgebra& L, const Subspace& s) {
  L.check_space(s);
  const auto b = s.basis();
  return generated_subalgebra(L, std::span<const FqVector>(b));
}

Subspace ideal_closure(const LieAlgebra& L, const Subspace& s) {
  L.check_space(s);
  Subspace cur = s;
  while (true) {
    Subspace next = subspace_sum(cur, bracket_spaces(L, L.whole(), cur));
    if (next == cur) return cur;
    cur = next;
  }
}

std::vector<Subspace> series(const LieAlgebra& L, SeriesKind kind, const std::optional<Subspace>& of) {
  const Subspace base = of ? *of : L.whole();
  L.check_space(base);
  if (of && !is_subalgebra(L, base)) throw UsageError("series: input is not a subalgebra");
  std::vector<Subspace> out{base};
  while (true) {
    const Subspace& last = out.back();
    Subspace next = kind == SeriesKind::derived ? bracket_spaces(L, last, last) : bracket_spaces(L, base, last);
    if (next == last) break;
    out.push_back(std::move(next));
  }
  return out;
}

Subspace l_infinity(const LieAlgebra& L) { return series(L, SeriesKind::lower_central).back(); }

bool is_solvable(const LieAlgebra& L) { return series(L, SeriesKind::derived).back().is_zero(); }
bool is_nilpotent(const LieAlgebra& L) { return series(L, SeriesKind::lower_central).back().is_zero(); }
bool is_abelian(const LieAlgebra& L) { return L.is_abelian(); }

bool is_solvable(const LieAlgebra& L, const Subspace& s) {
  return series(L, SeriesKind::derived, s).back().is_zero();
}
bool is_nilpotent(const LieAlgebra& L, const Subspace& s) {
  return series(L, SeriesKind::lower_central, s).back().is_zero();
}
bool is_abelian(const LieAlgebra& L, const Subspace& s) {
  if (!is_subalgebra(L, s)) throw UsageError("is_abelian: input is not a subalgebra");
  return bracket_spaces(L, s, s).is_zero();
}

Subspace centralizer(const LieAlgebra& L, const Subspace& u) {
  L.check_space(u);
  return kernel_within(L.whole(), [&](const FqVector& x) {
    std::vector<Residue> out;
    for (std::size_t i = 0; i < u.dim(); ++i) {
      const auto c = word_coords(L.bracket_word(x.word(), u.row_word(i)), L.dim());
      out.insert(out.end(), c.begin(), c.end());
    }
    if (out.empty()) out.assign(L.dim(), 0);
    return out;
  });
}

Subspace center(const LieAlgebra& L) { return centralizer(L, L.whole()); }

Subspace normalizer(const LieAlgebra& L, const Subspace& u) {
  L.check_space(u);
  return kernel_within(L.whole(), [&](const FqVector& x) {
    std::vector<Residue> out;
    for (std::size_t i = 0; i < u.dim(); ++i) {
      const auto c = word_coords(u.reduce_word(L.bracket_word(x.word(), u.row_word(i))), L.dim());
      out.insert(out.end(), c.begin(), c.end());
    }
    if (out.empty()) out.assign(L.dim(), 0);
    return out;
  });
}

Subspace core(const LieAlgebra& L, const Subspace& u) {
  L.check_space(u);
  Subspace cur = u;
  while (!cur.is_zero()) {
    Subspace next = kernel_within(cur, [&](const FqVector& x) {
      std::vector<Residue> out;
      for (std::size_t e = 0; e < L.dim(); ++e) {
        const auto c = word_coords(cur.reduce_word(L.bracket_word(x.word(), std::uint64_t{1} << (8 * e))), L.dim());
        out.insert(out.end(), c.begin(), c.end());
      }
      return out;
    });
    if (next == cur) break;
    cur = next;
  }
  return cur;
}

Subspace solvable_radical(const LieAlgebra& L, std::uint64_t budget) {
  Subspace radical = L.zero_space();
  for_each_subspace(
      L.dim(), L.prime(), std::nullopt,
      [&](const Subspace& s) {
        if (s.is_subset_of(radical)) return;
        if (is_ideal(L, s) && is_solvable(L, s)) radical = subspace_sum(radical, s);
      },
      budget);
  return radical;
}

std::optional<Residue> scalar_action(const LieAlgebra& L, const FqVector& u, const Subspace& space) {
  L.check_vector(u);
  L.check_space(space);
  std::optional<Residue> scalar;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const std::uint64_t v = space.row_word(i);
    const std::uint64_t img = L.bracket_word(u.word(), v);
    const Residue c = detail::lane(img, space.pivot(i));  // v has a 1 there
    if (img != detail::lanes_scale(v, c, L.prime())) return std::nullopt;
    if (scalar && *scalar != c) return std::nullopt;
    scalar = c;
  }
  return scalar ? scalar : std::optional<Residue>(0);
}

// ---- constructions ------------------------------------------------------------

FqVector Quotient::project(const FqVector& v) const {
  const FqVector r = ideal.reduce(v);
  FqVector out(complement.size(), v.modulus());
  for (std::size_t i = 0; i < complement.size(); ++i) out.set(i, r[complement[i]]);
  return out;
}

Quotient quotient(const LieAlgebra& L, const Subspace& ideal) {
  L.check_space(ideal);
  if (!is_ideal(L, ideal)) throw UsageError("quotient: subspace is not an ideal");
  std::vector<std::size_t> comp;
  for (std::size_t c = 0, r = 0; c < L.dim(); ++c) {
    if (r < ideal.dim() && ideal.pivot(r) == c) {
      ++r;
      continue;
    }
    comp.push_back(c);
  }
  std::vector<BracketEntry> entries;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < comp.size(); ++a) {
    names.push_back(L.basis_names()[comp[a]]);
    for (std::size_t b = a + 1; b < comp.size(); ++b) {
      const std::uint64_t w = ideal.reduce_word(L.bracket_word(std::uint64_t{1} << (8 * comp[a]),
                                                               std::uint64_t{1} << (8 * comp[b])));
      BracketEntry e{a, b, std::vector<long long>(comp.size(), 0)};
      bool nz = false;
      for (std::size_t k = 0; k < comp.size(); ++k) {
        e.coeffs[k] = detail::lane(w, comp[k]);
        nz = nz || e.coeffs[k] != 0;
      }
      if (nz) entries.push_back(std::move(e));
    }
  }
  std::string name = L.name().empty() ? std::string{} : L.name() + "/" + ideal.to_string();
  return Quotient{LieAlgebra::create(L.prime(), comp.size(), entries, names, name), ideal, comp};
}

LieAlgebra restrict_to(const LieAlgebra& L, const Subspace& s, std::string name) {
  if (!is_subalgebra(L, s)) throw UsageError("restrict_to: subspace is not a subalgebra");
  std::vector<BracketEntry> entries;
  for (std::size_t a = 0; a < s.dim(); ++a) {
    for (std::size_t b = a + 1; b < s.dim(); ++b) {
      const std::uint64_t w = L.bracket_word(s.row_word(a), s.row_word(b));
      if (w == 0) continue;
      BracketEntry e{a, b, std::vector<long long>(s.dim(), 0)};
      for (std::size_t k = 0; k < s.dim(); ++k) e.coeffs[k] = detail::lane(w, s.pivot(k));
      entries.push_back(std::move(e));
    }
  }
  return LieAlgebra::create(L.prime(), s.dim(), entries, {}, std::move(name));
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b, std::string name) {
  if (a.prime() != b.prime()) throw UsageError("direct_sum: moduli differ");
  const std::size_t n = a.dim() + b.dim();
  if (n > kMaxDim) throw UsageError("direct_sum: dimension exceeds " + std::to_string(kMaxDim));
  std::vector<BracketEntry> entries;
  for (const auto& e : a.nonzero_brackets()) {
    BracketEntry f{e.i, e.j, std::vector<long long>(n, 0)};
    std::copy(e.coeffs.begin(), e.coeffs.end(), f.coeffs.begin());
    entries.push_back(std::move(f));
  }
  for (const auto& e : b.nonzero_brackets()) {
    BracketEntry f{e.i + a.dim(), e.j + a.dim(), std::vector<long long>(n, 0)};
    std::copy(e.coeffs.begin(), e.coeffs.end(), f.coeffs.begin() + static_cast<std::ptrdiff_t>(a.dim()));
    entries.push_back(std::move(f));
  }
  std::vector<std::string> names;
  for (const auto& s : a.basis_names()) names.push_back(s);
  for (const auto& s : b.basis_names()) {
    const bool clash = std::find(names.begin(), names.end(), s) != names.end();
    names.push_back(clash ? s + "'" : s);
  }
  return LieAlgebra::create(a.prime(), n, entries, names, std::move(name));
}

bool is_derivation(const LieAlgebra& L, const FqMatrix& d) {
  if (d.rows() != L.dim() || d.cols() != L.dim() || d.modulus() != L.prime()) return false;
  for (std::size_t i = 0; i < L.dim(); ++i) {
    for (std::size_t j = i + 1; j < L.dim(); ++j) {
      const FqVector ei = L.basis_vector(i);
      const FqVector ej = L.basis_vector(j);
      const FqVector lhs = d.apply(L.bracket(ei, ej));
      const FqVector rhs = L.bracket(d.apply(ei), ej) + L.bracket(ei, d.apply(ej));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

LieAlgebra semidirect_extend(const LieAlgebra& L, const FqMatrix& d, std::string name) {
  if (L.dim() + 1 > kMaxDim) throw UsageError("semidirect_extend: dimension exceeds " + std::to_string(kMaxDim));
  if (!is_derivation(L, d)) throw UsageError("semidirect_extend: matrix is not a derivation");
  const std::size_t n = L.dim() + 1;
  std::vector<BracketEntry> entries;
  for (const auto& e : L.nonzero_brackets()) {
    BracketEntry f{e.i, e.j, e.coeffs};
    f.coeffs.push_back(0);
    entries.push_back(std::move(f));
  }
  for (std::size_t i = 0; i < L.dim(); ++i) {
    // [e_i, x] = -[x, e_i] = -D e_i
    const FqVector img = -d.apply(L.basis_vector(i));
    if (img.is_zero()) continue;
    BracketEntry f{i, L.dim(), std::vector<long long>(n, 0)};
    for (std::size_t k = 0; k < L.dim(); ++k) f.coeffs[k] = img[k];
    entries.push_back(std::move(f));
  }
  std::vector<std::string> names = L.basis_names();
  std::string xname = "x";
  while (std::find(names.begin(), names.end(), xname) != names.end()) xname += "'";
  names.push_back(xname);
  return LieAlgebra::create(L.prime(), n, entries, names, std::move(name));
}

std::vector<FqMatrix> derivation_basis(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  const unsigned p = L.prime();
  if (n == 0) return {};
  // Row (r, s) holds the defect of the matrix unit E_rs on every pair i < j;
  // the left kernel is exactly the set of derivations.
  const std::size_t pairs = n * (n - 1) / 2;
  FqMatrix m(n * n, std::max<std::size_t>(pairs * n, 1), p);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      FqMatrix unit(n, n, p);
      unit.set(r, s, 1);
      std::size_t col = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const FqVector ei = L.basis_vector(i);
          const FqVector ej = L.basis_vector(j);
          const FqVector defect =
              unit.apply(L.bracket(ei, ej)) - L.bracket(unit.apply(ei), ej) - L.bracket(ei, unit.apply(ej));
          for (std::size_t k = 0; k < n; ++k) m.set(r * n + s, col++, defect[k]);
        }
      }
    }
  }
  std::vector<FqMatrix> out;
  for (const auto& combo : left_kernel(m)) {
    FqMatrix d(n, n, p);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t s = 0; s < n; ++s) d.set(r, s, combo[r * n + s]);
    }
    out.push_back(std::move(d));
  }
  return out;
}

bool is_simple(const LieAlgebra& L) {
  if (L.dim() <= 1 || L.is_abelian()) return false;
  // Any nonzero ideal contains the ideal generated by one of its vectors.
  bool simple = true;
  const Subspace whole = L.whole();
  for_each_line(whole, [&](const FqVector& v) {
    if (!simple) return;
    const Subspace line = Subspace::span(std::span<const FqVector>(&v, 1), L.dim(), L.prime());
    if (!ideal_closure(L, line).is_full()) simple = false;
  });
  return simple;
}

bool is_almost_abelian(const LieAlgebra& L) {
  const Subspace sq = bracket_spaces(L, L.whole(), L.whole());
  if (L.dim() == 0 || sq.dim() + 1 != L.dim()) return false;
  if (!bracket_spaces(L, sq, sq).is_zero()) return false;
  // Any two complements differ by an element of the abelian L^2, which acts
  // trivially on L^2, so testing one complement vector suffices.
  std::size_t free_col = 0;
  for (std::size_t r = 0; r < sq.dim() && sq.pivot(r) == free_col; ++r) ++free_col;
  const auto c = scalar_action(L, L.basis_vector(free_col), sq);
  return sq.is_zero() || (c && *c != 0);
}

bool is_supersolvable(const LieAlgebra& L) {
  if (L.dim() <= 1) return true;
  // Chief factors are determined up to isomorphism, so when L is supersolvable
  // every 1-dimensional ideal leads to a supersolvable quotient. One choice is enough.
  std::optional<Subspace> found;
  for_each_line(L.whole(), [&](const FqVector& v) {
    if (found) return;
    const Subspace line = Subspace::span(std::span<const FqVector>(&v, 1), L.dim(), L.prime());
    if (is_ideal(L, line)) found = line;
  });
  if (!found) return false;
  return is_supersolvable(quotient(L, *found).algebra);
}

StructuralFlags structural_flags(const LieAlgebra& L) {
  StructuralFlags f;
  f.is_simple = is_simple(L);
  f.is_almost_abelian = is_almost_abelian(L);
  f.is_supersolvable = is_supersolvable(L);
  f.is_three_dim_split_simple = L.dim() == 3 && f.is_simple;
  return f;
}

std::vector<std::vector<FqVector>> isomorphisms(const LieAlgebra& a, const LieAlgebra& b) {
  if (a.prime() != b.prime() || a.dim() != b.dim()) return {};
  const std::size_t n = a.dim();
  const unsigned p = a.prime();
  std::uint64_t per_vector = 1;
  for (std::size_t i = 0; i < n; ++i) per_vector *= p;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= per_vector;
    if (total > (std::uint64_t{1} << 20)) throw ResourceError("isomorphism search too large", total);
  }
  const std::vector<FqVector> all = enumerate_vectors(b.whole());
  std::vector<std::vector<FqVector>> out;
  std::vector<FqVector> images;
  // phi([e_x, e_y]) == [phi e_x, phi e_y], checked once every image involved is chosen.
  auto consistent = [&](std::size_t x, std::size_t y) {
    const FqVector src = a.basis_bracket(x, y);
    FqVector mapped(n, p);
    for (std::size_t k = 0; k < n; ++k) {
      if (src[k] == 0) continue;
      if (k >= images.size()) return true;
      mapped += images[k].scaled(src[k]);
    }
    return mapped == b.bracket(images[x], images[y]);
  };
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == n) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x + 1; y < n; ++y) {
          if (!consistent(x, y)) return;
        }
      }
      out.push_back(images);
      return;
    }
    const Subspace prev = Subspace::span(images, n, p);
    for (const FqVector& v : all) {
      if (prev.contains(v)) continue;
      images.push_back(v);
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = consistent(j, i);
      if (ok) extend(i + 1);
      images.pop_back();
    }
  };
  extend(0);
  return out;
}

}  // namespace liesublat
