#include "liesublat/subspace.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace liesublat {

namespace {

std::size_t leading_lane(std::uint64_t w) noexcept {
  return static_cast<std::size_t>(std::countr_zero(w)) / 8;
}

void check_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.modulus() != b.modulus()) {
    throw UsageError("subspaces live in different ambient spaces");
  }
}

}  // namespace

Subspace::Subspace(std::size_t n, unsigned p) {
  require_supported_prime(p);
  if (n > kMaxDim) throw UsageError("ambient dimension " + std::to_string(n) + " exceeds " + std::to_string(kMaxDim));
  n_ = static_cast<std::uint8_t>(n);
  p_ = static_cast<std::uint8_t>(p);
}

Subspace Subspace::full(std::size_t n, unsigned p) {
  Subspace s(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    s.rows_[i] = std::uint64_t{1} << (8 * i);
    s.pivots_[i] = static_cast<std::uint8_t>(i);
  }
  s.k_ = static_cast<std::uint8_t>(n);
  return s;
}

Subspace Subspace::from_rref_words(std::size_t n, unsigned p, std::span<const std::uint64_t> rows) {
  Subspace s(n, p);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s.rows_[i] = rows[i];
    s.pivots_[i] = static_cast<std::uint8_t>(leading_lane(rows[i]));
  }
  s.k_ = static_cast<std::uint8_t>(rows.size());
  return s;
}

Subspace Subspace::span(std::span<const FqVector> vectors, std::size_t n, unsigned p) {
  Subspace s(n, p);
  for (const FqVector& v : vectors) {
    s.check_vector(v);
    s.absorb_word(v.word());
    if (s.k_ == n) break;
  }
  return s;
}

bool Subspace::absorb_word(std::uint64_t w) noexcept {
  // Incremental Gauss-Jordan: the rows stay in RREF after every insertion.
  w = reduce_word(w);
  if (w == 0) return false;
  const std::size_t lead = leading_lane(w);
  w = detail::lanes_scale(w, detail::inv_unchecked(detail::lane(w, lead), p_), p_);
  for (std::size_t i = 0; i < k_; ++i) {
    const Residue c = detail::lane(rows_[i], lead);
    if (c != 0) rows_[i] = detail::lanes_axpy(rows_[i], detail::neg(c, p_), w, p_);
  }
  std::size_t pos = 0;
  while (pos < k_ && pivots_[pos] < lead) ++pos;
  for (std::size_t i = k_; i > pos; --i) {
    rows_[i] = rows_[i - 1];
    pivots_[i] = pivots_[i - 1];
  }
  rows_[pos] = w;
  pivots_[pos] = static_cast<std::uint8_t>(lead);
  ++k_;
  return true;
}

Subspace subspace_from_vectors(std::span<const FqVector> vectors, std::size_t n, unsigned p) {
  return Subspace::span(vectors, n, p);
}

void Subspace::check_vector(const FqVector& v) const {
  if (v.size() != n_ || v.modulus() != p_) {
    throw UsageError("vector " + v.to_string() + " is not in GF(" + std::to_string(p_) + ")^" +
                     std::to_string(n_));
  }
}

std::vector<FqVector> Subspace::basis() const {
  std::vector<FqVector> out;
  out.reserve(k_);
  for (std::size_t i = 0; i < k_; ++i) out.push_back(row(i));
  return out;
}

std::vector<std::vector<int>> Subspace::rows_as_digits() const {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < k_; ++i) out.push_back(row(i).coords());
  return out;
}

FqVector Subspace::reduce(const FqVector& v) const {
  check_vector(v);
  return FqVector::from_word(reduce_word(v.word()), n_, p_);
}

bool Subspace::contains(const FqVector& v) const {
  check_vector(v);
  return contains_word(v.word());
}

bool Subspace::is_subset_of(const Subspace& other) const {
  check_ambient(*this, other);
  if (k_ > other.k_) return false;
  for (std::size_t i = 0; i < k_; ++i) {
    if (!other.contains_word(rows_[i])) return false;
  }
  return true;
}

std::vector<Residue> Subspace::coordinates(const FqVector& v) const {
  check_vector(v);
  if (!contains_word(v.word())) throw UsageError("vector " + v.to_string() + " is not in the subspace");
  std::vector<Residue> out(k_);
  for (std::size_t i = 0; i < k_; ++i) out[i] = v[pivots_[i]];
  return out;
}

std::size_t Subspace::hash() const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ (std::uint64_t{n_} << 16) ^ (std::uint64_t{p_} << 8) ^ k_;
  for (std::size_t i = 0; i < k_; ++i) {
    h ^= rows_[i] + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

bool operator<(const Subspace& a, const Subspace& b) noexcept {
  if (a.k_ != b.k_) return a.k_ < b.k_;
  for (std::size_t i = 0; i < a.k_; ++i) {
    // Compare as digit strings, coordinate 0 first.
    for (std::size_t c = 0; c < a.n_; ++c) {
      const Residue x = detail::lane(a.rows_[i], c);
      const Residue y = detail::lane(b.rows_[i], c);
      if (x != y) return x > y;  // pivot-earlier rows sort first
    }
  }
  return false;
}

std::string Subspace::to_string() const {
  std::ostringstream os;
  os << "span{";
  for (std::size_t i = 0; i < k_; ++i) os << (i ? "," : "") << row(i).to_string();
  os << '}';
  return os.str();
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  check_ambient(a, b);
  if (a.is_full() || b.is_zero()) return a;
  if (b.is_full() || a.is_zero()) return b;
  std::vector<FqVector> gens = a.basis();
  for (std::size_t i = 0; i < b.dim(); ++i) gens.push_back(b.row(i));
  return Subspace::span(gens, a.ambient_dim(), a.modulus());
}

Subspace subspace_meet(const Subspace& a, const Subspace& b) {
  check_ambient(a, b);
  if (a.is_subset_of(b)) return a;
  if (b.is_subset_of(a)) return b;
  return kernel_within(a, [&b](const FqVector& v) {
    const FqVector r = b.reduce(v);
    std::vector<Residue> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i];
    return out;
  });
}

Subspace kernel_within(const Subspace& domain,
                       const std::function<std::vector<Residue>(const FqVector&)>& images) {
  const std::size_t n = domain.ambient_dim();
  const unsigned p = domain.modulus();
  if (domain.is_zero()) return domain;
  std::vector<std::vector<Residue>> rows;
  rows.reserve(domain.dim());
  for (std::size_t i = 0; i < domain.dim(); ++i) rows.push_back(images(domain.row(i)));
  const std::size_t width = rows.front().size();
  FqMatrix m(domain.dim(), width, p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) throw UsageError("kernel_within: image length varies");
    for (std::size_t c = 0; c < width; ++c) m.set(r, c, rows[r][c]);
  }
  std::vector<FqVector> gens;
  for (const auto& combo : left_kernel(m)) {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < combo.size(); ++i) w = detail::lanes_axpy(w, combo[i], domain.row_word(i), p);
    gens.push_back(FqVector::from_word(w, n, p));
  }
  return Subspace::span(gens, n, p);
}

// ---- enumeration ------------------------------------------------------------

bool vector_enumeration_allowed(std::size_t dim, unsigned p) noexcept {
  // p^dim <= 2^24
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    count *= p;
    if (count > (std::uint64_t{1} << 24)) return false;
  }
  return true;
}

void for_each_vector(const Subspace& s, const std::function<void(const FqVector&)>& visit) {
  const std::size_t k = s.dim();
  const unsigned p = s.modulus();
  if (!vector_enumeration_allowed(k, p)) {
    std::uint64_t est = 1;
    for (std::size_t i = 0; i < k && est < (std::uint64_t{1} << 40); ++i) est *= p;
    throw ResourceError("vector enumeration exceeds 2^24 members", est);
  }
  std::array<Residue, kMaxDim> coeff{};
  std::uint64_t w = 0;
  while (true) {
    visit(FqVector::from_word(w, s.ambient_dim(), p));
    // Odometer with the last coefficient fastest.
    std::size_t t = k;
    while (t > 0) {
      --t;
      if (++coeff[t] < p) {
        w = detail::lanes_add(w, s.row_word(t), p);
        break;
      }
      coeff[t] = 0;
      w = detail::lanes_add(w, s.row_word(t), p);  // p-th addition wraps this term back to 0
      if (t == 0) return;
    }
    if (k == 0) return;
  }
}

std::vector<FqVector> enumerate_vectors(const Subspace& s) {
  std::vector<FqVector> out;
  for_each_vector(s, [&out](const FqVector& v) { out.push_back(v); });
  return out;
}

void for_each_line(const Subspace& s, const std::function<void(const FqVector&)>& visit) {
  // Normalized vectors have leading coefficient 1 over the RREF basis too.
  const std::size_t k = s.dim();
  const unsigned p = s.modulus();
  for (std::size_t lead = 0; lead < k; ++lead) {
    const std::size_t tail = k - lead - 1;
    std::array<Residue, kMaxDim> coeff{};
    std::uint64_t w = s.row_word(lead);
    while (true) {
      visit(FqVector::from_word(w, s.ambient_dim(), p));
      std::size_t t = tail;
      bool done = true;
      while (t > 0) {
        --t;
        const std::size_t row = lead + 1 + t;
        w = detail::lanes_add(w, s.row_word(row), p);
        if (++coeff[t] < p) {
          done = false;
          break;
        }
        coeff[t] = 0;
      }
      if (done) break;
    }
  }
}

std::vector<std::vector<std::uint8_t>> pivot_patterns(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::uint8_t>> out;
  if (k > n) return out;
  std::vector<std::uint8_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = static_cast<std::uint8_t>(i);
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = static_cast<std::uint8_t>(cur[j - 1] + 1);
  }
  return out;
}

namespace {

struct FreeSlot {
  std::uint8_t row;
  std::uint8_t col;
};

std::vector<FreeSlot> free_slots(std::size_t n, std::span<const std::uint8_t> pivots) {
  std::vector<FreeSlot> slots;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    for (std::size_t c = pivots[r] + 1u; c < n; ++c) {
      if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) {
        slots.push_back({static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(c)});
      }
    }
  }
  return slots;
}

}  // namespace

std::uint64_t pattern_size(std::size_t n, unsigned p, std::span<const std::uint8_t> pivots) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < free_slots(n, pivots).size(); ++i) count *= p;
  return count;
}

void for_each_subspace_with_pivots(std::size_t n, unsigned p, std::span<const std::uint8_t> pivots,
                                   const std::function<void(const Subspace&)>& visit) {
  require_supported_prime(p);
  if (n > kMaxDim) throw UsageError("ambient dimension exceeds " + std::to_string(kMaxDim));
  const std::size_t k = pivots.size();
  const std::vector<FreeSlot> slots = free_slots(n, pivots);
  std::array<std::uint64_t, kMaxDim> rows{};
  for (std::size_t r = 0; r < k; ++r) rows[r] = std::uint64_t{1} << (8 * pivots[r]);
  std::vector<Residue> digit(slots.size(), 0);
  const std::span<const std::uint64_t> view(rows.data(), k);
  while (true) {
    visit(Subspace::from_rref_words(n, p, view));
    std::size_t t = slots.size();
    bool done = true;
    while (t > 0) {
      --t;
      const FreeSlot s = slots[t];
      const std::uint64_t unit = std::uint64_t{1} << (8 * s.col);
      if (++digit[t] < p) {
        rows[s.row] += unit;
        done = false;
        break;
      }
      digit[t] = 0;
      rows[s.row] -= unit * (p - 1);
    }
    if (done) return;
  }
}

void for_each_subspace(std::size_t n, unsigned p, std::optional<std::size_t> k,
                       const std::function<void(const Subspace&)>& visit, std::uint64_t budget) {
  require_supported_prime(p);
  if (n > kMaxDim) throw UsageError("ambient dimension exceeds " + std::to_string(kMaxDim));
  if (k && *k > n) throw UsageError("subspace dimension exceeds ambient dimension");
  const BigInt count = subspace_count(n, p, k);
  if (count > budget) {
    throw ResourceError("subspace enumeration over budget " + std::to_string(budget),
                        count > BigInt(UINT64_MAX) ? UINT64_MAX : count.convert_to<std::uint64_t>());
  }
  const std::size_t lo = k ? *k : 0;
  const std::size_t hi = k ? *k : n;
  for (std::size_t d = lo; d <= hi; ++d) {
    for (const auto& pat : pivot_patterns(n, d)) for_each_subspace_with_pivots(n, p, pat, visit);
  }
}

std::vector<Subspace> enumerate_subspaces(std::size_t n, unsigned p, std::optional<std::size_t> k,
                                          std::uint64_t budget) {
  std::vector<Subspace> out;
  for_each_subspace(n, p, k, [&out](const Subspace& s) { out.push_back(s); }, budget);
  return out;
}

BigInt gaussian_binomial(std::size_t n, std::size_t k, unsigned q) {
  if (k > n) throw UsageError("gaussian_binomial: k = " + std::to_string(k) + " > n = " + std::to_string(n));
  if (q < 2) throw UsageError("gaussian_binomial: q must be at least 2");
  BigInt num = 1;
  BigInt den = 1;
  const BigInt bq = q;
  for (std::size_t i = 0; i < k; ++i) {
    num *= boost::multiprecision::pow(bq, static_cast<unsigned>(n - i)) - 1;
    den *= boost::multiprecision::pow(bq, static_cast<unsigned>(i + 1)) - 1;
  }
  return num / den;
}

BigInt subspace_count(std::size_t n, unsigned q, std::optional<std::size_t> k) {
  if (k) return gaussian_binomial(n, *k, q);
  BigInt total = 0;
  for (std::size_t d = 0; d <= n; ++d) total += gaussian_binomial(n, d, q);
  return total;
}

}  // namespace liesublat
