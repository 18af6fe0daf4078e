#include "liesublat/field.hpp"

#include <algorithm>
#include <sstream>

namespace liesublat {

void require_supported_prime(unsigned p) {
  if (!is_supported_prime(p)) {
    throw UsageError("unsupported modulus " + std::to_string(p) + " (expected 2, 3, 5 or 7)");
  }
}

// ---- FqScalar ---------------------------------------------------------------

FqScalar::FqScalar(long long value, unsigned p) : value_(0), p_(static_cast<std::uint8_t>(p)) {
  require_supported_prime(p);
  value_ = reduce_mod(value, p);
}

FqScalar FqScalar::inv() const {
  if (value_ == 0) throw DomainError("inverse of zero in GF(" + std::to_string(p_) + ")");
  return FqScalar(detail::inv_unchecked(value_, p_), p_, Trusted{});
}

namespace {
void check_same_modulus(unsigned a, unsigned b) {
  if (a != b) {
    throw UsageError("modulus mismatch: GF(" + std::to_string(a) + ") vs GF(" + std::to_string(b) + ")");
  }
}
}  // namespace

FqScalar operator+(FqScalar a, FqScalar b) {
  check_same_modulus(a.p_, b.p_);
  return FqScalar(detail::add(a.value_, b.value_, a.p_), a.p_, FqScalar::Trusted{});
}

FqScalar operator-(FqScalar a, FqScalar b) {
  check_same_modulus(a.p_, b.p_);
  return FqScalar(detail::sub(a.value_, b.value_, a.p_), a.p_, FqScalar::Trusted{});
}

FqScalar operator*(FqScalar a, FqScalar b) {
  check_same_modulus(a.p_, b.p_);
  return FqScalar(detail::mul(a.value_, b.value_, a.p_), a.p_, FqScalar::Trusted{});
}

// ---- FqVector ---------------------------------------------------------------

FqVector::FqVector(std::size_t n, unsigned p) {
  require_supported_prime(p);
  if (n > kMaxDim) throw UsageError("vector length " + std::to_string(n) + " exceeds " + std::to_string(kMaxDim));
  n_ = static_cast<std::uint8_t>(n);
  p_ = static_cast<std::uint8_t>(p);
}

FqVector::FqVector(std::initializer_list<long long> coords, unsigned p)
    : FqVector(from_coords(std::span<const long long>(coords.begin(), coords.size()), p)) {}

FqVector FqVector::from_coords(std::span<const long long> coords, unsigned p) {
  FqVector v(coords.size(), p);
  for (std::size_t i = 0; i < coords.size(); ++i) v.set(i, coords[i]);
  return v;
}

FqVector FqVector::unit(std::size_t n, unsigned p, std::size_t i) {
  FqVector v(n, p);
  v.set(i, 1);
  return v;
}

FqScalar FqVector::at(std::size_t i) const {
  if (i >= n_) throw UsageError("coordinate index out of range");
  return FqScalar((*this)[i], p_);
}

void FqVector::set(std::size_t i, long long value) {
  if (i >= n_) throw UsageError("coordinate index out of range");
  word_ = detail::with_lane(word_, i, reduce_mod(value, p_));
}

std::size_t FqVector::leading_index() const noexcept {
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)[i] != 0) return i;
  }
  return n_;
}

FqVector FqVector::normalized() const noexcept {
  const std::size_t lead = leading_index();
  if (lead == n_) return *this;
  return scaled(detail::inv_unchecked((*this)[lead], p_));
}

std::vector<int> FqVector::coords() const {
  std::vector<int> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i];
  return out;
}

void FqVector::check_compatible(const FqVector& o) const {
  check_same_modulus(p_, o.p_);
  if (n_ != o.n_) {
    throw UsageError("dimension mismatch: " + std::to_string(n_) + " vs " + std::to_string(o.n_));
  }
}

FqVector& FqVector::operator+=(const FqVector& o) {
  check_compatible(o);
  word_ = detail::lanes_add(word_, o.word_, p_);
  return *this;
}

FqVector& FqVector::operator-=(const FqVector& o) {
  check_compatible(o);
  word_ = detail::lanes_add(word_, detail::lanes_neg(o.word_, p_), p_);
  return *this;
}

std::string FqVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < n_; ++i) os << (i ? "," : "") << int((*this)[i]);
  os << ')';
  return os.str();
}

// ---- FqMatrix ---------------------------------------------------------------

FqMatrix::FqMatrix(std::size_t rows, std::size_t cols, unsigned p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
  require_supported_prime(p);
}

FqMatrix FqMatrix::from_rows(const std::vector<std::vector<long long>>& rows, unsigned p) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  FqMatrix m(rows.size(), cols, p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw UsageError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

FqMatrix FqMatrix::identity(std::size_t n, unsigned p) {
  FqMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

bool FqMatrix::row_is_zero(std::size_t r) const noexcept {
  auto rw = row(r);
  return std::all_of(rw.begin(), rw.end(), [](Residue v) { return v == 0; });
}

FqVector FqMatrix::apply(const FqVector& v) const {
  if (v.size() != cols_ || v.modulus() != p_ || rows_ > kMaxDim) {
    throw UsageError("matrix/vector shape mismatch");
  }
  FqVector out(rows_, p_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Residue acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc = detail::add(acc, detail::mul((*this)(i, j), v[j], p_), p_);
    out.set(i, acc);
  }
  return out;
}

RrefResult rref(FqMatrix m) {
  const unsigned p = m.modulus();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r) {
      auto a = m.row(sel);
      auto b = m.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto prow = m.row(r);
    const Residue s = detail::inv_unchecked(prow[c], p);
    for (auto& x : prow) x = detail::mul(x, s, p);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      auto irow = m.row(i);
      const Residue f = irow[c];
      if (f == 0) continue;
      const Residue nf = detail::neg(f, p);
      for (std::size_t j = c; j < m.cols(); ++j) {
        irow[j] = detail::add(irow[j], detail::mul(nf, prow[j], p), p);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return RrefResult{std::move(m), r, std::move(pivots)};
}

std::vector<std::vector<Residue>> left_kernel(const FqMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  FqMatrix aug(rows, cols + rows, m.modulus());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) aug.set(r, c, m(r, c));
    aug.set(r, cols + r, 1);
  }
  RrefResult red = rref(std::move(aug));
  std::vector<std::vector<Residue>> out;
  for (std::size_t r = 0; r < rows; ++r) {
    bool left_zero = true;
    for (std::size_t c = 0; c < cols && left_zero; ++c) left_zero = red.matrix(r, c) == 0;
    if (!left_zero) continue;
    auto rw = red.matrix.row(r);
    std::vector<Residue> combo(rw.begin() + static_cast<std::ptrdiff_t>(cols), rw.end());
    if (std::any_of(combo.begin(), combo.end(), [](Residue v) { return v != 0; })) {
      out.push_back(std::move(combo));
    }
  }
  return out;
}

}  // namespace liesublat
