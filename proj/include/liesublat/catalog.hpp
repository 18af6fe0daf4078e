#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "liesublat/lie_algebra.hpp"

namespace liesublat {

struct CatalogParams {
  std::optional<std::size_t> dim;
  std::optional<unsigned> p;
  std::optional<std::uint64_t> seed;
};

struct CatalogEntry {
  std::string name;
  std::string params;      // human summary of accepted parameters
  std::string provenance;  // where the structure constants come from
  std::function<LieAlgebra(const CatalogParams&)> builder;
};

const std::vector<CatalogEntry>& catalog();
/// Throws UsageError for an unknown name or invalid parameters.
LieAlgebra catalog_build(const std::string& name, const CatalogParams& params = {});

/// Basis a, b, c over GF(2) with [a,b] = c, [b,c] = b, [a,c] = a.
LieAlgebra algebra_K();
/// psl_3 over GF(3) in the signed basis e_-3, ..., e_3 (indices 0..6).
LieAlgebra psl3_char3();
/// Basis index of e_i, i in -3..3.
std::size_t psl3_index(int i);
/// F e_0 + F e_i + F e_j.
Subspace psl3_B(int i, int j);

/// x, e_1, ..., e_{n-1} with [x, e_i] = e_i.
LieAlgebra almost_abelian(std::size_t n, unsigned p);
LieAlgebra heisenberg(unsigned p);
/// x, y with [x, y] = y.
LieAlgebra nonabelian2(unsigned p);
/// h, e, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h. Requires p >= 3.
LieAlgebra sl2(unsigned p);
/// W(1:1): e_-1, ..., e_{p-2} with [e_i, e_j] = (j - i) e_{i+j}. Requires p in {5, 7}.
LieAlgebra witt(unsigned p);
/// span{e_0, ..., e_{p-2}} inside witt(p).
Subspace witt_L0(unsigned p);
/// Upper triangular n x n matrices (dim n(n+1)/2).
LieAlgebra upper_triangular(std::size_t n, unsigned p);
/// Strictly upper triangular n x n matrices (dim n(n-1)/2).
LieAlgebra strictly_upper(std::size_t n, unsigned p);

/// Iterated one-dimensional extensions of an abelian line by derivations
/// drawn at random from Der. Solvable by construction. dim in 1..6.
LieAlgebra random_solvable(std::size_t dim, unsigned p, std::uint64_t seed);

/// Whether every structure tensor of this size may be visited:
/// p^(dim * dim(dim-1)/2) <= 2^25.
bool structure_enumeration_allowed(std::size_t dim, unsigned p) noexcept;
/// Visits every Jacobi-valid tensor once, in counter order over the
/// coefficients of [e_i, e_j], i < j (last coefficient fastest). Returns the
/// number of valid tensors. Throws ResourceError past the guard.
std::uint64_t enumerate_structures(std::size_t dim, unsigned p,
                                   const std::function<void(const LieAlgebra&)>& visit = {});

}  // namespace liesublat
