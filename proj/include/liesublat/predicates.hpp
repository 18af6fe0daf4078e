#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liesublat/algebra_io.hpp"
#include "liesublat/lattice.hpp"

namespace liesublat {

enum class Predicate {
  ideal,
  modular,
  upper_modular,
  lower_modular,
  semi_modular,
  quasi_ideal,
  strong_ideal,
  strong_quasi_ideal,
  modular_star,
};

/// "modular", "um", "lm", "sm", "quasi_ideal", ... Long names such as
/// "semi_modular" are accepted too. Throws UsageError for unknown names.
Predicate parse_predicate(const std::string& name);
std::string predicate_name(Predicate p);
const std::vector<Predicate>& all_predicates();

/// A counterexample to a predicate. `law` says which defining clause fails
/// (e.g. "law1", "um", "line"); `spaces` names the subalgebras involved and
/// `vector` holds an element when the clause quantifies over elements.
struct Witness {
  std::string law;
  std::vector<std::pair<std::string, Subspace>> spaces;
  std::optional<FqVector> vector;

  const Subspace& space(const std::string& name) const;
};

struct PredicateReport {
  std::string algebra;
  Subspace subalgebra;
  std::string predicate;
  bool verdict = true;
  std::optional<Witness> witness;
};

Json report_to_json(const PredicateReport& r);
Json witness_to_json(const Witness& w);

/// Evaluates one predicate for node u. Lattice quantifiers range over the
/// nodes inside `within` (default: all of L), so passing a subalgebra S
/// evaluates the predicate in the induced lattice of S. Element quantifiers
/// (quasi-ideal, strong ideal) always refer to L.
PredicateReport evaluate(const SubalgebraLattice& lat, NodeId u, Predicate pred,
                         std::optional<NodeId> within = std::nullopt);

PredicateReport is_modular(const SubalgebraLattice& lat, NodeId u, std::optional<NodeId> within = std::nullopt);
PredicateReport is_upper_modular(const SubalgebraLattice& lat, NodeId u, std::optional<NodeId> within = std::nullopt);
PredicateReport is_lower_modular(const SubalgebraLattice& lat, NodeId u, std::optional<NodeId> within = std::nullopt);
PredicateReport is_semi_modular(const SubalgebraLattice& lat, NodeId u, std::optional<NodeId> within = std::nullopt);
PredicateReport is_modular_star(const SubalgebraLattice& lat, NodeId u, std::optional<NodeId> within = std::nullopt);
PredicateReport is_quasi_ideal(const SubalgebraLattice& lat, NodeId u);
PredicateReport is_strong_ideal(const SubalgebraLattice& lat, NodeId u);
PredicateReport is_strong_quasi_ideal(const SubalgebraLattice& lat, NodeId u);

/// [U, Fx] in U + Fx for every x in L.
bool is_quasi_ideal(const LieAlgebra& L, const Subspace& u, FqVector* witness = nullptr);
/// The literal definition: [U, V] in U + V for every subspace V. dim L <= 4.
bool is_quasi_ideal_bruteforce(const LieAlgebra& L, const Subspace& u);

/// Non-solvable and every proper subalgebra has dimension at most one.
bool is_mu_algebra(const SubalgebraLattice& lat);
/// Every nonzero x has some y with <x, y> = L. The witness is an x without a
/// mate.
PredicateReport has_one_and_half_generation(const SubalgebraLattice& lat);

/// Re-derives a false verdict from its witness alone, using lie-core
/// operations rather than the lattice. Returns true when the witness really
/// violates the definition.
bool witness_reproduces(const LieAlgebra& L, const PredicateReport& r,
                        const std::optional<Subspace>& within = std::nullopt);

/// a is a maximal subalgebra of b, checked as <a, x> = b for every x in b \ a.
bool is_maximal_direct(const LieAlgebra& L, const Subspace& a, const Subspace& b);

}  // namespace liesublat
