#include "liesublat/predicates.hpp"

#include <algorithm>
#include <map>

#include "liesublat/errors.hpp"

namespace liesublat {

namespace {

const std::map<std::string, Predicate>& predicate_names() {
  static const std::map<std::string, Predicate> names = {
      {"ideal", Predicate::ideal},
      {"modular", Predicate::modular},
      {"um", Predicate::upper_modular},
      {"upper_modular", Predicate::upper_modular},
      {"lm", Predicate::lower_modular},
      {"lower_modular", Predicate::lower_modular},
      {"sm", Predicate::semi_modular},
      {"semi_modular", Predicate::semi_modular},
      {"quasi_ideal", Predicate::quasi_ideal},
      {"strong_ideal", Predicate::strong_ideal},
      {"strong_quasi_ideal", Predicate::strong_quasi_ideal},
      {"modular_star", Predicate::modular_star},
      {"modular*", Predicate::modular_star},
  };
  return names;
}

PredicateReport make_report(const SubalgebraLattice& lat, NodeId u, Predicate pred) {
  PredicateReport r;
  r.algebra = lat.algebra().name();
  r.subalgebra = lat.node(u);
  r.predicate = predicate_name(pred);
  return r;
}

void fail(PredicateReport& r, Witness w) {
  r.verdict = false;
  r.witness = std::move(w);
}

NodeId ambient(const SubalgebraLattice& lat, NodeId u, std::optional<NodeId> within) {
  const NodeId s = within.value_or(lat.top());
  if (!lat.leq(u, s)) throw UsageError("subalgebra is not inside the ambient node");
  return s;
}

/// [U, x] in U + Fx, on packed words.
bool quasi_ideal_at(const LieAlgebra& L, const Subspace& u, std::uint64_t x) {
  Subspace ux = u;
  if (!ux.absorb_word(x)) return true;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    if (!ux.contains_word(L.bracket_word(u.row_word(i), x))) return false;
  }
  return true;
}

bool ideal_line(const LieAlgebra& L, std::uint64_t x) {
  const Subspace line = Subspace::from_rref_words(L.dim(), L.prime(), {&x, 1});
  for (std::size_t i = 0; i < L.dim(); ++i) {
    if (!line.contains_word(L.bracket_word(x, L.basis_vector(i).word()))) return false;
  }
  return true;
}

Witness pair_witness(const SubalgebraLattice& lat, std::string law, NodeId b, NodeId c) {
  return Witness{std::move(law), {{"B", lat.node(b)}, {"C", lat.node(c)}}, std::nullopt};
}

/// First clause of the modularity laws (shared by modular and modular*).
/// For B incomparable with U it is enough to take C in [B, <U,B>], where
/// the law reads C = <B, U n C>.
std::optional<Witness> law1(const SubalgebraLattice& lat, NodeId u, NodeId b) {
  const NodeId j = lat.join(u, b);
  std::optional<Witness> w;
  lat.all_between(b, j, [&](NodeId c) {
    if (lat.join(b, lat.meet(u, c)) == c) return true;
    w = pair_witness(lat, "law1", b, c);
    return false;
  });
  return w;
}

bool comparable(const SubalgebraLattice& lat, NodeId a, NodeId b) { return lat.leq(a, b) || lat.leq(b, a); }

}  // namespace

Predicate parse_predicate(const std::string& name) {
  auto it = predicate_names().find(name);
  if (it == predicate_names().end()) throw UsageError("unknown predicate '" + name + "'");
  return it->second;
}

std::string predicate_name(Predicate p) {
  switch (p) {
    case Predicate::ideal: return "ideal";
    case Predicate::modular: return "modular";
    case Predicate::upper_modular: return "um";
    case Predicate::lower_modular: return "lm";
    case Predicate::semi_modular: return "sm";
    case Predicate::quasi_ideal: return "quasi_ideal";
    case Predicate::strong_ideal: return "strong_ideal";
    case Predicate::strong_quasi_ideal: return "strong_quasi_ideal";
    case Predicate::modular_star: return "modular_star";
  }
  return "?";
}

const std::vector<Predicate>& all_predicates() {
  static const std::vector<Predicate> all = {
      Predicate::ideal,        Predicate::modular,      Predicate::upper_modular,      Predicate::lower_modular,
      Predicate::semi_modular, Predicate::quasi_ideal,  Predicate::strong_ideal,       Predicate::strong_quasi_ideal,
      Predicate::modular_star};
  return all;
}

const Subspace& Witness::space(const std::string& name) const {
  for (const auto& [n, s] : spaces) {
    if (n == name) return s;
  }
  throw UsageError("witness has no space named " + name);
}

Json witness_to_json(const Witness& w) {
  Json j{{"law", w.law}};
  for (const auto& [name, s] : w.spaces) j[name] = s.rows_as_digits();
  if (w.vector) j["x"] = w.vector->coords();
  return j;
}

Json report_to_json(const PredicateReport& r) {
  return Json{{"algebra", r.algebra},
              {"subalgebra", r.subalgebra.rows_as_digits()},
              {"predicate", r.predicate},
              {"verdict", r.verdict},
              {"witness", r.witness ? witness_to_json(*r.witness) : Json(nullptr)}};
}

// ---- lattice predicates ---------------------------------------------------------

PredicateReport is_modular(const SubalgebraLattice& lat, NodeId u, std::optional<NodeId> within) {
  PredicateReport r = make_report(lat, u, Predicate::modular);
  const NodeId s = ambient(lat, u, within);
  if (u == s || u == lat.bottom()) return r;
  lat.all_between(lat.bottom(), s, [&](NodeId b) {
    if (comparable(lat, u, b)) return true;
    if (auto w = law1(lat, u, b)) {
      fail(r, std::move(*w));
      return false;
    }
    // Second clause, C above U: enough to take C in [U, <U,B>], where it
    // reads C = <U, B n C>.
    const NodeId j = lat.join(u, b);
    return lat.all_between(u, j, [&](NodeId c) {
      if (lat.join(u, lat.meet(b, c)) == c) return true;
      fail(r, pair_witness(lat, "law2", b, c));
      return false;
    });
  });
  return r;
}

PredicateReport is_modular_star(const SubalgebraLattice& lat, NodeId u, std::optional<NodeId> within) {
  PredicateReport r = make_report(lat, u, Predicate::modular_star);
  const NodeId s = ambient(lat, u, within);
  if (u == s || u == lat.bottom()) return r;
  lat.all_between(lat.bottom(), s, [&](NodeId b) {
    if (comparable(lat, u, b)) return true;
    if (auto w = law1(lat, u, b)) {
      fail(r, std::move(*w));
      return false;
    }
    // Dual of the second clause, C below U: enough to take C in [U n B, U],
    // where it reads C = <B, C> n U.
    const NodeId m = lat.meet(u, b);
    return lat.all_between(m, u, [&](NodeId c) {
      if (lat.meet(u, lat.join(b, c)) == c) return true;
      fail(r, pair_witness(lat, "law2", b, c));
      return false;
    });
  });
  return r;
}

namespace {

PredicateReport covering_scan(const SubalgebraLattice& lat, NodeId u, std::optional<NodeId> within, Predicate pred,
                              bool check_um, bool check_lm) {
  PredicateReport r = make_report(lat, u, pred);
  const NodeId s = ambient(lat, u, within);
  if (u == s || u == lat.bottom()) return r;
  lat.all_between(lat.bottom(), s, [&](NodeId b) {
    // B comparable with U never violates either condition.
    if (comparable(lat, u, b)) return true;
    const NodeId m = lat.meet(u, b);
    const NodeId j = lat.join(u, b);
    const bool lower = lat.is_maximal_in(m, b);
    const bool upper = lat.is_maximal_in(u, j);
    std::string law;
    if (check_um && lower && !upper) law = "um";
    else if (check_lm && upper && !lower) law = "lm";
    else return true;
    fail(r, Witness{law, {{"B", lat.node(b)}, {"U_meet_B", lat.node(m)}, {"U_join_B", lat.node(j)}}, std::nullopt});
    return false;
  });
  return r;
}

}  // namespace

PredicateReport is_upper_modular(const SubalgebraLattice& lat, NodeId u, std::optional<NodeId> within) {
  return covering_scan(lat, u, within, Predicate::upper_modular, true, false);
}

PredicateReport is_lower_modular(const SubalgebraLattice& lat, NodeId u, std::optional<NodeId> within) {
  return covering_scan(lat, u, within, Predicate::lower_modular, false, true);
}

PredicateReport is_semi_modular(const SubalgebraLattice& lat, NodeId u, std::optional<NodeId> within) {
  return covering_scan(lat, u, within, Predicate::semi_modular, true, true);
}

// ---- element predicates ---------------------------------------------------------

bool is_quasi_ideal(const LieAlgebra& L, const Subspace& u, FqVector* witness) {
  L.check_space(u);
  if (!is_subalgebra(L, u)) throw UsageError("quasi-ideal test needs a subalgebra");
  bool ok = true;
  // for_each_line cannot stop early; the flag skips the remaining work.
  for_each_line(L.whole(), [&](const FqVector& x) {
    if (!ok || quasi_ideal_at(L, u, x.word())) return;
    ok = false;
    if (witness) *witness = x;
  });
  return ok;
}

bool is_quasi_ideal_bruteforce(const LieAlgebra& L, const Subspace& u) {
  L.check_space(u);
  if (L.dim() > 4) {
    throw ResourceError("brute-force quasi-ideal check is limited to dim <= 4",
                        static_cast<std::uint64_t>(subspace_count(L.dim(), L.prime())));
  }
  bool ok = true;
  for_each_subspace(L.dim(), L.prime(), std::nullopt, [&](const Subspace& v) {
    if (!ok) return;
    const Subspace sum = subspace_sum(u, v);
    ok = bracket_spaces(L, u, v).is_subset_of(sum);
  });
  return ok;
}

PredicateReport is_quasi_ideal(const SubalgebraLattice& lat, NodeId u) {
  PredicateReport r = make_report(lat, u, Predicate::quasi_ideal);
  const LieAlgebra& L = lat.algebra();
  const Subspace& us = lat.node(u);
  const auto [first, last] = lat.dim_range(1);
  for (NodeId l = first; l < last; ++l) {
    const std::uint64_t x = lat.node(l).row_word(0);
    if (!quasi_ideal_at(L, us, x)) {
      fail(r, Witness{"quasi_ideal", {}, FqVector::from_word(x, L.dim(), L.prime())});
      break;
    }
  }
  return r;
}

PredicateReport is_strong_ideal(const SubalgebraLattice& lat, NodeId u) {
  PredicateReport r = make_report(lat, u, Predicate::strong_ideal);
  const LieAlgebra& L = lat.algebra();
  lat.all_between(lat.bottom(), u, [&](NodeId l) {
    if (lat.dim(l) != 1) return true;
    const std::uint64_t x = lat.node(l).row_word(0);
    if (ideal_line(L, x)) return true;
    fail(r, Witness{"line", {}, FqVector::from_word(x, L.dim(), L.prime())});
    return false;
  });
  return r;
}

PredicateReport is_strong_quasi_ideal(const SubalgebraLattice& lat, NodeId u) {
  PredicateReport r = make_report(lat, u, Predicate::strong_quasi_ideal);
  const LieAlgebra& L = lat.algebra();
  lat.all_between(lat.bottom(), u, [&](NodeId l) {
    if (lat.dim(l) != 1) return true;
    if (is_quasi_ideal(lat, l).verdict) return true;
    fail(r, Witness{"line", {}, FqVector::from_word(lat.node(l).row_word(0), L.dim(), L.prime())});
    return false;
  });
  return r;
}

namespace {

PredicateReport ideal_report(const SubalgebraLattice& lat, NodeId u) {
  PredicateReport r = make_report(lat, u, Predicate::ideal);
  const LieAlgebra& L = lat.algebra();
  const Subspace& us = lat.node(u);
  for (std::size_t i = 0; i < L.dim() && r.verdict; ++i) {
    const std::uint64_t e = L.basis_vector(i).word();
    for (std::size_t k = 0; k < us.dim(); ++k) {
      if (!us.contains_word(L.bracket_word(us.row_word(k), e))) {
        fail(r, Witness{"ideal", {}, L.basis_vector(i)});
        break;
      }
    }
  }
  return r;
}

}  // namespace

PredicateReport evaluate(const SubalgebraLattice& lat, NodeId u, Predicate pred, std::optional<NodeId> within) {
  switch (pred) {
    case Predicate::ideal: return ideal_report(lat, u);
    case Predicate::modular: return is_modular(lat, u, within);
    case Predicate::upper_modular: return is_upper_modular(lat, u, within);
    case Predicate::lower_modular: return is_lower_modular(lat, u, within);
    case Predicate::semi_modular: return is_semi_modular(lat, u, within);
    case Predicate::quasi_ideal: return is_quasi_ideal(lat, u);
    case Predicate::strong_ideal: return is_strong_ideal(lat, u);
    case Predicate::strong_quasi_ideal: return is_strong_quasi_ideal(lat, u);
    case Predicate::modular_star: return is_modular_star(lat, u, within);
  }
  throw UsageError("unknown predicate");
}

// ---- whole-algebra properties ---------------------------------------------------

bool is_mu_algebra(const SubalgebraLattice& lat) {
  const LieAlgebra& L = lat.algebra();
  if (is_solvable(L)) return false;
  for (NodeId id = 0; id < lat.top(); ++id) {
    if (lat.dim(id) > 1) return false;
  }
  return true;
}

PredicateReport has_one_and_half_generation(const SubalgebraLattice& lat) {
  const LieAlgebra& L = lat.algebra();
  if (!vector_enumeration_allowed(L.dim(), L.prime())) {
    throw ResourceError("one-and-a-half generation search exceeds the vector budget",
                        static_cast<std::uint64_t>(subspace_count(L.dim(), L.prime(), 1)));
  }
  PredicateReport r;
  r.algebra = L.name();
  r.subalgebra = L.whole();
  r.predicate = "one_and_half_generation";
  const auto [first, last] = lat.dim_range(1);
  for (NodeId x = first; x < last; ++x) {
    bool mate = false;
    for (NodeId y = first; y < last && !mate; ++y) mate = lat.join(x, y) == lat.top();
    if (!mate) {
      fail(r, Witness{"no_mate", {}, FqVector::from_word(lat.node(x).row_word(0), L.dim(), L.prime())});
      break;
    }
  }
  return r;
}

// ---- independent re-evaluation --------------------------------------------------

bool is_maximal_direct(const LieAlgebra& L, const Subspace& a, const Subspace& b) {
  if (!a.is_subset_of(b) || a == b) return false;
  bool ok = true;
  for_each_line(b, [&](const FqVector& x) {
    if (!ok || a.contains(x)) return;
    Subspace ax = a;
    ax.absorb_word(x.word());
    ok = generated_subalgebra(L, ax) == b;
  });
  return ok;
}

namespace {

Subspace gen_join(const LieAlgebra& L, const Subspace& a, const Subspace& b) {
  return generated_subalgebra(L, subspace_sum(a, b));
}

}  // namespace

bool witness_reproduces(const LieAlgebra& L, const PredicateReport& r, const std::optional<Subspace>& within) {
  if (r.verdict || !r.witness) return false;
  const Witness& w = *r.witness;
  const Subspace& u = r.subalgebra;
  const Subspace s = within.value_or(L.whole());
  for (const auto& [name, sp] : w.spaces) {
    if (!is_subalgebra(L, sp) || !sp.is_subset_of(s)) return false;
  }
  const std::string& pred = r.predicate;
  if (pred == "modular" || pred == "modular_star") {
    const Subspace& b = w.space("B");
    const Subspace& c = w.space("C");
    if (w.law == "law1") {
      return b.is_subset_of(c) && !(subspace_meet(gen_join(L, u, b), c) == gen_join(L, b, subspace_meet(u, c)));
    }
    if (w.law == "law2" && pred == "modular") {
      return u.is_subset_of(c) && !(subspace_meet(gen_join(L, u, b), c) == gen_join(L, subspace_meet(b, c), u));
    }
    if (w.law == "law2") {
      return c.is_subset_of(u) && !(gen_join(L, subspace_meet(u, b), c) == subspace_meet(gen_join(L, b, c), u));
    }
    return false;
  }
  if (pred == "um" || pred == "lm" || pred == "sm") {
    const Subspace& b = w.space("B");
    const bool lower = is_maximal_direct(L, subspace_meet(u, b), b);
    const bool upper = is_maximal_direct(L, u, gen_join(L, u, b));
    if (w.law == "um") return lower && !upper;
    if (w.law == "lm") return upper && !lower;
    return false;
  }
  if (!w.vector) return false;
  const FqVector& x = *w.vector;
  if (pred == "ideal") return !bracket_spaces(L, u, subspace_from_vectors(std::vector{x}, L.dim(), L.prime())).is_subset_of(u);
  if (pred == "quasi_ideal") return u.contains(x) ? false : !quasi_ideal_at(L, u, x.word());
  if (pred == "strong_ideal") {
    const Subspace line = subspace_from_vectors(std::vector{x}, L.dim(), L.prime());
    return u.contains(x) && !x.is_zero() && !is_ideal(L, line);
  }
  if (pred == "strong_quasi_ideal") {
    const Subspace line = subspace_from_vectors(std::vector{x}, L.dim(), L.prime());
    return u.contains(x) && !x.is_zero() && !is_quasi_ideal(L, line);
  }
  if (pred == "one_and_half_generation") {
    if (x.is_zero()) return false;
    bool mate = false;
    for_each_line(L.whole(), [&](const FqVector& y) {
      if (!mate) mate = generated_subalgebra(L, std::vector{x, y}) == L.whole();
    });
    return !mate;
  }
  return false;
}

}  // namespace liesublat
