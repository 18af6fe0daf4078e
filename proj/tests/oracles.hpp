#pragma once

// Reference implementations for the tests. Everything here works on plain
// int vectors and sets of members, reads structure constants back out of the
// algebra JSON, and quantifies exactly as the definitions do. Slow on
// purpose; only used at dimension <= 4.

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "liesublat/algebra_io.hpp"
#include "liesublat/lie_algebra.hpp"

namespace oracle {

using Vec = std::vector<int>;
using Space = std::set<Vec>;  // a subspace as the set of all its members

struct Table {
  unsigned p = 2;
  std::size_t n = 0;
  std::vector<std::vector<Vec>> c;  // c[i][j] = [e_i, e_j]

  explicit Table(const liesublat::LieAlgebra& L) {
    const liesublat::Json j = liesublat::algebra_to_json(L);
    p = j["p"].get<unsigned>();
    n = j["dim"].get<std::size_t>();
    c.assign(n, std::vector<Vec>(n, Vec(n, 0)));
    for (const auto& b : j["brackets"]) {
      const auto i = b["i"].get<std::size_t>(), k = b["j"].get<std::size_t>();
      for (std::size_t t = 0; t < n; ++t) {
        const int v = b["coeffs"][t].get<int>();
        c[i][k][t] = v;
        c[k][i][t] = (static_cast<int>(p) - v) % static_cast<int>(p);
      }
    }
  }

  Vec bracket(const Vec& x, const Vec& y) const {
    Vec out(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const int s = x[a] * y[b];
        if (s == 0) continue;
        for (std::size_t t = 0; t < n; ++t) out[t] = (out[t] + s * c[a][b][t]) % static_cast<int>(p);
      }
    }
    return out;
  }
};

inline Vec add(const Vec& a, const Vec& b, unsigned p) {
  Vec o(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) o[i] = (a[i] + b[i]) % static_cast<int>(p);
  return o;
}

inline Vec scale(const Vec& a, int c, unsigned p) {
  Vec o(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) o[i] = (a[i] * c) % static_cast<int>(p);
  return o;
}

inline std::vector<Vec> all_vectors(std::size_t n, unsigned p) {
  std::vector<Vec> out{Vec(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec> next;
    for (const Vec& v : out) {
      for (unsigned c = 0; c < p; ++c) {
        Vec w = v;
        w[i] = static_cast<int>(c);
        next.push_back(w);
      }
    }
    out = std::move(next);
  }
  return out;
}

inline Space span(const std::vector<Vec>& gens, std::size_t n, unsigned p) {
  Space s{Vec(n, 0)};
  for (const Vec& g : gens) {
    if (s.count(g)) continue;
    Space grown;
    for (const Vec& v : s) {
      for (unsigned c = 0; c < p; ++c) grown.insert(add(v, scale(g, static_cast<int>(c), p), p));
    }
    s = std::move(grown);
  }
  return s;
}

inline Space of(const liesublat::Subspace& s) {
  std::vector<Vec> gens;
  for (const auto& r : s.rows_as_digits()) gens.emplace_back(r.begin(), r.end());
  return span(gens, s.ambient_dim(), s.modulus());
}

inline int dim(const Space& s, unsigned p) {
  int d = 0;
  for (std::size_t sz = s.size(); sz > 1; sz /= p) ++d;
  return d;
}

inline Space meet(const Space& a, const Space& b) {
  Space o;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(o, o.begin()));
  return o;
}

inline Space sum(const Space& a, const Space& b, std::size_t n, unsigned p) {
  std::vector<Vec> g(a.begin(), a.end());
  g.insert(g.end(), b.begin(), b.end());
  return span(g, n, p);
}

inline bool closed(const Table& t, const Space& s) {
  for (const Vec& x : s) {
    for (const Vec& y : s) {
      if (!s.count(t.bracket(x, y))) return false;
    }
  }
  return true;
}

inline Space generate(const Table& t, Space s) {
  for (;;) {
    std::vector<Vec> g(s.begin(), s.end());
    for (const Vec& x : s) {
      for (const Vec& y : s) g.push_back(t.bracket(x, y));
    }
    Space next = span(g, t.n, t.p);
    if (next == s) return s;
    s = std::move(next);
  }
}

/// Every subspace, grown one vector at a time from zero.
inline std::vector<Space> all_subspaces(std::size_t n, unsigned p) {
  std::set<Space> seen{Space{Vec(n, 0)}};
  std::vector<Space> frontier(seen.begin(), seen.end());
  const auto vecs = all_vectors(n, p);
  while (!frontier.empty()) {
    std::vector<Space> next;
    for (const Space& s : frontier) {
      for (const Vec& v : vecs) {
        if (s.count(v)) continue;
        std::vector<Vec> g(s.begin(), s.end());
        g.push_back(v);
        Space t = span(g, n, p);
        if (seen.insert(t).second) next.push_back(std::move(t));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

inline std::vector<Space> all_subalgebras(const Table& t) {
  std::vector<Space> out;
  for (Space& s : all_subspaces(t.n, t.p)) {
    if (closed(t, s)) out.push_back(std::move(s));
  }
  return out;
}

inline bool subset(const Space& a, const Space& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// [U, V] in U + V for every subspace V.
inline bool quasi_ideal(const Table& t, const Space& u, const std::vector<Space>& subspaces) {
  for (const Space& v : subspaces) {
    const Space uv = sum(u, v, t.n, t.p);
    for (const Vec& x : u) {
      for (const Vec& y : v) {
        if (!uv.count(t.bracket(x, y))) return false;
      }
    }
  }
  return true;
}

/// The order structure of a list of subalgebras, with the definitions spelled out.
struct Lattice {
  const Table& t;
  std::vector<Space> nodes;

  bool maximal(const Space& a, const Space& b) const {
    if (a == b || !subset(a, b)) return false;
    for (const Space& c : nodes) {
      if (c != a && c != b && subset(a, c) && subset(c, b)) return false;
    }
    return true;
  }
  Space join(const Space& a, const Space& b) const { return generate(t, sum(a, b, t.n, t.p)); }

  bool modular(const Space& u) const {
    for (const Space& b : nodes) {
      for (const Space& c : nodes) {
        if (subset(b, c) && meet(join(u, b), c) != join(b, meet(u, c))) return false;
        if (subset(u, c) && meet(join(u, b), c) != join(meet(b, c), u)) return false;
      }
    }
    return true;
  }
  bool modular_star(const Space& u) const {
    for (const Space& b : nodes) {
      for (const Space& c : nodes) {
        if (subset(b, c) && meet(join(u, b), c) != join(b, meet(u, c))) return false;
        if (subset(c, u) && join(meet(u, b), c) != meet(join(b, c), u)) return false;
      }
    }
    return true;
  }
  bool upper_modular(const Space& u) const {
    for (const Space& b : nodes) {
      if (maximal(meet(u, b), b) && !maximal(u, join(u, b))) return false;
    }
    return true;
  }
  bool lower_modular(const Space& u) const {
    for (const Space& b : nodes) {
      if (maximal(u, join(u, b)) && !maximal(meet(u, b), b)) return false;
    }
    return true;
  }
};

}  // namespace oracle
