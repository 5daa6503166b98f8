#pragma once

// Independent reference computations for the tests. Everything here is
// dense linear algebra over Q on truncated monomial spaces; no Gröbner
// bases are involved.

#include <gmpxx.h>

#include <map>
#include <vector>

#include "koszulkit/polynomial.hpp"

namespace oracle {

using koszulkit::Monomial;
using koszulkit::Polynomial;

using Matrix = std::vector<std::vector<mpq_class>>;

inline std::size_t rank(Matrix m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

inline std::vector<Monomial> monomials_below(int nvars, int s) {
  std::vector<Monomial> out;
  Monomial m;
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == nvars) {
      out.push_back(m);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m.exp[var] = e;
      m.degree += e;
      self(self, var + 1, left - e);
      m.degree -= e;
    }
    m.exp[var] = 0;
  };
  rec(rec, 0, s - 1);
  return out;
}

inline std::vector<std::int32_t> key(const Monomial& m) { return {m.exp.begin(), m.exp.end()}; }

/// dim_k of (R/J) / m^s (R/J) at the origin, i.e. of k[x]_{<s} modulo the
/// truncations of all x^a * g with deg x^a < s.
inline long cyclic_colength(const std::vector<Polynomial>& gens, int nvars, int s) {
  auto basis = monomials_below(nvars, s);
  std::map<std::vector<std::int32_t>, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[key(basis[i])] = i;
  Matrix rows;
  for (const auto& g : gens)
    for (const auto& a : basis) {
      std::vector<mpq_class> row(basis.size());
      bool any = false;
      for (const auto& t : g.vec().terms()) {
        Monomial m = t.mono * a;
        if (m.degree >= s) continue;
        row[index[key(m)]] += t.coef.rational();
        any = true;
      }
      if (any) rows.push_back(std::move(row));
    }
  return static_cast<long>(basis.size() - rank(rows));
}

}  // namespace oracle
