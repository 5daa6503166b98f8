#include "koszulkit/koszul.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "koszulkit/errors.hpp"

namespace koszulkit {

namespace {

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

int permutation_sign(const std::vector<int>& seq) {
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

HilbertSamuel ambient_probe(const AlgebraPtr& algebra, const Point& a, int s_max) {
  return hilbert_samuel(FPModule::free(algebra, 1), a, s_max);
}

int dimension_from(const HilbertSamuel& hs) {
  auto d = hs.local_dimension();
  if (!d) throw InconclusiveError("local dimension probe is inconclusive; raise s_max");
  if (*d < 0) throw InputError("point does not lie on Spec O");
  return *d;
}

SystemOfParameters validate_with(const AlgebraPtr& algebra, const Point& a, std::vector<Polynomial> f, const SopOptions& opts,
                                 const HilbertSamuel& ambient) {
  if (static_cast<int>(a.size()) != algebra->num_vars()) throw InputError("point has the wrong number of coordinates");
  for (const auto& g : f) {
    if (!same_ring(g.ring(), algebra->ring())) throw InputError("sop element from a different ring");
    if (!g.evaluate(a).is_zero()) throw InputError("sop element " + g.to_string() + " does not vanish at " + format_point(a));
  }
  SystemOfParameters sop;
  sop.algebra = algebra;
  sop.point = a;
  sop.ambient = ambient;
  sop.dim = opts.dimension_override ? *opts.dimension_override : dimension_from(ambient);
  if (static_cast<int>(f.size()) != sop.dim)
    throw InputError("wrong count: " + std::to_string(f.size()) + " elements but the local dimension is " + std::to_string(sop.dim));
  sop.quotient = hilbert_samuel(FPModule::cyclic(algebra, Ideal(algebra->ring(), f)), a, opts.s_max);
  switch (sop.quotient.verdict) {
    case HilbertSamuel::Verdict::Stabilizes:
      break;
    case HilbertSamuel::Verdict::Growth:
      throw InputError("not a system of parameters: O/(f) is not zero dimensional at " + format_point(a));
    case HilbertSamuel::Verdict::Inconclusive:
      throw InconclusiveError("Hilbert-Samuel probe of O/(f) is inconclusive; raise s_max");
  }
  sop.f = std::move(f);
  return sop;
}

}  // namespace

std::string SystemOfParameters::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ", ";
    s += f[i].to_string();
  }
  return s + ") at " + format_point(point);
}

int local_dimension(const AlgebraPtr& algebra, const Point& a, int s_max) { return dimension_from(ambient_probe(algebra, a, s_max)); }

SystemOfParameters validate_sop(const AlgebraPtr& algebra, const Point& a, std::vector<Polynomial> f, const SopOptions& opts) {
  if (static_cast<int>(a.size()) != algebra->num_vars()) throw InputError("point has the wrong number of coordinates");
  return validate_with(algebra, a, std::move(f), opts, ambient_probe(algebra, a, opts.s_max));
}

std::vector<SystemOfParameters> suggest_sop(const AlgebraPtr& algebra, const Point& a, std::size_t count, std::size_t budget,
                                            const SopOptions& opts) {
  if (static_cast<int>(a.size()) != algebra->num_vars()) throw InputError("point has the wrong number of coordinates");
  const RingPtr& ring = algebra->ring();
  HilbertSamuel ambient = ambient_probe(algebra, a, opts.s_max);
  const int d = opts.dimension_override ? *opts.dimension_override : dimension_from(ambient);
  if (d == 0) return {validate_with(algebra, a, {}, opts, ambient)};

  const int n = algebra->num_vars();
  std::vector<Polynomial> u;
  for (int i = 0; i < n; ++i) u.push_back(Polynomial::variable(ring, i) - Polynomial(ring, Vector::constant(a[i])));
  auto scaled = [&](int c, const Polynomial& p) { return Polynomial::constant(ring, c) * p; };

  std::vector<std::vector<Polynomial>> cands;
  const auto combos = subsets(n, d);
  auto coordinates = [&](const std::vector<int>& s) {
    std::vector<Polynomial> c;
    for (int i : s) c.push_back(u[i]);
    return c;
  };
  for (const auto& s : combos) cands.push_back(coordinates(s));
  if (d == 1) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        cands.push_back({u[i] + u[j]});
        cands.push_back({u[i] - u[j]});
      }
  } else {
    for (const auto& s : combos) {
      auto c = coordinates(s);
      c[0] = u[s[0]] + u[s[1]];
      c[1] = u[s[0]] - u[s[1]];
      cands.push_back(std::move(c));
    }
  }
  // forms with coefficients 1, b+k, (b+k)^2, ...; generic enough when the
  // coordinate choices meet other components
  for (int base = 1; base <= 3; ++base) {
    std::vector<Polynomial> c;
    for (int k = 0; k < d; ++k) {
      Polynomial form = Polynomial::constant(ring, 0);
      int coef = 1;
      for (int i = 0; i < n; ++i) {
        form = form + scaled(coef, u[i]);
        coef *= base + k;
      }
      c.push_back(form);
    }
    cands.push_back(std::move(c));
  }
  for (const auto& s : combos)
    for (int k = 0; k < n; ++k) {
      if (std::find(s.begin(), s.end(), k) != s.end()) continue;
      auto c = coordinates(s);
      c[0] = c[0] + u[k];
      cands.push_back(std::move(c));
    }
  for (const auto& s : combos)
    for (int t = 0; t < d; ++t) {
      auto c = coordinates(s);
      c[t] = c[t] * c[t];
      cands.push_back(std::move(c));
    }

  std::vector<SystemOfParameters> out;
  std::set<std::string> seen;
  std::string diagnostics;
  std::size_t tried = 0;
  for (auto& c : cands) {
    if (out.size() >= count || tried >= budget) break;
    std::string key;
    for (const auto& p : c) key += p.to_string() + ";";
    if (!seen.insert(key).second) continue;
    ++tried;
    try {
      out.push_back(validate_with(algebra, a, c, opts, ambient));
    } catch (const InputError& e) {
      diagnostics += "\n  " + key + " " + e.what();
    } catch (const InconclusiveError& e) {
      diagnostics += "\n  " + key + " " + e.what();
    }
  }
  if (out.empty())
    throw InconclusiveError("no system of parameters found at " + format_point(a) + " within " + std::to_string(budget) +
                            " candidates:" + diagnostics);
  return out;
}

std::vector<std::vector<int>> koszul_basis(int d, int i) { return subsets(d, i); }

FreeComplex koszul_complex(const AlgebraPtr& algebra, std::span<const Polynomial> f) {
  const int d = static_cast<int>(f.size());
  for (const auto& g : f)
    if (!same_ring(g.ring(), algebra->ring())) throw InputError("Koszul complex of elements from a different ring");
  std::map<int, FPModule> terms;
  std::map<int, std::vector<Vector>> diffs;
  std::vector<std::vector<std::vector<int>>> basis(d + 1);
  for (int i = 0; i <= d; ++i) {
    basis[i] = subsets(d, i);
    terms.emplace(-i, FPModule::free(algebra, basis[i].size()));
  }
  for (int i = 1; i <= d; ++i) {
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t k = 0; k < basis[i - 1].size(); ++k) index[basis[i - 1][k]] = k;
    std::vector<Vector> cols;
    for (const auto& t : basis[i]) {
      Vector col;
      for (int pos = 0; pos < i; ++pos) {
        std::vector<int> rest = t;
        rest.erase(rest.begin() + pos);
        Vector term = f[t[pos]].vec().shifted_components(static_cast<std::int64_t>(index.at(rest)));
        col += pos % 2 ? -term : term;
      }
      cols.push_back(std::move(col));
    }
    diffs.emplace(-i, std::move(cols));
  }
  return BoundedComplex(algebra, std::move(terms), std::move(diffs));
}

ChainMap koszul_duality(const AlgebraPtr& algebra, std::span<const Polynomial> f) {
  const int n = static_cast<int>(f.size());
  FreeComplex kos = koszul_complex(algebra, f);
  ChainMap psi{shift(kos, -n), hom_complex(kos, BoundedComplex::concentrated(FPModule::free(algebra, 1), 0)), {}};
  const Field field = algebra->field();
  for (int q = 0; q <= n; ++q) {
    auto source = koszul_basis(n, n - q);
    auto target = koszul_basis(n, q);
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t k = 0; k < target.size(); ++k) index[target[k]] = k;
    std::vector<Vector> cols;
    for (const auto& s : source) {
      std::vector<int> comp, seq = s;
      for (int i = 0; i < n; ++i)
        if (std::find(s.begin(), s.end(), i) == s.end()) comp.push_back(i);
      seq.insert(seq.end(), comp.begin(), comp.end());
      cols.push_back(Vector::constant(Scalar(field, static_cast<long>(permutation_sign(seq))), static_cast<std::uint32_t>(index.at(comp))));
    }
    psi.components.emplace(q, std::move(cols));
  }
  psi.check();
  return psi;
}

namespace {

void require_same_algebra(const SystemOfParameters& sop, const BoundedComplex& c) {
  if (c.has_terms() && !same_algebra(sop.algebra, c.algebra())) throw InputError("complex and sop live over different rings");
}

}  // namespace

FPModule tor(const SystemOfParameters& sop, const BoundedComplex& c, int i) {
  require_same_algebra(sop, c);
  BoundedComplex t = tensor_with_free(c, koszul_complex(sop));
  return torsion_component_at_point(cohomology(t, -i).module, sop.point).module;
}

FPModule ext(const SystemOfParameters& sop, const BoundedComplex& c, int i) {
  require_same_algebra(sop, c);
  FreeComplex kos = koszul_complex(sop);
  FPModule direct = cohomology(hom_complex(kos, c), i).module;
  FPModule dual = cohomology(tensor_with_free(c, kos), -(sop.dim - i)).module;
  long a = local_length(direct, sop.point), b = local_length(dual, sop.point);
  if (a != b)
    throw ConsistencyError("ext^" + std::to_string(i) + " has length " + std::to_string(a) + " but tor_" + std::to_string(sop.dim - i) +
                           " has length " + std::to_string(b) + " for sop " + sop.to_string());
  return torsion_component_at_point(direct, sop.point).module;
}

long KoszulTable::tor_at(int i) const {
  auto it = tor.find(i);
  return it == tor.end() ? 0 : it->second;
}

long KoszulTable::ext_at(int i) const {
  auto it = ext.find(i);
  return it == ext.end() ? 0 : it->second;
}

std::optional<int> KoszulTable::first_nonzero_ext() const {
  for (const auto& [i, len] : ext)
    if (len != 0) return i;
  return std::nullopt;
}

KoszulTable koszul_table(const SystemOfParameters& sop, const BoundedComplex& c) {
  require_same_algebra(sop, c);
  KoszulTable table;
  table.dim = sop.dim;
  if (!c.has_terms()) return table;
  FreeComplex kos = koszul_complex(sop);
  BoundedComplex t = tensor_with_free(c, kos);
  BoundedComplex h = hom_complex(kos, c);
  for (int i = -c.max_degree(); i <= sop.dim - c.min_degree(); ++i)
    table.tor[i] = local_length(cohomology(t, -i).module, sop.point);
  for (int k = c.min_degree(); k <= c.max_degree() + sop.dim; ++k) {
    table.ext[k] = local_length(cohomology(h, k).module, sop.point);
    if (table.ext[k] != table.tor_at(sop.dim - k))
      throw ConsistencyError("ext^" + std::to_string(k) + " length " + std::to_string(table.ext[k]) + " differs from tor_" +
                             std::to_string(sop.dim - k) + " length " + std::to_string(table.tor_at(sop.dim - k)) + " for sop " +
                             sop.to_string());
  }
  return table;
}

}  // namespace koszulkit
