#include "koszulkit/complex.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "koszulkit/errors.hpp"

namespace koszulkit {

namespace {

Vector sign_if(bool negate, const Vector& v) { return negate ? -v : v; }

// Places copies of modules side by side and remembers their offsets.
struct Layout {
  std::vector<std::pair<int, int>> keys;  // block identifiers
  std::vector<std::size_t> offsets, sizes;
  std::vector<Vector> relations;
  std::size_t total = 0;

  void add(std::pair<int, int> key, const FPModule& m, std::size_t copies) {
    keys.push_back(key);
    offsets.push_back(total);
    sizes.push_back(m.generators() * copies);
    for (std::size_t c = 0; c < copies; ++c)
      for (const auto& r : m.relations()) relations.push_back(r.shifted_components(static_cast<std::int64_t>(total + c * m.generators())));
    total += m.generators() * copies;
  }
  std::optional<std::size_t> offset(std::pair<int, int> key) const {
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i] == key) return offsets[i];
    return std::nullopt;
  }
};

std::vector<Vector> units(const Field& f, std::size_t n) {
  std::vector<Vector> out;
  for (std::size_t j = 0; j < n; ++j) out.push_back(Vector::unit(f, static_cast<std::uint32_t>(j)));
  return out;
}

std::vector<Vector> ideal_block(const AlgebraPtr& o, std::size_t rank, std::size_t offset) {
  std::vector<Vector> out;
  for (std::size_t j = 0; j < rank; ++j)
    for (const auto& e : o->ideal().groebner().elements()) out.push_back(e.shifted_components(static_cast<std::int64_t>(offset + j)));
  return out;
}

}  // namespace

// ---------------------------------------------------------------- BoundedComplex

BoundedComplex::BoundedComplex(AlgebraPtr algebra, std::map<int, FPModule> terms, std::map<int, std::vector<Vector>> differentials)
    : algebra_(std::move(algebra)) {
  for (auto& [q, m] : terms) {
    if (!same_algebra(m.algebra(), algebra_)) throw InputError("complex term over a different ring");
    if (m.generators() > 0) terms_.emplace(q, std::move(m));
  }
  for (auto& [q, cols] : differentials) {
    auto src = terms_.find(q);
    auto dst = terms_.find(q + 1);
    bool all_zero = std::all_of(cols.begin(), cols.end(), [](const Vector& v) { return v.is_zero(); });
    if (src == terms_.end() || dst == terms_.end()) {
      if (!all_zero) throw InputError("differential " + std::to_string(q) + " has a zero source or target but nonzero entries");
      continue;
    }
    ModuleMap check(src->second, dst->second, cols);  // validates shape and relations
    diffs_.emplace(q, std::move(cols));
  }
  for (const auto& [q, cols] : diffs_) {
    auto next = diffs_.find(q + 1);
    if (next == diffs_.end()) continue;
    const FPModule& t = terms_.at(q + 2);
    for (const auto& c : cols)
      if (!t.is_zero_element(c.substitute_basis(next->second)))
        throw InputError("d^" + std::to_string(q + 1) + " o d^" + std::to_string(q) + " is not zero");
  }
}

BoundedComplex BoundedComplex::concentrated(const FPModule& m, int degree) {
  return BoundedComplex(m.algebra(), {{degree, m}}, {});
}

std::vector<int> BoundedComplex::degrees() const {
  std::vector<int> out;
  for (const auto& [q, m] : terms_) out.push_back(q);
  return out;
}

int BoundedComplex::min_degree() const {
  if (terms_.empty()) throw InputError("min_degree of the zero complex");
  return terms_.begin()->first;
}

int BoundedComplex::max_degree() const {
  if (terms_.empty()) throw InputError("max_degree of the zero complex");
  return terms_.rbegin()->first;
}

FPModule BoundedComplex::term(int q) const {
  auto it = terms_.find(q);
  return it == terms_.end() ? FPModule::zero(algebra_) : it->second;
}

std::size_t BoundedComplex::rank(int q) const {
  auto it = terms_.find(q);
  return it == terms_.end() ? 0 : it->second.generators();
}

std::vector<Vector> BoundedComplex::differential(int q) const {
  auto it = diffs_.find(q);
  if (it != diffs_.end()) return it->second;
  return std::vector<Vector>(rank(q));
}

ModuleMap BoundedComplex::differential_map(int q) const { return ModuleMap::trusted(term(q), term(q + 1), differential(q)); }

bool BoundedComplex::is_free() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.is_free(); });
}

// ---------------------------------------------------------------- chain maps

std::vector<Vector> ChainMap::component(int q) const {
  auto it = components.find(q);
  if (it != components.end()) return it->second;
  return std::vector<Vector>(source.rank(q));
}

void ChainMap::check() const {
  if (!same_algebra(source.algebra(), target.algebra())) throw InputError("chain map between complexes over different rings");
  for (int q : source.degrees()) {
    std::vector<Vector> f = component(q);
    ModuleMap(source.term(q), target.term(q), f);
    std::vector<Vector> f1 = component(q + 1);
    std::vector<Vector> da = source.differential(q), db = target.differential(q);
    const FPModule t = target.term(q + 1);
    for (std::size_t j = 0; j < f.size(); ++j) {
      Vector lhs = f[j].substitute_basis(db);
      Vector rhs = da[j].substitute_basis(f1);
      if (!t.is_zero_element(lhs - rhs)) throw InputError("not a chain map in degree " + std::to_string(q));
    }
  }
}

// ---------------------------------------------------------------- constructions

BoundedComplex shift(const BoundedComplex& c, int s) {
  std::map<int, FPModule> terms;
  std::map<int, std::vector<Vector>> diffs;
  const bool negate = (s % 2) != 0;
  for (int q : c.degrees()) {
    terms.emplace(q - s, c.term(q));
    std::vector<Vector> d = c.differential(q);
    for (auto& v : d) v = sign_if(negate, v);
    diffs.emplace(q - s, std::move(d));
  }
  return BoundedComplex(c.algebra(), std::move(terms), std::move(diffs));
}

BoundedComplex cone(const ChainMap& f) {
  f.check();
  const BoundedComplex& a = f.source;
  const BoundedComplex& b = f.target;
  std::set<int> degs;
  for (int q : a.degrees()) degs.insert(q - 1);
  for (int q : b.degrees()) degs.insert(q);
  std::map<int, FPModule> terms;
  std::map<int, std::vector<Vector>> diffs;
  for (int q : degs) {
    FPModule parts[] = {a.term(q + 1), b.term(q)};
    terms.emplace(q, direct_sum(parts));
  }
  for (int q : degs) {
    const std::size_t ga1 = a.rank(q + 1), ga2 = a.rank(q + 2), gb = b.rank(q);
    std::vector<Vector> cols;
    std::vector<Vector> da = a.differential(q + 1), fa = f.component(q + 1), db = b.differential(q);
    for (std::size_t j = 0; j < ga1; ++j) cols.push_back(-da[j] + fa[j].shifted_components(static_cast<std::int64_t>(ga2)));
    for (std::size_t i = 0; i < gb; ++i) cols.push_back(db[i].shifted_components(static_cast<std::int64_t>(ga2)));
    diffs.emplace(q, std::move(cols));
  }
  return BoundedComplex(a.algebra(), std::move(terms), std::move(diffs));
}

namespace {
BoundedComplex truncate(const BoundedComplex& c, int lo, int hi) {
  std::map<int, FPModule> terms;
  std::map<int, std::vector<Vector>> diffs;
  for (int q : c.degrees()) {
    if (q < lo || q > hi) continue;
    terms.emplace(q, c.term(q));
    if (q + 1 <= hi) diffs.emplace(q, c.differential(q));
  }
  return BoundedComplex(c.algebra(), std::move(terms), std::move(diffs));
}
}  // namespace

BoundedComplex truncate_below(const BoundedComplex& c, int q) { return truncate(c, q, std::numeric_limits<int>::max() - 1); }
BoundedComplex truncate_above(const BoundedComplex& c, int q) { return truncate(c, std::numeric_limits<int>::min(), q); }

ChainMap truncation_inclusion(const BoundedComplex& c, int q) {
  ChainMap f{truncate_below(c, q), c, {}};
  for (int p : f.source.degrees()) f.components.emplace(p, units(c.algebra()->field(), c.rank(p)));
  return f;
}

BoundedComplex direct_sum(const BoundedComplex& a, const BoundedComplex& b) {
  if (!same_algebra(a.algebra(), b.algebra())) throw InputError("direct sum of complexes over different rings");
  std::set<int> degs;
  for (int q : a.degrees()) degs.insert(q);
  for (int q : b.degrees()) degs.insert(q);
  std::map<int, FPModule> terms;
  std::map<int, std::vector<Vector>> diffs;
  for (int q : degs) {
    FPModule parts[] = {a.term(q), b.term(q)};
    terms.emplace(q, direct_sum(parts));
    std::vector<Vector> cols = a.differential(q);
    const std::int64_t off = static_cast<std::int64_t>(a.rank(q + 1));
    for (const auto& v : b.differential(q)) cols.push_back(v.shifted_components(off));
    diffs.emplace(q, std::move(cols));
  }
  return BoundedComplex(a.algebra(), std::move(terms), std::move(diffs));
}

BoundedComplex tensor_with_free(const BoundedComplex& c, const FreeComplex& f) {
  if (!f.is_free()) throw InputError("tensor_with_free: second argument is not a free complex");
  if (!same_algebra(c.algebra(), f.algebra())) throw InputError("tensor_with_free: different rings");
  if (!c.has_terms() || !f.has_terms()) return BoundedComplex(c.algebra());

  std::map<int, Layout> layouts;
  for (int p : c.degrees())
    for (int q : f.degrees()) layouts[p + q];
  for (auto& [n, layout] : layouts)
    for (int p : c.degrees()) {
      int q = n - p;
      if (f.rank(q) > 0) layout.add({p, q}, c.term(p), f.rank(q));
    }

  std::map<int, FPModule> terms;
  std::map<int, std::vector<Vector>> diffs;
  for (const auto& [n, layout] : layouts) terms.emplace(n, FPModule(c.algebra(), layout.total, layout.relations));
  for (const auto& [n, layout] : layouts) {
    auto next = layouts.find(n + 1);
    std::vector<Vector> cols(layout.total);
    if (next != layouts.end()) {
      for (std::size_t b = 0; b < layout.keys.size(); ++b) {
        auto [p, q] = layout.keys[b];
        const std::size_t gp = c.rank(p), rq = f.rank(q);
        std::vector<Vector> dc = c.differential(p), df = f.differential(q);
        auto off_c = next->second.offset({p + 1, q});
        auto off_f = next->second.offset({p, q + 1});
        const bool negate = (p % 2) != 0;
        for (std::size_t k = 0; k < rq; ++k)
          for (std::size_t j = 0; j < gp; ++j) {
            Vector v;
            if (off_c) v += dc[j].shifted_components(static_cast<std::int64_t>(*off_c + k * c.rank(p + 1)));
            if (off_f)
              for (const auto& t : df[k].terms()) {
                Scalar coef = negate ? -t.coef : t.coef;
                v += Vector::from_sorted({Term{t.mono, static_cast<std::uint32_t>(*off_f + t.comp * gp + j), coef}});
              }
            cols[layout.offsets[b] + k * gp + j] = std::move(v);
          }
      }
    }
    diffs.emplace(n, std::move(cols));
  }
  return BoundedComplex(c.algebra(), std::move(terms), std::move(diffs));
}

BoundedComplex hom_complex(const FreeComplex& f, const BoundedComplex& c, std::optional<std::pair<int, int>> range) {
  if (!f.is_free()) throw InputError("hom_complex: first argument is not free; use derived_hom");
  if (!same_algebra(c.algebra(), f.algebra())) throw InputError("hom_complex: different rings");
  if (!c.has_terms() || !f.has_terms()) return BoundedComplex(c.algebra());
  int k_lo = c.min_degree() - f.max_degree(), k_hi = c.max_degree() - f.min_degree();
  if (range) {
    k_lo = std::max(k_lo, range->first);
    k_hi = std::min(k_hi, range->second);
  }

  std::map<int, Layout> layouts;
  for (int k = k_lo; k <= k_hi; ++k) {
    Layout layout;
    for (int p : f.degrees())
      if (c.rank(p + k) > 0) layout.add({p, 0}, c.term(p + k), f.rank(p));
    if (layout.total > 0) layouts.emplace(k, std::move(layout));
  }

  std::map<int, FPModule> terms;
  std::map<int, std::vector<Vector>> diffs;
  for (const auto& [k, layout] : layouts) terms.emplace(k, FPModule(c.algebra(), layout.total, layout.relations));
  for (const auto& [k, layout] : layouts) {
    auto next = layouts.find(k + 1);
    std::vector<Vector> cols(layout.total);
    if (next != layouts.end()) {
      const bool negate = (k % 2) == 0;  // coefficient -(-1)^k
      for (std::size_t b = 0; b < layout.keys.size(); ++b) {
        const int p = layout.keys[b].first;
        const std::size_t rp = f.rank(p), g = c.rank(p + k), g1 = c.rank(p + k + 1);
        std::vector<Vector> dc = c.differential(p + k);
        auto off_same = next->second.offset({p, 0});
        auto off_prev = next->second.offset({p - 1, 0});
        std::vector<Vector> df = f.differential(p - 1);  // F^{p-1} -> F^p
        for (std::size_t j = 0; j < rp; ++j)
          for (std::size_t i = 0; i < g; ++i) {
            Vector v;
            if (off_same && g1 > 0) v += dc[i].shifted_components(static_cast<std::int64_t>(*off_same + j * g1));
            if (off_prev)
              for (std::size_t l = 0; l < df.size(); ++l) {
                Vector a = df[l].component(static_cast<std::uint32_t>(j));
                if (a.is_zero()) continue;
                if (negate) a = -a;
                v += a.shifted_components(static_cast<std::int64_t>(*off_prev + l * g + i));
              }
            cols[layout.offsets[b] + j * g + i] = std::move(v);
          }
      }
    }
    diffs.emplace(k, std::move(cols));
  }
  return BoundedComplex(c.algebra(), std::move(terms), std::move(diffs));
}

// ---------------------------------------------------------------- cohomology

Subquotient cohomology(const BoundedComplex& c, int q) {
  const std::size_t g = c.rank(q);
  if (g == 0) return {FPModule::zero(c.algebra()), {}};
  const FPModule term = c.term(q);
  std::vector<Vector> cycles;
  if (c.rank(q + 1) == 0) {
    cycles = units(c.algebra()->field(), g);
  } else {
    cycles = preimage(c.differential(q), c.term(q + 1).relation_gb().elements(), c.rank(q + 1));
  }
  std::vector<Vector> bounds = term.relation_gb().elements();
  for (const auto& v : c.differential(q - 1)) bounds.push_back(v);
  return present_quotient(c.algebra(), cycles, bounds, g);
}

bool is_exact(const BoundedComplex& c) {
  for (int q : c.degrees())
    if (!cohomology(c, q).module.is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------- free models

LazyResolution::LazyResolution(BoundedComplex target, bool force_general) : target_(std::move(target)) {
  if (!target_.has_terms()) {
    complete_ = true;
    return;
  }
  if (target_.is_free() && !force_general) {
    for (int q : target_.degrees()) {
      ranks_[q] = target_.rank(q);
      d_[q] = target_.differential(q);
      phi_[q] = units(target_.algebra()->field(), target_.rank(q));
    }
    next_ = target_.min_degree() - 1;
    complete_ = true;
    return;
  }
  next_ = target_.max_degree();
}

bool LazyResolution::complete() const {
  std::lock_guard lock(mu_);
  return complete_;
}

int LazyResolution::lowest() const {
  std::lock_guard lock(mu_);
  return next_ + 1;
}

void LazyResolution::step() {
  const int q = next_;
  const AlgebraPtr& o = target_.algebra();
  auto rank_of = [&](int p) -> std::size_t {
    auto it = ranks_.find(p);
    return it == ranks_.end() ? 0 : it->second;
  };
  const std::size_t r1 = rank_of(q + 1), r2 = rank_of(q + 2);
  const std::size_t gq = target_.rank(q), g1 = target_.rank(q + 1);
  if (r1 + gq == 0 && q < target_.min_degree()) {
    complete_ = true;
    return;
  }

  // Cone^q = F^{q+1} + C^q  ->  Cone^{q+1} = F^{q+2} + C^{q+1}
  std::vector<Vector> cols;
  std::vector<Vector> dF = r1 ? d_[q + 1] : std::vector<Vector>{};
  std::vector<Vector> ph = r1 ? phi_[q + 1] : std::vector<Vector>{};
  for (std::size_t l = 0; l < r1; ++l) cols.push_back(-dF[l] + ph[l].shifted_components(static_cast<std::int64_t>(r2)));
  std::vector<Vector> dC = target_.differential(q);
  for (std::size_t i = 0; i < gq; ++i) cols.push_back(dC[i].shifted_components(static_cast<std::int64_t>(r2)));

  std::vector<Vector> sub = ideal_block(o, r2, 0);
  if (g1)
    for (const auto& e : target_.term(q + 1).relation_gb().elements()) sub.push_back(e.shifted_components(static_cast<std::int64_t>(r2)));
  std::vector<Vector> cycles = preimage(cols, sub, r2 + g1);

  std::vector<Vector> base = ideal_block(o, r1, 0);
  if (gq) {
    for (const auto& e : target_.term(q).relation_gb().elements()) base.push_back(e.shifted_components(static_cast<std::int64_t>(r1)));
    for (const auto& v : target_.differential(q - 1)) base.push_back(v.shifted_components(static_cast<std::int64_t>(r1)));
  }
  std::vector<Vector> kept = prune_generators(cycles, base);

  if (kept.empty() && q < target_.min_degree()) {
    complete_ = true;
    return;
  }
  std::vector<Vector> d_cols, phi_cols;
  for (const auto& z : kept) {
    std::vector<Term> u, c;
    for (const auto& t : z.terms()) {
      if (t.comp < r1)
        u.push_back(Term{t.mono, t.comp, -t.coef});
      else
        c.push_back(Term{t.mono, static_cast<std::uint32_t>(t.comp - r1), t.coef});
    }
    d_cols.push_back(Vector(std::move(u)));
    phi_cols.push_back(Vector(std::move(c)));
  }
  if (!kept.empty()) {
    ranks_[q] = kept.size();
    d_[q] = std::move(d_cols);
    phi_[q] = std::move(phi_cols);
  }
  next_ = q - 1;
}

void LazyResolution::extend_to(int q) {
  std::lock_guard lock(mu_);
  while (!complete_ && next_ >= q) step();
}

FreeComplex LazyResolution::prefix(int q) {
  extend_to(q);
  std::lock_guard lock(mu_);
  std::map<int, FPModule> terms;
  std::map<int, std::vector<Vector>> diffs;
  for (const auto& [p, r] : ranks_) {
    if (p < q) continue;
    terms.emplace(p, FPModule::free(target_.algebra(), r));
    if (ranks_.count(p + 1)) diffs.emplace(p, d_.at(p));
  }
  return BoundedComplex(target_.algebra(), std::move(terms), std::move(diffs));
}

ChainMap LazyResolution::comparison(int q) {
  FreeComplex f = prefix(q);
  std::lock_guard lock(mu_);
  ChainMap m{f, target_, {}};
  for (int p : f.degrees()) m.components.emplace(p, phi_.at(p));
  return m;
}

Subquotient derived_hom(LazyResolution& e, const BoundedComplex& c, int i, int margin) {
  if (!c.has_terms() || !e.target().has_terms()) return {FPModule::zero(c.algebra()), {}};
  FreeComplex f = e.prefix(c.min_degree() - i - 1 - margin);
  BoundedComplex h = hom_complex(f, c, std::make_pair(i - 1, i + 1));
  return cohomology(h, i);
}

Subquotient derived_hom(const BoundedComplex& e, const BoundedComplex& c, int i, int margin) {
  LazyResolution res(e);
  return derived_hom(res, c, i, margin);
}

}  // namespace koszulkit
