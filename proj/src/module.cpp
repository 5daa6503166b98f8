#include "koszulkit/module.hpp"

#include <algorithm>
#include <map>

#include "koszulkit/errors.hpp"

namespace koszulkit {

namespace {

// Vector reduced componentwise modulo the ideal's Gröbner basis.
Vector reduce_mod_ideal(const Vector& v, const GroebnerBasis& ideal_gb) {
  if (ideal_gb.empty() || v.is_zero()) return v;
  std::vector<Term> out;
  std::uint32_t top = v.max_component();
  for (std::uint32_t c = 0; c <= top; ++c) {
    Vector part = v.component(c);
    if (part.is_zero()) continue;
    Vector red = ideal_gb.normal_form(part);
    for (const auto& t : red.terms()) out.push_back(Term{t.mono, c, t.coef});
  }
  return Vector(std::move(out));
}

std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
  std::vector<Monomial> out;
  Monomial m;
  // Compositions of `degree` into nvars parts.
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == nvars - 1) {
      m.exp[var] = left;
      m.degree = degree;
      out.push_back(m);
      m.exp[var] = 0;
      return;
    }
    for (int e = left; e >= 0; --e) {
      m.exp[var] = e;
      self(self, var + 1, left - e);
    }
    m.exp[var] = 0;
  };
  if (nvars == 0) {
    if (degree == 0) out.push_back(m);
    return out;
  }
  rec(rec, 0, degree);
  return out;
}

// Length of M / m^s M for M already translated so that a is the origin.
long colength_at_origin(const FPModule& mt, int s) {
  std::vector<Vector> rels = mt.relation_module();
  const Scalar one = Scalar::one(mt.algebra()->field());
  for (const auto& mono : monomials_of_degree(mt.algebra()->num_vars(), s))
    for (std::size_t j = 0; j < mt.generators(); ++j)
      rels.push_back(Vector::from_sorted({Term{mono, static_cast<std::uint32_t>(j), one}}));
  auto len = length(FPModule(mt.algebra(), mt.generators(), std::move(rels)));
  if (!len) throw ConsistencyError("M / m^s M has infinite length");
  return *len;
}

std::vector<Scalar> negated(std::span<const Scalar> a) {
  std::vector<Scalar> out;
  for (const auto& s : a) out.push_back(-s);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Algebra

Algebra::Algebra(RingPtr ring, Ideal ideal) : ring_(std::move(ring)), ideal_(std::move(ideal)) {
  if (!same_ring(ring_, ideal_.ring())) throw InputError("quotient ideal lives in a different ring");
}

AlgebraPtr Algebra::translated(std::span<const Scalar> a) const {
  std::vector<Polynomial> gens;
  for (const auto& g : ideal_.generators()) gens.push_back(g.translated(a));
  return make_algebra(ring_, Ideal(ring_, std::move(gens)));
}

AlgebraPtr make_algebra(RingPtr ring, Ideal ideal) { return std::make_shared<const Algebra>(std::move(ring), std::move(ideal)); }
AlgebraPtr make_algebra(RingPtr ring) {
  Ideal zero = Ideal::zero(ring);
  return make_algebra(std::move(ring), std::move(zero));
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a == b || (a && b && same_ring(a->ring(), b->ring()) && a->ideal() == b->ideal());
}

// ---------------------------------------------------------------- FPModule

FPModule::FPModule(AlgebraPtr algebra, std::size_t generators, std::vector<Vector> relations)
    : algebra_(std::move(algebra)), gens_(generators) {
  const GroebnerBasis& igb = algebra_->ideal().groebner();
  for (auto& r : relations) {
    if (r.is_zero()) continue;
    if (r.max_component() >= gens_) throw InputError("relation refers to a generator that does not exist");
    Vector red = reduce_mod_ideal(r, igb);
    if (!red.is_zero()) rels_.push_back(std::move(red));
  }
}

FPModule FPModule::cyclic(AlgebraPtr algebra, const Ideal& J) {
  std::vector<Vector> rels = J.generator_vectors();
  return FPModule(std::move(algebra), 1, std::move(rels));
}

std::vector<Vector> FPModule::relation_module() const {
  std::vector<Vector> out = rels_;
  const GroebnerBasis& igb = algebra_->ideal().groebner();
  for (std::size_t j = 0; j < gens_; ++j)
    for (const auto& e : igb.elements()) out.push_back(e.shifted_components(static_cast<std::int64_t>(j)));
  return out;
}

const GroebnerBasis& FPModule::relation_gb() const {
  std::call_once(cache_->once, [this] { cache_->gb = GroebnerBasis::compute(relation_module()); });
  return cache_->gb;
}

bool FPModule::is_zero() const {
  if (gens_ == 0) return true;
  const GroebnerBasis& gb = relation_gb();
  for (std::size_t j = 0; j < gens_; ++j)
    if (!gb.contains_unit(static_cast<std::uint32_t>(j))) return false;
  return true;
}

FPModule FPModule::translated(std::span<const Scalar> a) const {
  std::vector<Vector> rels;
  for (const auto& r : rels_) rels.push_back(translate(r, a));
  return FPModule(algebra_->translated(a), gens_, std::move(rels));
}

std::string FPModule::to_string() const {
  std::string s = "coker(" + std::to_string(gens_) + " gens";
  for (const auto& r : rels_) {
    s += "; [";
    for (std::size_t j = 0; j < gens_; ++j) {
      if (j) s += ", ";
      s += format_polynomial(*ring(), r.component(static_cast<std::uint32_t>(j)));
    }
    s += "]";
  }
  if (!algebra_->ideal().is_zero()) s += " over R/" + algebra_->ideal().to_string();
  return s + ")";
}

// ---------------------------------------------------------------- ModuleMap

ModuleMap ModuleMap::trusted(FPModule source, FPModule target, std::vector<Vector> columns) {
  ModuleMap f;
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  f.cols_ = std::move(columns);
  return f;
}

ModuleMap::ModuleMap(FPModule source, FPModule target, std::vector<Vector> columns)
    : source_(std::move(source)), target_(std::move(target)), cols_(std::move(columns)) {
  if (!same_algebra(source_.algebra(), target_.algebra())) throw InputError("map between modules over different rings");
  if (cols_.size() != source_.generators()) throw InputError("map has the wrong number of columns");
  for (const auto& c : cols_)
    if (!c.is_zero() && c.max_component() >= target_.generators()) throw InputError("map column exceeds target rank");
  for (const auto& r : source_.relations())
    if (!target_.is_zero_element(apply(r))) throw InputError("map does not respect the source relations");
}

ModuleMap ModuleMap::identity(const FPModule& m) {
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < m.generators(); ++j) cols.push_back(Vector::unit(m.algebra()->field(), static_cast<std::uint32_t>(j)));
  return trusted(m, m, std::move(cols));
}

ModuleMap ModuleMap::zero(const FPModule& source, const FPModule& target) {
  return trusted(source, target, std::vector<Vector>(source.generators()));
}

bool ModuleMap::is_zero() const {
  return std::all_of(cols_.begin(), cols_.end(), [&](const Vector& c) { return target_.is_zero_element(c); });
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  std::vector<Vector> cols;
  for (const auto& c : f.columns()) cols.push_back(g.apply(c));
  return ModuleMap::trusted(f.source(), g.target(), std::move(cols));
}

// ---------------------------------------------------------------- subquotients

Subquotient present_quotient(const AlgebraPtr& algebra, std::span<const Vector> numerator, std::span<const Vector> denominator,
                             std::size_t rank) {
  std::vector<Vector> gens;
  for (const auto& z : numerator)
    if (!z.is_zero()) gens.push_back(z);
  if (gens.empty()) return {FPModule::zero(algebra), {}};
  std::vector<Vector> denom(denominator.begin(), denominator.end());
  for (std::size_t j = 0; j < rank; ++j)
    for (const auto& e : algebra->ideal().groebner().elements()) denom.push_back(e.shifted_components(static_cast<std::int64_t>(j)));
  FPModule raw(algebra, gens.size(), preimage(gens, denom, rank));
  Pruned p = prune(raw);
  std::vector<Vector> kept;
  for (std::size_t k : p.kept) kept.push_back(gens[k]);
  return {std::move(p.module), std::move(kept)};
}

Subquotient subquotient(const AlgebraPtr& algebra, std::span<const Vector> numerator, std::span<const Vector> denominator,
                        std::size_t rank) {
  std::vector<Vector> span(numerator.begin(), numerator.end());
  for (std::size_t j = 0; j < rank; ++j)
    for (const auto& e : algebra->ideal().groebner().elements()) span.push_back(e.shifted_components(static_cast<std::int64_t>(j)));
  if (!GroebnerBasis::compute(span).contains_all(denominator)) throw InputError("subquotient: denominator is not contained in numerator");
  return present_quotient(algebra, numerator, denominator, rank);
}

Subquotient kernel(const ModuleMap& f) {
  const FPModule& src = f.source();
  if (src.generators() == 0) return {FPModule::zero(src.algebra()), {}};
  std::vector<Vector> k = preimage(f.columns(), f.target().relation_gb().elements(), f.target().generators());
  return present_quotient(src.algebra(), k, src.relation_gb().elements(), src.generators());
}

Subquotient image(const ModuleMap& f) {
  return present_quotient(f.target().algebra(), f.columns(), f.target().relation_gb().elements(), f.target().generators());
}

Pruned prune(const FPModule& m) {
  const std::size_t g = m.generators();
  const Field field = m.algebra()->field();
  const GroebnerBasis& gb = m.relation_gb();
  std::vector<char> pivot(g, 0);
  for (std::size_t i = 0; i < gb.size(); ++i)
    if (gb.leading_term(i).mono.is_one()) pivot[gb.leading_term(i).comp] = 1;

  Pruned out;
  std::vector<std::size_t> new_index(g, 0);
  for (std::size_t j = 0; j < g; ++j)
    if (!pivot[j]) {
      new_index[j] = out.kept.size();
      out.kept.push_back(j);
    }
  if (out.kept.size() == g) {
    out.module = m;
    for (std::size_t j = 0; j < g; ++j) out.to_new.push_back(Vector::unit(field, static_cast<std::uint32_t>(j)));
    return out;
  }
  out.to_new.assign(g, Vector{});
  for (std::size_t j = 0; j < g; ++j)
    if (!pivot[j]) out.to_new[j] = Vector::unit(field, static_cast<std::uint32_t>(new_index[j]));
  // A constant-pivot element is e_j + sum_{k > j, k free} c_k e_k.
  for (std::size_t i = 0; i < gb.size(); ++i) {
    if (!gb.leading_term(i).mono.is_one()) continue;
    const std::uint32_t j = gb.leading_term(i).comp;
    Vector img;
    for (const auto& t : gb.elements()[i].terms()) {
      if (t.comp == j) continue;
      img -= Vector::constant(t.coef, static_cast<std::uint32_t>(new_index[t.comp]));
    }
    out.to_new[j] = std::move(img);
  }
  std::vector<Vector> rels;
  for (std::size_t i = 0; i < gb.size(); ++i) {
    if (gb.leading_term(i).mono.is_one()) continue;
    Vector r = gb.elements()[i].substitute_basis(out.to_new);
    if (!r.is_zero()) rels.push_back(std::move(r));
  }
  out.module = FPModule(m.algebra(), out.kept.size(), std::move(rels));
  return out;
}

FPModule direct_sum(std::span<const FPModule> parts) {
  if (parts.empty()) throw InputError("direct_sum of nothing");
  std::vector<Vector> rels;
  std::size_t offset = 0;
  for (const auto& p : parts) {
    if (!same_algebra(p.algebra(), parts.front().algebra())) throw InputError("direct_sum over different rings");
    for (const auto& r : p.relations()) rels.push_back(r.shifted_components(static_cast<std::int64_t>(offset)));
    offset += p.generators();
  }
  return FPModule(parts.front().algebra(), offset, std::move(rels));
}

// ---------------------------------------------------------------- invariants

std::optional<long> length(const FPModule& m) {
  const std::size_t g = m.generators();
  if (g == 0) return 0L;
  const GroebnerBasis& gb = m.relation_gb();
  std::vector<std::vector<Monomial>> leads(g);
  for (std::size_t i = 0; i < gb.size(); ++i) leads[gb.leading_term(i).comp].push_back(gb.leading_term(i).mono);
  long total = 0;
  for (std::size_t j = 0; j < g; ++j) {
    auto basis = standard_monomials(leads[j], m.algebra()->num_vars());
    if (!basis) return std::nullopt;
    total += static_cast<long>(basis->size());
  }
  return total;
}

Ideal annihilator(const FPModule& m) {
  const std::size_t g = m.generators();
  if (g == 0) return Ideal::unit(m.ring());
  const Field field = m.algebra()->field();
  Vector diagonal;
  for (std::size_t j = 0; j < g; ++j) diagonal += Vector::unit(field, static_cast<std::uint32_t>(j * g + j));
  std::vector<Vector> blocks;
  for (std::size_t b = 0; b < g; ++b)
    for (const auto& e : m.relation_gb().elements()) blocks.push_back(e.shifted_components(static_cast<std::int64_t>(b * g)));
  std::vector<Vector> cols{diagonal};
  std::vector<Polynomial> gens;
  for (auto& v : preimage(cols, blocks, g * g)) gens.emplace_back(m.ring(), std::move(v));
  return Ideal(m.ring(), std::move(gens));
}

bool annihilated_by(const FPModule& m, const Ideal& J) {
  for (const auto& f : J.generators())
    for (std::size_t j = 0; j < m.generators(); ++j)
      if (!m.is_zero_element(f.vec().shifted_components(static_cast<std::int64_t>(j)))) return false;
  return true;
}

Subquotient torsion_component_at_point(const FPModule& m, std::span<const Scalar> a) {
  const std::size_t g = m.generators();
  if (g == 0) return {FPModule::zero(m.algebra()), {}};
  const int n = m.algebra()->num_vars();
  const Field field = m.algebra()->field();
  FPModule mt = m.translated(a);

  std::vector<Vector> current = mt.relation_gb().elements();
  if (n == 0) {
    current.clear();
    for (std::size_t j = 0; j < g; ++j) current.push_back(Vector::unit(field, static_cast<std::uint32_t>(j)));
  } else {
    // v -> (x_1 v, ..., x_n v) in (R^g)^n; N_{t+1} is the preimage of N_t^n.
    std::vector<Vector> cols(g);
    for (std::size_t j = 0; j < g; ++j)
      for (int i = 0; i < n; ++i)
        cols[j] += Vector::from_sorted({Term{Monomial::variable(i), static_cast<std::uint32_t>(i * g + j), Scalar::one(field)}});
    GroebnerBasis gb = mt.relation_gb();
    for (;;) {
      std::vector<Vector> sub;
      for (int i = 0; i < n; ++i)
        for (const auto& e : current) sub.push_back(e.shifted_components(static_cast<std::int64_t>(i * g)));
      std::vector<Vector> next = preimage(cols, sub, n * g);
      if (gb.contains_all(next)) break;
      gb = GroebnerBasis::compute(next);
      current = gb.elements();
    }
  }
  std::vector<Scalar> back = negated(a);
  std::vector<Vector> gens;
  for (const auto& v : current) gens.push_back(translate(v, back));
  return present_quotient(m.algebra(), gens, m.relation_gb().elements(), g);
}

long colength(const FPModule& m, std::span<const Scalar> a, int s) {
  if (s < 0) throw InputError("colength: negative power");
  return colength_at_origin(m.translated(a), s);
}

std::optional<int> HilbertSamuel::local_dimension() const {
  switch (verdict) {
    case Verdict::Stabilizes:
      return value == 0 ? -1 : 0;
    case Verdict::Growth:
      return degree;
    case Verdict::Inconclusive:
      break;
  }
  return std::nullopt;
}

HilbertSamuel hilbert_samuel(const FPModule& m, std::span<const Scalar> a, int s_max) {
  if (s_max < 3) throw InputError("hilbert_samuel needs s_max >= 3");
  HilbertSamuel hs;
  FPModule mt = m.translated(a);
  for (int s = 1; s <= s_max; ++s) hs.lengths.push_back(colength_at_origin(mt, s));
  auto tail_constant = [](const std::vector<long>& v) {
    const std::size_t n = v.size();
    return n >= 3 && v[n - 1] == v[n - 2] && v[n - 2] == v[n - 3];
  };
  if (tail_constant(hs.lengths)) {
    hs.verdict = HilbertSamuel::Verdict::Stabilizes;
    hs.value = hs.lengths.back();
    return hs;
  }
  std::vector<long> diff = hs.lengths;
  for (int d = 1; diff.size() > 3; ++d) {
    std::vector<long> next;
    for (std::size_t i = 1; i < diff.size(); ++i) next.push_back(diff[i] - diff[i - 1]);
    diff = std::move(next);
    if (tail_constant(diff) && diff.back() != 0) {
      hs.verdict = HilbertSamuel::Verdict::Growth;
      hs.degree = d;
      return hs;
    }
  }
  return hs;
}

long local_length(const FPModule& m, std::span<const Scalar> a, int max_s) {
  if (m.generators() == 0) return 0;
  FPModule mt = m.translated(a);
  long prev = colength_at_origin(mt, 1);
  if (prev == 0) return 0;
  for (int s = 2; s <= max_s; ++s) {
    long cur = colength_at_origin(mt, s);
    if (cur == prev) return cur;
    prev = cur;
  }
  throw InconclusiveError("local length did not stabilize by s = " + std::to_string(max_s) + "; module is not finitely supported at the point");
}

bool stalk_is_zero(const FPModule& m, std::span<const Scalar> a) {
  return m.generators() == 0 || colength(m, a, 1) == 0;
}

// ---------------------------------------------------------------- restriction of scalars

RestrictedModule restrict_scalars(const FPModule& m, std::span<const int> keep, const AlgebraPtr& target) {
  const int n = m.algebra()->num_vars();
  if (target->num_vars() != static_cast<int>(keep.size())) throw InputError("restrict_scalars: target ring has the wrong number of variables");
  RestrictedModule out;
  out.keep.assign(keep.begin(), keep.end());
  std::uint32_t keep_mask = 0;
  for (int k : keep) {
    if (k < 0 || k >= n) throw InputError("restrict_scalars: variable index out of range");
    keep_mask |= 1u << k;
  }
  out.drop_mask = ((1u << n) - 1) & ~keep_mask;
  std::vector<int> dropped;
  for (int v = 0; v < n; ++v)
    if (out.drop_mask >> v & 1u) dropped.push_back(v);

  const std::size_t g = m.generators();
  const Field field = m.algebra()->field();
  const MonomialOrder block = MonomialOrder::block(out.drop_mask);
  out.block_gb = GroebnerBasis::compute(m.relation_module(), ModuleOrder(block));

  // x-monomials per component outside the y-free leading terms.
  for (std::size_t j = 0; j < g; ++j) {
    std::vector<Monomial> leads;
    for (std::size_t i = 0; i < out.block_gb.size(); ++i) {
      const Term& lt = out.block_gb.leading_term(i);
      if (lt.comp != j || lt.mono.degree_in(keep_mask) != 0) continue;
      Monomial packed;
      for (std::size_t k = 0; k < dropped.size(); ++k) packed.exp[k] = lt.mono.exp[dropped[k]];
      packed.degree = lt.mono.degree;
      leads.push_back(packed);
    }
    auto basis = standard_monomials(leads, static_cast<int>(dropped.size()));
    if (!basis) throw InputError("kernel not proper over Y-model: module is not finite over the kept variables");
    for (const auto& p : *basis) {
      Monomial x;
      for (std::size_t k = 0; k < dropped.size(); ++k) x.exp[dropped[k]] = p.exp[k];
      x.degree = p.degree;
      out.comp.push_back(j);
      out.mono.push_back(x);
    }
  }

  const std::size_t b = out.comp.size();
  std::vector<Vector> aug = out.block_gb.elements();
  for (std::size_t k = 0; k < b; ++k)
    aug.push_back(Vector::from_sorted({Term{out.mono[k], static_cast<std::uint32_t>(out.comp[k]), Scalar::one(field)}}) +
                  Vector::unit(field, static_cast<std::uint32_t>(g + k)));
  std::vector<int> groups(g + b, 1);
  std::fill(groups.begin(), groups.begin() + static_cast<long>(g), 0);
  GroebnerBasis gb = GroebnerBasis::compute(aug, ModuleOrder(block, ModuleOrder::Strategy::TermOverPosition, std::move(groups)));

  std::vector<int> index_map(n, -1);
  for (std::size_t k = 0; k < keep.size(); ++k) index_map[keep[k]] = static_cast<int>(k);
  std::vector<Vector> rels;
  for (std::size_t i = 0; i < gb.size(); ++i) {
    const Term& lt = gb.leading_term(i);
    if (lt.comp < g || lt.mono.degree_in(out.drop_mask) != 0) continue;
    rels.push_back(reindex_variables(gb.elements()[i].shifted_components(-static_cast<std::int64_t>(g)), index_map));
  }
  out.module = FPModule(target, b, std::move(rels));
  return out;
}

ModuleMap restrict_map(const ModuleMap& f, const RestrictedModule& source, const RestrictedModule& target) {
  std::map<std::pair<std::size_t, std::vector<std::int32_t>>, std::size_t> index;
  for (std::size_t k = 0; k < target.comp.size(); ++k)
    index[{target.comp[k], std::vector<std::int32_t>(target.mono[k].exp.begin(), target.mono[k].exp.end())}] = k;
  const int n = f.source().algebra()->num_vars();
  std::vector<int> index_map(n, -1);
  for (std::size_t k = 0; k < target.keep.size(); ++k) index_map[target.keep[k]] = static_cast<int>(k);
  const Field field = f.source().algebra()->field();

  std::vector<Vector> cols;
  for (std::size_t k = 0; k < source.comp.size(); ++k) {
    Vector v = f.columns()[source.comp[k]].times_monomial(source.mono[k], Scalar::one(field));
    Vector nf = target.block_gb.normal_form(v);
    std::vector<Term> terms;
    for (const auto& t : nf.terms()) {
      Monomial x, y;
      for (int i = 0; i < n; ++i) {
        if (target.drop_mask >> i & 1u) {
          x.exp[i] = t.mono.exp[i];
          x.degree += t.mono.exp[i];
        } else {
          y.exp[i] = t.mono.exp[i];
          y.degree += t.mono.exp[i];
        }
      }
      auto it = index.find({t.comp, std::vector<std::int32_t>(x.exp.begin(), x.exp.end())});
      if (it == index.end()) throw ConsistencyError("restrict_map: normal form left the k[y]-basis");
      terms.push_back(Term{y, static_cast<std::uint32_t>(it->second), t.coef});
    }
    cols.push_back(reindex_variables(Vector(std::move(terms)), index_map));
  }
  return ModuleMap::trusted(source.module, target.module, std::move(cols));
}

}  // namespace koszulkit
