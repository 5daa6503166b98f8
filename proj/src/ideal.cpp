#include "koszulkit/ideal.hpp"

#include <algorithm>
#include <sstream>

#include "koszulkit/errors.hpp"

namespace koszulkit {

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)), gens_(std::move(generators)) {
  for (const auto& g : gens_)
    if (!same_ring(g.ring(), ring_)) throw InputError("ideal generators from mixed rings");
}

Ideal Ideal::unit(RingPtr ring) {
  auto one = Polynomial::constant(ring, 1);
  return Ideal(std::move(ring), {one});
}

Ideal Ideal::parse(RingPtr ring, std::string_view text) {
  std::vector<Polynomial> gens;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    gens.push_back(Polynomial::parse(ring, item));
  }
  return Ideal(std::move(ring), std::move(gens));
}

std::vector<Vector> Ideal::generator_vectors() const {
  std::vector<Vector> v;
  v.reserve(gens_.size());
  for (const auto& g : gens_) v.push_back(g.vec());
  return v;
}

const GroebnerBasis& Ideal::groebner() const {
  std::call_once(cache_->once, [this] { cache_->gb = GroebnerBasis::compute(generator_vectors()); });
  return cache_->gb;
}

std::vector<Polynomial> Ideal::groebner_polynomials() const {
  std::vector<Polynomial> out;
  for (const auto& e : groebner().elements()) out.emplace_back(ring_, e);
  return out;
}

bool Ideal::contains(const Polynomial& f) const { return groebner().contains(f.vec()); }

bool Ideal::contains(const Ideal& other) const {
  auto v = other.generator_vectors();
  return groebner().contains_all(v);
}

Ideal Ideal::operator+(const Ideal& other) const {
  if (!same_ring(ring_, other.ring_)) throw InputError("ideals from different rings");
  auto g = gens_;
  g.insert(g.end(), other.gens_.begin(), other.gens_.end());
  return Ideal(ring_, std::move(g));
}

std::string Ideal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ", ";
    s += gens_[i].to_string();
  }
  return s + ")";
}

std::vector<Polynomial> groebner_basis(std::span<const Polynomial> generators, const MonomialOrder& order) {
  if (generators.empty()) return {};
  const RingPtr& ring = generators.front().ring();
  std::vector<Vector> v;
  for (const auto& g : generators) {
    if (!same_ring(g.ring(), ring)) throw InputError("groebner_basis: generators from mixed rings");
    v.push_back(g.vec());
  }
  GroebnerBasis gb = GroebnerBasis::compute(v, ModuleOrder(order));
  std::vector<Polynomial> out;
  for (const auto& e : gb.elements()) out.emplace_back(ring, e);
  return out;
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb) { return {f.ring(), gb.normal_form(f.vec())}; }

Ideal ideal_quotient(const Ideal& I, const Ideal& J) {
  if (!same_ring(I.ring(), J.ring())) throw InputError("ideal_quotient: different rings");
  const auto& jg = J.generators();
  const std::size_t s = jg.size();
  if (s == 0) return Ideal::unit(I.ring());
  // r in I : J  iff  (r*g_1, ..., r*g_s) lies in I^s.
  Vector column;
  for (std::size_t k = 0; k < s; ++k) column += jg[k].vec().shifted_components(static_cast<std::int64_t>(k));
  std::vector<Vector> sub;
  for (const auto& e : I.groebner().elements())
    for (std::size_t k = 0; k < s; ++k) sub.push_back(e.shifted_components(static_cast<std::int64_t>(k)));
  std::vector<Vector> cols{column};
  std::vector<Polynomial> gens;
  for (auto& v : preimage(cols, sub, s)) gens.emplace_back(I.ring(), std::move(v));
  return Ideal(I.ring(), std::move(gens));
}

Ideal saturation(const Ideal& I, const Ideal& J) {
  Ideal current = I;
  for (;;) {
    Ideal next = ideal_quotient(current, J);
    if (current.contains(next)) return Ideal(current.ring(), current.groebner_polynomials());
    current = Ideal(next.ring(), next.groebner_polynomials());
  }
}

bool radical_membership(const Polynomial& f, const Ideal& I) {
  if (!same_ring(f.ring(), I.ring())) throw InputError("radical_membership: different rings");
  const int t = I.ring()->num_vars();
  const Field field = I.ring()->field();
  std::vector<Vector> gens = I.generator_vectors();
  Vector tf = f.vec().times_monomial(Monomial::variable(t), Scalar::one(field));
  gens.push_back(tf - Vector::constant(Scalar::one(field)));
  return GroebnerBasis::compute(gens).contains_unit(0);
}

Ideal leading_term_ideal(const Ideal& I, const MonomialOrder& order) {
  GroebnerBasis gb = order == MonomialOrder::grevlex() ? I.groebner() : GroebnerBasis::compute(I.generator_vectors(), ModuleOrder(order));
  std::vector<Polynomial> leads;
  const Scalar one = Scalar::one(I.ring()->field());
  for (std::size_t i = 0; i < gb.size(); ++i)
    leads.emplace_back(I.ring(), Vector::from_sorted({Term{gb.leading_term(i).mono, 0, one}}));
  return Ideal(I.ring(), std::move(leads));
}

int krull_dimension(const Ideal& I) {
  const GroebnerBasis& gb = I.groebner();
  if (gb.contains_unit(0)) return -1;
  const int n = I.ring()->num_vars();
  std::vector<std::uint32_t> supports;
  for (std::size_t i = 0; i < gb.size(); ++i) {
    std::uint32_t s = 0;
    for (int v = 0; v < n; ++v)
      if (gb.leading_term(i).mono.exp[v]) s |= 1u << v;
    supports.push_back(s);
  }
  int best = 0;
  for (std::uint32_t set = 0; set < (1u << n); ++set) {
    int size = __builtin_popcount(set);
    if (size <= best) continue;
    bool independent = std::none_of(supports.begin(), supports.end(), [set](std::uint32_t s) { return (s & ~set) == 0; });
    if (independent) best = size;
  }
  return best;
}

std::optional<std::vector<Monomial>> standard_monomials(std::span<const Monomial> leads, int nvars) {
  for (const auto& l : leads)
    if (l.is_one()) return std::vector<Monomial>{};
  std::vector<std::int32_t> bound(nvars, -1);
  for (const auto& l : leads) {
    int var = -1;
    bool pure = true;
    for (int v = 0; v < kMaxVars; ++v) {
      if (!l.exp[v]) continue;
      if (var >= 0) pure = false;
      var = v;
    }
    if (pure && var >= 0 && var < nvars && (bound[var] < 0 || l.exp[var] < bound[var])) bound[var] = l.exp[var];
  }
  for (int v = 0; v < nvars; ++v)
    if (bound[v] < 0) return std::nullopt;

  std::vector<Monomial> out;
  Monomial m;
  // Odometer over the box prod [0, bound_v).
  for (;;) {
    bool divisible = std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
    if (!divisible) out.push_back(m);
    int v = 0;
    for (; v < nvars; ++v) {
      if (m.exp[v] + 1 < bound[v]) {
        ++m.exp[v];
        ++m.degree;
        break;
      }
      m.degree -= m.exp[v];
      m.exp[v] = 0;
    }
    if (v == nvars) break;
  }
  const auto& ord = MonomialOrder::grevlex();
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ord.compare(a, b) < 0; });
  return out;
}

std::vector<Monomial> staircase_basis(const Ideal& I, const MonomialOrder& order) {
  GroebnerBasis gb = order == MonomialOrder::grevlex() ? I.groebner() : GroebnerBasis::compute(I.generator_vectors(), ModuleOrder(order));
  std::vector<Monomial> leads;
  for (std::size_t i = 0; i < gb.size(); ++i) leads.push_back(gb.leading_term(i).mono);
  auto basis = standard_monomials(leads, I.ring()->num_vars());
  if (!basis) throw InputError("infinite basis: ideal is not zero-dimensional");
  return *basis;
}

Ideal eliminate(const Ideal& I, std::span<const int> keep) {
  const int n = I.ring()->num_vars();
  std::uint32_t keep_mask = 0;
  for (int k : keep) {
    if (k < 0 || k >= n) throw InputError("eliminate: variable index out of range");
    keep_mask |= 1u << k;
  }
  const std::uint32_t drop_mask = ((1u << n) - 1) & ~keep_mask;
  GroebnerBasis gb = GroebnerBasis::compute(I.generator_vectors(), ModuleOrder(MonomialOrder::block(drop_mask)));
  std::vector<Polynomial> gens;
  for (const auto& e : gb.elements()) {
    bool free_of_dropped = std::all_of(e.terms().begin(), e.terms().end(), [&](const Term& t) { return t.mono.degree_in(drop_mask) == 0; });
    if (free_of_dropped) gens.emplace_back(I.ring(), e);
  }
  return Ideal(I.ring(), std::move(gens));
}

}  // namespace koszulkit
