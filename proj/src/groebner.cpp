#include "koszulkit/groebner.hpp"

#include <algorithm>
#include <set>

namespace koszulkit {

namespace {

using Terms = std::vector<Term>;

// a[ai..] - c * m * b[bi..], both sorted descending in `ord`.
Terms axpy(const Terms& a, std::size_t ai, const Scalar& c, const Monomial& m, const Terms& b, std::size_t bi,
           const ModuleOrder& ord) {
  Terms out;
  out.reserve(a.size() - ai + b.size() - bi);
  Monomial bm;
  bool have_bm = false;
  while (ai < a.size() || bi < b.size()) {
    if (bi < b.size() && !have_bm) {
      bm = b[bi].mono * m;
      have_bm = true;
    }
    int cmp = ai == a.size() ? -1 : bi == b.size() ? 1 : ord.compare(a[ai].mono, a[ai].comp, bm, b[bi].comp);
    if (cmp > 0) {
      out.push_back(a[ai++]);
    } else if (cmp < 0) {
      out.push_back(Term{bm, b[bi].comp, -(c * b[bi].coef)});
      ++bi;
      have_bm = false;
    } else {
      Scalar s = a[ai].coef - c * b[bi].coef;
      if (!s.is_zero()) out.push_back(Term{bm, a[ai].comp, std::move(s)});
      ++ai;
      ++bi;
      have_bm = false;
    }
  }
  return out;
}

void make_monic(Terms& t) {
  if (t.empty() || t.front().coef.is_one()) return;
  Scalar inv = t.front().coef.inverse();
  for (auto& x : t) x.coef *= inv;
}

// Working set of reducers with per-component lookup of leading terms.
class Reducer {
 public:
  explicit Reducer(const ModuleOrder& ord) : ord_(ord) {}

  void add(Terms t) {
    std::uint32_t c = t.front().comp;
    if (by_comp_.size() <= c) by_comp_.resize(c + 1);
    by_comp_[c].push_back(polys_.size());
    polys_.push_back(std::move(t));
    active_.push_back(true);
  }
  void deactivate(std::size_t i) { active_[i] = false; }
  std::size_t size() const { return polys_.size(); }
  const Terms& operator[](std::size_t i) const { return polys_[i]; }
  Terms& at(std::size_t i) { return polys_[i]; }
  bool active(std::size_t i) const { return active_[i]; }
  const std::vector<std::size_t>& bucket(std::uint32_t comp) const {
    static const std::vector<std::size_t> empty;
    return comp < by_comp_.size() ? by_comp_[comp] : empty;
  }

  // Index of an active reducer whose leading term divides t, or -1.
  long find_divisor(const Term& t, long skip = -1) const {
    for (std::size_t i : bucket(t.comp)) {
      if (!active_[i] || static_cast<long>(i) == skip) continue;
      if (polys_[i].front().mono.divides(t.mono)) return static_cast<long>(i);
    }
    return -1;
  }

  // Full reduction. With skip >= 0 that reducer is ignored; with
  // keep_head the leading term is left in place (tail reduction).
  Terms reduce(Terms f, long skip = -1, bool keep_head = false) const {
    Terms done;
    std::size_t i = 0;
    if (keep_head && !f.empty()) {
      done.push_back(f.front());
      i = 1;
    }
    while (i < f.size()) {
      long d = find_divisor(f[i], skip);
      if (d < 0) {
        done.push_back(std::move(f[i]));
        ++i;
        continue;
      }
      const Terms& g = polys_[d];
      Monomial m = f[i].mono.divided_by(g.front().mono);
      Scalar c = f[i].coef / g.front().coef;
      f = axpy(f, i + 1, c, m, g, 1, ord_);
      i = 0;
    }
    return done;
  }

 private:
  const ModuleOrder& ord_;
  std::vector<Terms> polys_;
  std::vector<bool> active_;
  std::vector<std::vector<std::size_t>> by_comp_;
};

struct PairKey {
  Monomial lcm;
  std::uint32_t comp;
  std::size_t i, j;
};

}  // namespace

std::vector<Term> sorted_terms(const Vector& v, const ModuleOrder& order) {
  Terms t = v.terms();
  if (!(order == canonical_order()))
    std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return order.compare(a, b) > 0; });
  return t;
}

GroebnerBasis GroebnerBasis::compute(std::span<const Vector> generators, const ModuleOrder& order) {
  GroebnerBasis result;
  result.order_ = order;
  const ModuleOrder& ord = result.order_;

  bool rank_one = true;
  for (const auto& g : generators)
    for (const auto& t : g.terms())
      if (t.comp != 0) rank_one = false;

  Reducer red(ord);
  auto cmp = [&ord](const PairKey& a, const PairKey& b) {
    int c = ord.compare(a.lcm, a.comp, b.lcm, b.comp);
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  };
  std::set<PairKey, decltype(cmp)> queue(cmp);
  std::vector<std::vector<char>> pending;  // pending[j][i], i < j

  auto is_pending = [&](std::size_t a, std::size_t b) {
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    return pending[b][a] != 0;
  };

  auto insert = [&](Terms h) {
    make_monic(h);
    std::size_t n = red.size();
    const Term lead = h.front();
    red.add(std::move(h));
    pending.emplace_back(n, 0);
    for (std::size_t i : red.bucket(lead.comp)) {
      if (i == n) continue;
      const Term& li = red[i].front();
      queue.insert(PairKey{Monomial::lcm(li.mono, lead.mono), lead.comp, i, n});
      pending[n][i] = 1;
    }
  };

  for (const auto& g : generators) {
    if (g.is_zero()) continue;
    Terms h = red.reduce(sorted_terms(g, ord));
    if (!h.empty()) insert(std::move(h));
  }

  while (!queue.empty()) {
    PairKey p = *queue.begin();
    queue.erase(queue.begin());
    pending[p.j][p.i] = 0;

    const Term& li = red[p.i].front();
    const Term& lj = red[p.j].front();
    if (rank_one && Monomial::coprime(li.mono, lj.mono)) continue;

    bool chain = false;
    for (std::size_t k : red.bucket(p.comp)) {
      if (k == p.i || k == p.j) continue;
      if (!red[k].front().mono.divides(p.lcm)) continue;
      if (!is_pending(p.i, k) && !is_pending(p.j, k)) {
        chain = true;
        break;
      }
    }
    if (chain) continue;

    Monomial mi = p.lcm.divided_by(li.mono);
    Monomial mj = p.lcm.divided_by(lj.mono);
    Terms si;
    si.reserve(red[p.i].size());
    for (const auto& t : red[p.i]) si.push_back(Term{t.mono * mi, t.comp, t.coef});
    Scalar one = red[p.j].front().coef;  // monic: equals 1
    Terms s = axpy(si, 1, one, mj, red[p.j], 1, ord);
    Terms h = red.reduce(std::move(s));
    if (!h.empty()) insert(std::move(h));
  }

  // Minimize: drop elements whose leading term is divisible by another's.
  const std::size_t n = red.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Term& li = red[i].front();
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !red.active(j)) continue;
      const Term& lj = red[j].front();
      if (lj.comp != li.comp || !lj.mono.divides(li.mono)) continue;
      if (lj.mono == li.mono && j > i) continue;
      red.deactivate(i);
      break;
    }
  }
  // Interreduce tails.
  std::vector<Terms> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (!red.active(i)) continue;
    Terms t = red.reduce(red[i], static_cast<long>(i), true);
    make_monic(t);
    red.at(i) = t;
    kept.push_back(std::move(t));
  }
  std::sort(kept.begin(), kept.end(), [&](const Terms& a, const Terms& b) { return ord.compare(a.front(), b.front()) < 0; });
  for (auto& t : kept) {
    result.elements_.push_back(Vector(t));
    result.ordered_.push_back(std::move(t));
  }
  return result;
}

Vector GroebnerBasis::normal_form(const Vector& v) const {
  if (v.is_zero() || ordered_.empty()) return v;
  Reducer red(order_);
  for (const auto& t : ordered_) red.add(t);
  return Vector(red.reduce(sorted_terms(v, order_)));
}

bool GroebnerBasis::contains_all(std::span<const Vector> vs) const {
  if (ordered_.empty()) return std::all_of(vs.begin(), vs.end(), [](const Vector& v) { return v.is_zero(); });
  Reducer red(order_);
  for (const auto& t : ordered_) red.add(t);
  for (const auto& v : vs)
    if (!v.is_zero() && !red.reduce(sorted_terms(v, order_)).empty()) return false;
  return true;
}

bool GroebnerBasis::contains_unit(std::uint32_t comp) const {
  for (const auto& t : ordered_)
    if (t.front().comp == comp && t.front().mono.is_one()) return true;
  return false;
}

std::vector<Vector> preimage(std::span<const Vector> columns, std::span<const Vector> submodule, std::size_t rank) {
  const std::size_t k = columns.size();
  if (k == 0) return {};
  std::vector<Vector> aug;
  aug.reserve(k + submodule.size());
  const Field f = [&] {
    for (const auto& c : columns)
      if (!c.is_zero()) return c.leading().coef.field();
    for (const auto& s : submodule)
      if (!s.is_zero()) return s.leading().coef.field();
    return Field::rationals();
  }();
  for (std::size_t j = 0; j < k; ++j) aug.push_back(columns[j] + Vector::unit(f, static_cast<std::uint32_t>(rank + j)));
  for (const auto& s : submodule)
    if (!s.is_zero()) aug.push_back(s);

  std::vector<int> groups(rank + k, 1);
  std::fill(groups.begin(), groups.begin() + rank, 0);
  ModuleOrder ord(MonomialOrder::grevlex(), ModuleOrder::Strategy::TermOverPosition, std::move(groups));
  GroebnerBasis gb = GroebnerBasis::compute(aug, ord);

  std::vector<Vector> out;
  for (std::size_t i = 0; i < gb.size(); ++i)
    if (gb.leading_term(i).comp >= rank) out.push_back(gb.elements()[i].shifted_components(-static_cast<std::int64_t>(rank)));
  return out;
}

std::vector<Vector> intersect(std::span<const Vector> a, std::span<const Vector> b, std::size_t rank) {
  std::vector<Vector> coeffs = preimage(a, b, rank);
  std::vector<Vector> out;
  for (const auto& c : coeffs) {
    Vector v = c.substitute_basis(a);
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> prune_generators(std::span<const Vector> gens, std::span<const Vector> base) {
  std::vector<Vector> span(base.begin(), base.end());
  std::vector<Vector> kept;
  GroebnerBasis gb = GroebnerBasis::compute(span);
  for (const auto& g : gens) {
    if (g.is_zero() || gb.contains(g)) continue;
    kept.push_back(g);
    span.push_back(g);
    gb = GroebnerBasis::compute(span);
  }
  return kept;
}

}  // namespace koszulkit
