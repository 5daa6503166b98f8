#include "koszulkit/integral.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "koszulkit/errors.hpp"

namespace koszulkit {

namespace {

std::string format_length(const std::optional<long>& l) { return l ? std::to_string(*l) : "inf"; }

bool nonzero(const std::optional<long>& l) { return !l || *l != 0; }

bool is_one(const std::optional<long>& l) { return l && *l == 1; }

void require_on_x(const Kernel& k, const Point& p) {
  const AlgebraPtr& a = k.pair().a();
  if (static_cast<int>(p.size()) != a->num_vars())
    throw InputError("point " + format_point(p) + " has " + std::to_string(p.size()) + " coordinates, X-model has " +
                     std::to_string(a->num_vars()) + " variables");
  if (!on_subvariety(a->ideal(), p)) throw InputError("point " + format_point(p) + " is not on the X-model");
}

const char* sampled_disclaimer() {
  return "conditions checked at the sampled points only; they are stated for every closed point, so a holding verdict is "
         "evidence and a failing one is a counterexample";
}

}  // namespace

// ---------------------------------------------------------------- pair

AffinePair::AffinePair(AlgebraPtr a, AlgebraPtr b) : a_(std::move(a)), b_(std::move(b)) {
  if (!(a_->field() == b_->field())) throw InputError("X- and Y-models are over different fields");
  std::vector<std::string> names = a_->ring()->variables();
  std::set<std::string> seen(names.begin(), names.end());
  for (const auto& y : b_->ring()->variables()) {
    if (!seen.insert(y).second) throw InputError("variable '" + y + "' appears in both the X- and the Y-model");
    names.push_back(y);
  }
  auto ring = make_ring(a_->field(), names);
  const int na = a_->num_vars();
  for (int i = 0; i < na; ++i) x_slots_.push_back(i);
  for (int j = 0; j < b_->num_vars(); ++j) y_slots_.push_back(na + j);
  std::vector<Polynomial> gens;
  for (const auto& g : a_->ideal().generators()) gens.emplace_back(ring, from_a(g.vec()));
  for (const auto& g : b_->ideal().generators()) gens.emplace_back(ring, from_b(g.vec()));
  s_ = make_algebra(ring, Ideal(ring, std::move(gens)));
}

BoundedComplex AffinePair::diagonal() const {
  if (a_->num_vars() != b_->num_vars()) throw InputError("diagonal needs as many x- as y-variables");
  const auto& ring = s_->ring();
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < x_slots_.size(); ++i)
    gens.push_back(Polynomial::variable(ring, x_slots_[i]) - Polynomial::variable(ring, y_slots_[i]));
  return BoundedComplex::concentrated(FPModule::cyclic(s_, Ideal(ring, std::move(gens))), 0);
}

// ---------------------------------------------------------------- kernel

Kernel::Kernel(AffinePair pair, BoundedComplex k) : pair_(std::move(pair)), k_(std::move(k)) {
  if (!k_.algebra()) k_ = BoundedComplex(pair_.s());
  if (!same_algebra(k_.algebra(), pair_.s())) throw InputError("kernel is not a complex over the product ring");
  for (int q : k_.degrees()) {
    const FPModule t = k_.term(q);
    try {
      rank_over_b_[q] = restrict_scalars(t, pair_.y_slots(), pair_.b()).module.generators();
    } catch (const InputError& e) {
      throw InputError(std::string(e.what()) + " (kernel term in degree " + std::to_string(q) + ")");
    }
    try {
      restrict_scalars(t, pair_.x_slots(), pair_.a());
      finite_over_a_[q] = true;
    } catch (const InputError&) {
      finite_over_a_[q] = false;
    }
  }
}

int Kernel::amplitude() const { return k_.has_terms() ? k_.max_degree() - k_.min_degree() : 0; }

// ---------------------------------------------------------------- functor

BoundedComplex phi_free(const Kernel& k, const FreeComplex& f) {
  const AffinePair& pair = k.pair();
  if (!same_algebra(f.algebra(), pair.a())) throw InputError("phi: argument is not over the X-model");
  if (!f.is_free()) throw InputError("phi_free: argument is not a free complex");
  std::map<int, FPModule> terms;
  std::map<int, std::vector<Vector>> diffs;
  for (int q : f.degrees()) {
    terms.emplace(q, FPModule::free(pair.s(), f.rank(q)));
    std::vector<Vector> cols;
    for (const auto& c : f.differential(q)) cols.push_back(pair.from_a(c));
    if (!cols.empty()) diffs.emplace(q, std::move(cols));
  }
  BoundedComplex pulled(pair.s(), std::move(terms), std::move(diffs));
  BoundedComplex t = tensor_with_free(k.complex(), pulled);

  std::map<int, RestrictedModule> restricted;
  for (int q : t.degrees()) restricted.emplace(q, restrict_scalars(t.term(q), pair.y_slots(), pair.b()));
  std::map<int, FPModule> out_terms;
  std::map<int, std::vector<Vector>> out_diffs;
  for (const auto& [q, rm] : restricted) {
    out_terms.emplace(q, rm.module);
    auto next = restricted.find(q + 1);
    if (next == restricted.end()) continue;
    out_diffs.emplace(q, restrict_map(t.differential_map(q), rm, next->second).columns());
  }
  return BoundedComplex(pair.b(), std::move(out_terms), std::move(out_diffs));
}

BoundedComplex phi_complex(const Kernel& k, const BoundedComplex& e) {
  if (!same_algebra(e.algebra(), k.pair().a())) throw InputError("phi: argument is not over the X-model");
  if (!e.has_terms()) return BoundedComplex(k.pair().b());
  if (e.is_free()) return phi_free(k, e);
  LazyResolution res(e);
  res.extend_to(e.min_degree() - k.pair().a()->num_vars() - 3);
  if (!res.complete())
    throw InputError("phi: no finite free model over the X-model (its ring is singular and the argument has infinite projective dimension)");
  return phi_free(k, res.prefix(res.lowest()));
}

BoundedComplex phi_module(const Kernel& k, const FPModule& m) { return phi_complex(k, BoundedComplex::concentrated(m, 0)); }

BoundedComplex phi_point(const Kernel& k, const Point& a) {
  const AlgebraPtr& alg = k.pair().a();
  require_on_x(k, a);
  if (!alg->is_polynomial_ring()) throw InputError("phi_point: Kos(x - a) resolves k(a) only over a polynomial X-model");
  const auto& ring = alg->ring();
  std::vector<Polynomial> f;
  for (int i = 0; i < ring->num_vars(); ++i) f.push_back(Polynomial::variable(ring, i) - Polynomial(ring, Vector::constant(a[i])));
  return phi_free(k, koszul_complex(alg, f));
}

BoundedComplex phi_koszul(const Kernel& k, const SystemOfParameters& sop) {
  if (!same_algebra(sop.algebra, k.pair().a())) throw InputError("phi_koszul: sop is not over the X-model");
  return phi_free(k, koszul_complex(sop));
}

std::optional<long> hom_dimension(LazyResolution& p, const BoundedComplex& q, int i) {
  if (!p.target().has_terms() || !q.has_terms()) return 0L;
  auto narrow = length(derived_hom(p, q, i).module);
  auto wide = length(derived_hom(p, q, i, 1).module);
  if (narrow != wide)
    throw ConsistencyError("Hom^" + std::to_string(i) + " changes with the free-model window: " + format_length(narrow) + " vs " +
                           format_length(wide));
  return narrow;
}

// ---------------------------------------------------------------- checkers

const Condition* FFReport::condition(std::string_view name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

class Engine {
 public:
  Engine(const Kernel& k, int dim_x) : k_(k), dim_x_(dim_x) {
    if (dim_x < 0) throw InputError("dim X must be nonnegative");
    const int amp = k.amplitude();
    window_ = {-(dim_x + amp), dim_x + amp + 1};
  }

  std::pair<int, int> window() const { return window_; }

  const BoundedComplex& point_image(const Point& x) {
    auto key = format_point(x);
    auto it = points_.find(key);
    if (it == points_.end()) it = points_.emplace(key, phi_point(k_, x)).first;
    return it->second;
  }

  // Every degree where Hom^i(P, Q) can be nonzero when P has a finite free
  // model; otherwise the fixed window.
  HomTable table(LazyResolution& p, const Point& x1, const Point& x2, const std::string& sop) {
    HomTable t{x1, x2, sop, {}, false, true};
    const BoundedComplex& q = point_image(x2);
    int lo = window_.first, hi = window_.second;
    if (p.target().has_terms() && q.has_terms()) {
      const BoundedComplex& pt = p.target();
      p.extend_to(pt.min_degree() - k_.pair().b()->num_vars() - 2);
      if (p.complete()) {
        t.exhaustive = true;
        lo = std::min(lo, q.min_degree() - pt.max_degree());
        hi = std::max(hi, q.max_degree() - p.lowest());
      }
    } else {
      t.exhaustive = true;
    }
    for (int i = lo; i <= hi; ++i) {
      auto l = hom_dimension(p, q, i);
      t.lengths[i] = l;
      if (nonzero(l) && !(x1 == x2 && 0 <= i && i <= dim_x_)) t.vanishing_ok = false;
    }
    return t;
  }

  Condition condition1(const std::vector<std::pair<Point, Point>>& pairs, const LocalOptions& opts, std::vector<HomTable>& tables) {
    Condition c{"1", Verdict::holds, ""};
    std::vector<Point> sources;
    for (const auto& [x1, x2] : pairs) {
      require_on_x(k_, x1);
      require_on_x(k_, x2);
      if (std::find(sources.begin(), sources.end(), x1) == sources.end()) sources.push_back(x1);
    }
    std::ostringstream ev;
    for (const auto& x1 : sources) {
      if (ev.tellp() > 0) ev << "; ";
      ev << format_point(x1) << ": ";
      std::vector<SystemOfParameters> sops;
      try {
        sops = choose_sops(k_.pair().a(), x1, opts);
      } catch (const InconclusiveError& e) {
        c.verdict = combine(c.verdict, Verdict::not_witnessed);
        ev << e.what();
        continue;
      }
      bool found = false;
      std::string bad;
      for (const auto& sop : sops) {
        LazyResolution p(phi_koszul(k_, sop));
        bool ok = true;
        for (const auto& [a, b] : pairs) {
          if (!(a == x1)) continue;
          tables.push_back(table(p, a, b, sop.to_string()));
          const HomTable& t = tables.back();
          if (!t.vanishing_ok && ok) {
            ok = false;
            for (const auto& [i, l] : t.lengths)
              if (nonzero(l) && !(a == b && 0 <= i && i <= dim_x_)) {
                bad = "Hom^" + std::to_string(i) + " to " + format_point(b) + " has dimension " + format_length(l);
                break;
              }
          }
        }
        if (ok) {
          ev << "sop " << sop.to_string() << " vanishes as required";
          found = true;
          break;
        }
      }
      if (!found) {
        c.verdict = combine(c.verdict, Verdict::fails);
        ev << "every sop tried (" << sops.size() << ") fails, e.g. " << bad;
      }
    }
    c.evidence = ev.str();
    return c;
  }

  Condition condition2(const std::vector<Point>& points, std::vector<std::pair<Point, std::optional<long>>>& endo) {
    Condition c{"2", Verdict::holds, ""};
    std::ostringstream ev;
    for (const auto& x : points) {
      const BoundedComplex& q = point_image(x);
      LazyResolution p(q);
      auto l = hom_dimension(p, q, 0);
      endo.emplace_back(x, l);
      if (ev.tellp() > 0) ev << "; ";
      ev << "dim Hom^0 at " << format_point(x) << " = " << format_length(l);
      if (!is_one(l)) c.verdict = Verdict::fails;
    }
    c.evidence = ev.str();
    return c;
  }

 private:
  const Kernel& k_;
  int dim_x_;
  std::pair<int, int> window_;
  std::map<std::string, BoundedComplex> points_;
};

std::vector<Point> distinct_points(const std::vector<std::pair<Point, Point>>& pairs) {
  std::vector<Point> out;
  for (const auto& [a, b] : pairs)
    for (const Point* p : {&a, &b})
      if (std::find(out.begin(), out.end(), *p) == out.end()) out.push_back(*p);
  return out;
}

}  // namespace

FFReport check_strong_simplicity(const Kernel& k, const std::vector<std::pair<Point, Point>>& pairs, int dim_x, const LocalOptions& opts) {
  if (pairs.empty()) throw InputError("strong simplicity needs at least one pair of points");
  Engine engine(k, dim_x);
  FFReport r;
  r.mode = "strong";
  r.dim_x = dim_x;
  r.amplitude = k.amplitude();
  r.window = engine.window();
  r.conditions.push_back(engine.condition1(pairs, opts, r.tables));
  r.conditions.push_back(engine.condition2(distinct_points(pairs), r.endomorphisms));
  r.verdict = combine(r.conditions[0].verdict, r.conditions[1].verdict);
  r.disclaimer = sampled_disclaimer();
  return r;
}

FFReport check_orthonormality(const Kernel& k, const Point& witness, int dim_x, const std::vector<std::pair<Point, Point>>& pairs,
                              const LocalOptions& opts) {
  require_on_x(k, witness);
  Engine engine(k, dim_x);
  FFReport r;
  r.mode = "ortho";
  r.dim_x = dim_x;
  r.amplitude = k.amplitude();
  r.window = engine.window();
  r.witness = witness;
  const auto used = pairs.empty() ? std::vector<std::pair<Point, Point>>{{witness, witness}} : pairs;
  Condition c1 = engine.condition1(used, opts, r.tables);

  const AlgebraPtr& a = k.pair().a();
  const BoundedComplex& at_point = engine.point_image(witness);
  {
    LazyResolution structure(phi_module(k, FPModule::free(a, 1)));
    r.structure_to_point = hom_dimension(structure, at_point, 0);
  }
  Condition c21{"2.1", is_one(r.structure_to_point) ? Verdict::holds : Verdict::fails,
                "dim Hom^0(Phi(O), Phi(k(x))) = " + format_length(r.structure_to_point)};

  std::vector<Condition> per_sop{{"2.2", Verdict::holds, ""}, {"2.2*", Verdict::holds, ""}, {"2.3", Verdict::holds, ""}, {"2.3*", Verdict::holds, ""}};
  try {
    for (const auto& sop : choose_sops(a, witness, opts)) {
      OrthoItem item;
      item.sop = sop.to_string();
      FPModule quotient = torsion_component_at_point(FPModule::cyclic(a, Ideal(a->ring(), sop.f)), witness).module;
      auto l = length(quotient);
      if (!l) throw ConsistencyError("O_x/f_x has infinite length for sop " + item.sop);
      item.colength = *l;
      BoundedComplex phi_q = phi_module(k, quotient);
      LazyResolution kos(phi_koszul(k, sop));
      LazyResolution quot(phi_q);
      item.kos_to_point = hom_dimension(kos, at_point, 0);
      item.quotient_to_point = hom_dimension(quot, at_point, 0);
      item.kos_to_quotient = hom_dimension(kos, phi_q, 0);
      item.quotient_to_quotient = hom_dimension(quot, phi_q, 0);
      auto bounded = [&](const std::optional<long>& v) { return v && *v >= 1 && *v <= item.colength; };
      const bool ok[4] = {is_one(item.kos_to_point), is_one(item.quotient_to_point), bounded(item.kos_to_quotient),
                          bounded(item.quotient_to_quotient)};
      const std::optional<long>* vals[4] = {&item.kos_to_point, &item.quotient_to_point, &item.kos_to_quotient, &item.quotient_to_quotient};
      for (int j = 0; j < 4; ++j) {
        auto& c = per_sop[j];
        if (!ok[j]) c.verdict = Verdict::fails;
        if (!c.evidence.empty()) c.evidence += "; ";
        c.evidence += item.sop + ": dim " + format_length(*vals[j]);
        if (j >= 2) c.evidence += ", l = " + std::to_string(item.colength);
      }
      r.items.push_back(std::move(item));
    }
  } catch (const InconclusiveError& e) {
    for (auto& c : per_sop) {
      c.verdict = Verdict::not_witnessed;
      c.evidence = e.what();
    }
  }

  Condition c2{"2", Verdict::fails, ""};
  std::vector<Condition> alternatives{c21};
  alternatives.insert(alternatives.end(), per_sop.begin(), per_sop.end());
  for (const auto& alt : alternatives)
    if (alt.verdict == Verdict::holds) {
      c2.verdict = Verdict::holds;
      c2.evidence += (c2.evidence.empty() ? "holding: " : ", ") + alt.name;
    }
  if (c2.verdict != Verdict::holds) {
    bool open = std::any_of(alternatives.begin(), alternatives.end(), [](const Condition& c) { return c.verdict == Verdict::not_witnessed; });
    c2.verdict = open ? Verdict::not_witnessed : Verdict::fails;
    c2.evidence = "no alternative holds at " + format_point(witness);
  }

  r.conditions.push_back(c1);
  r.conditions.push_back(c2);
  r.conditions.insert(r.conditions.end(), alternatives.begin(), alternatives.end());
  r.verdict = combine(c1.verdict, c2.verdict);
  r.disclaimer = sampled_disclaimer();
  return r;
}

}  // namespace koszulkit
