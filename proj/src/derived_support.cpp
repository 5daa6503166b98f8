#include "koszulkit/derived_support.hpp"

#include <set>

#include "koszulkit/errors.hpp"

namespace koszulkit {

namespace {

struct Cohomology {
  std::vector<std::pair<int, FPModule>> modules;  // every degree of the complex

  explicit Cohomology(const BoundedComplex& k) {
    for (int q : k.degrees()) modules.emplace_back(q, cohomology(k, q).module);
  }
  std::vector<int> stalk_degrees(const Point& a) const {
    std::vector<int> out;
    for (const auto& [q, h] : modules)
      if (!stalk_is_zero(h, a)) out.push_back(q);
    return out;
  }
  std::vector<int> nonzero_degrees() const {
    std::vector<int> out;
    for (const auto& [q, h] : modules)
      if (!h.is_zero()) out.push_back(q);
    return out;
  }
};

void require_on_x(const AlgebraPtr& algebra, const Point& a) {
  if (static_cast<int>(a.size()) != algebra->num_vars()) throw InputError("point " + format_point(a) + " has the wrong number of coordinates");
  if (!on_subvariety(algebra->ideal(), a)) throw InputError("point " + format_point(a) + " does not lie on Spec O");
}

struct SopSearch {
  std::vector<SystemOfParameters> sops;
  Verdict failure = Verdict::holds;  // not_witnessed or inconclusive when sops is empty
  std::string note;
};

// Two sops at a (one with single_sop): supplied ones that vanish at a first.
SopSearch find_sops(const AlgebraPtr& algebra, const Point& a, const LocalOptions& opts) {
  SopSearch out;
  const std::size_t want = opts.single_sop ? 1 : 2;
  std::set<std::string> seen;
  try {
    for (const auto& f : opts.sops) {
      bool vanishes = true;
      for (const auto& g : f) vanishes = vanishes && g.evaluate(a).is_zero();
      if (!vanishes) continue;  // meant for another point
      auto sop = validate_sop(algebra, a, f, opts.sop_options());
      if (out.sops.size() < want && seen.insert(sop.to_string()).second) out.sops.push_back(std::move(sop));
    }
    if (!opts.dimension_override) local_dimension(algebra, a, opts.s_max);
  } catch (const InconclusiveError& e) {
    out.sops.clear();
    out.failure = Verdict::inconclusive;
    out.note = e.what();
    return out;
  }
  if (out.sops.size() < want) {
    try {
      for (auto& sop : suggest_sop(algebra, a, want + out.sops.size(), opts.budget, opts.sop_options()))
        if (out.sops.size() < want && seen.insert(sop.to_string()).second) out.sops.push_back(std::move(sop));
    } catch (const InconclusiveError& e) {
      if (out.sops.empty()) {
        out.failure = Verdict::not_witnessed;
        out.note = e.what();
      }
    }
  }
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

PointCheck check_point(const BoundedComplex& k, const Cohomology& coh, const Point& a, bool on_y, int d, const LocalOptions& opts) {
  PointCheck pc;
  pc.point = a;
  pc.on_y = on_y;
  SopSearch search = find_sops(k.algebra(), a, opts);
  if (search.sops.empty()) {
    pc.verdict = search.failure;
    pc.note = search.note;
    return pc;
  }
  pc.local_dim = search.sops[0].dim;
  auto allowed = [&](int i) { return on_y && i >= 0 && i <= d; };
  std::optional<bool> first_ok;
  for (const auto& sop : search.sops) {
    KoszulTable t = koszul_table(sop, k);
    bool ok = true;
    for (const auto& [i, len] : t.tor) ok = ok && (len == 0 || allowed(i));
    pc.tried.push_back({sop, t, t.first_nonzero_ext()});
    // Both ends of the Tor range are sop independent: the lowest index is
    // -max{q : H^q(K)_x != 0} and the highest is n_x - depth(K_x).
    if (first_ok && *first_ok != ok)
      throw ConsistencyError("the Tor range of K at " + format_point(a) + " depends on the sop: " + pc.tried[0].sop.to_string() + " vs " +
                             sop.to_string());
    first_ok = ok;
    if (ok && !pc.witness) pc.witness = pc.tried.size() - 1;
  }
  if (*first_ok) {
    pc.verdict = Verdict::holds;
    return pc;
  }
  const auto stalk = coh.stalk_degrees(a);
  if (stalk.empty()) throw ConsistencyError("Tor(Kos(f), K) is nonzero at " + format_point(a) + " although every H^q(K) vanishes there");
  pc.verdict = Verdict::fails;
  if (!on_y) {
    pc.note = "K is nonzero at a point off Y (H^q stalks in degrees " + join(stalk) + ")";
  } else {
    std::vector<int> bad;
    for (const auto& [i, len] : pc.tried[0].table.tor)
      if (len != 0 && !allowed(i)) bad.push_back(i);
    pc.note = "Tor_i != 0 for i in {" + join(bad) + "}, outside [0, " + std::to_string(d) + "]";
  }
  return pc;
}

long stalk_hom_length(const BoundedComplex& k, const SystemOfParameters& sop, LazyResolution& model, int i) {
  if (!k.has_terms()) return 0;
  long left = local_length(derived_hom(model, k, i).module, sop.point);
  long right = local_length(ext(sop, k, i), sop.point);
  if (left != right)
    throw ConsistencyError("Hom^" + std::to_string(i) + "_D(Kos(f), K) has length " + std::to_string(left) + " but Ext^" + std::to_string(i) +
                           "(Kos(f), K_x) has length " + std::to_string(right) + " for sop " + sop.to_string());
  return right;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    case Verdict::not_witnessed:
      return "not_witnessed";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

Verdict combine(Verdict a, Verdict b) {
  auto rank = [](Verdict v) {
    switch (v) {
      case Verdict::fails:
        return 3;
      case Verdict::inconclusive:
        return 2;
      case Verdict::not_witnessed:
        return 1;
      case Verdict::holds:
        return 0;
    }
    return 0;
  };
  return rank(a) >= rank(b) ? a : b;
}

bool on_subvariety(const Ideal& j, const Point& a) {
  for (const auto& g : j.generators())
    if (!g.evaluate(a).is_zero()) return false;
  return true;
}

std::vector<Point> integer_grid(const AlgebraPtr& algebra, int radius) {
  const int n = algebra->num_vars();
  std::vector<Point> out;
  std::vector<int> c(n, -radius);
  while (true) {
    Point p;
    for (int v : c) p.push_back(Scalar(algebra->field(), v));
    if (on_subvariety(algebra->ideal(), p)) out.push_back(std::move(p));
    int i = n - 1;
    while (i >= 0 && c[i] == radius) c[i--] = -radius;
    if (i < 0) break;
    ++c[i];
  }
  return out;
}

Verdict SupportConclusion::verdict() const {
  return is_sheaf && support_in_y && (zero_object || support_equals_y) ? Verdict::holds : Verdict::fails;
}

SupportConclusion check_support_conclusion(const BoundedComplex& k, const Ideal& j) {
  SupportConclusion c;
  Cohomology coh(k);
  c.nonzero_degrees = coh.nonzero_degrees();
  c.zero_object = c.nonzero_degrees.empty();
  c.is_sheaf = c.zero_object || c.nonzero_degrees == std::vector<int>{0};
  FPModule h0 = FPModule::zero(k.algebra());
  for (const auto& [q, h] : coh.modules)
    if (q == 0) h0 = h;
  if (h0.is_zero()) {
    c.support_in_y = true;
    return c;
  }
  Ideal ann = annihilator(h0);
  c.support_in_y = true;
  for (const auto& g : j.generators()) c.support_in_y = c.support_in_y && radical_membership(g, ann);
  Ideal y = j + k.algebra()->ideal();
  c.support_equals_y = c.support_in_y;
  for (const auto& g : ann.generators()) c.support_equals_y = c.support_equals_y && radical_membership(g, y);
  return c;
}

SupportReport check_support_hypotheses(const BoundedComplex& k, const Ideal& j, int d, const std::vector<Point>& off_points,
                                       const std::vector<Point>& on_points, const LocalOptions& opts) {
  if (!same_ring(j.ring(), k.algebra()->ring())) throw InputError("ideal of Y and complex live over different rings");
  SupportReport r;
  r.j = j;
  r.codim = d;
  Cohomology coh(k);
  for (const auto& a : off_points) {
    require_on_x(k.algebra(), a);
    if (on_subvariety(j, a)) throw InputError("point " + format_point(a) + " was given as off Y but lies on Y");
    r.points.push_back(check_point(k, coh, a, false, d, opts));
  }
  for (const auto& a : on_points) {
    require_on_x(k.algebra(), a);
    if (!on_subvariety(j, a)) throw InputError("point " + format_point(a) + " was given as on Y but does not lie on Y");
    r.points.push_back(check_point(k, coh, a, true, d, opts));
  }
  for (const auto& pc : r.points) r.hypotheses = combine(r.hypotheses, pc.verdict);
  return r;
}

SupportReport check_support(const BoundedComplex& k, const Ideal& j, int d, const std::vector<Point>& points, const LocalOptions& opts) {
  std::vector<Point> off, on;
  for (const auto& a : points) (on_subvariety(j, a) ? on : off).push_back(a);
  SupportReport r = check_support_hypotheses(k, j, d, off, on, opts);
  r.conclusion = check_support_conclusion(k, j);
  return r;
}

FPModule stalk_hom(const BoundedComplex& k, const SystemOfParameters& sop, int i) {
  if (!k.has_terms()) return FPModule::zero(sop.algebra);
  LazyResolution model(koszul_complex(sop), true);
  stalk_hom_length(k, sop, model, i);
  return ext(sop, k, i);
}

Support2Report check_support2(const BoundedComplex& k, const Ideal& j, int m, int n, const std::vector<Point>& points,
                              const LocalOptions& opts) {
  if (!same_ring(j.ring(), k.algebra()->ring())) throw InputError("ideal of Y and complex live over different rings");
  Support2Report r;
  r.m = m;
  r.n = n;
  Cohomology coh(k);
  for (const auto& a : points) {
    require_on_x(k.algebra(), a);
    HomWindowCheck pc;
    pc.point = a;
    pc.on_y = on_subvariety(j, a);
    SopSearch search = find_sops(k.algebra(), a, opts);
    if (search.sops.empty()) {
      pc.verdict = search.failure;
      pc.note = search.note;
      r.hypotheses = combine(r.hypotheses, pc.verdict);
      r.points.push_back(std::move(pc));
      continue;
    }
    pc.local_dim = search.sops[0].dim;
    auto allowed = [&](int i) { return pc.on_y && m <= i && i <= n; };
    std::optional<bool> first_ok;
    std::vector<int> bad;
    for (const auto& sop : search.sops) {
      std::map<int, long> lengths;
      bool ok = true;
      if (k.has_terms()) {
        LazyResolution model(koszul_complex(sop), true);
        for (int i = k.min_degree(); i <= k.max_degree() + sop.dim; ++i) {
          lengths[i] = stalk_hom_length(k, sop, model, i);
          if (lengths[i] != 0 && !allowed(i)) {
            ok = false;
            if (!first_ok) bad.push_back(i);
          }
        }
      }
      pc.tried.push_back(sop);
      pc.lengths.push_back(std::move(lengths));
      // Hom^i = Tor_{n_x - i}, whose range ends do not depend on the sop
      if (first_ok && *first_ok != ok)
        throw ConsistencyError("the Hom range of K at " + format_point(a) + " depends on the sop: " + pc.tried[0].to_string() + " vs " +
                               sop.to_string());
      first_ok = ok;
      if (ok && !pc.witness) pc.witness = pc.tried.size() - 1;
    }
    if (*first_ok) {
      pc.verdict = Verdict::holds;
    } else {
      if (coh.stalk_degrees(a).empty())
        throw ConsistencyError("Hom(Kos(f), K) is nonzero at " + format_point(a) + " although every H^q(K) vanishes there");
      pc.verdict = Verdict::fails;
      pc.note = "Hom^i != 0 for i in {" + join(bad) + "}" +
                (pc.on_y ? ", outside [" + std::to_string(m) + ", " + std::to_string(n) + "]" : " at a point off Y");
    }
    r.hypotheses = combine(r.hypotheses, pc.verdict);
    r.points.push_back(std::move(pc));
  }
  r.conclusion = check_support_conclusion(k, j);
  return r;
}

SpanReport spanning_test(const BoundedComplex& e, const std::vector<Point>& points, const LocalOptions& opts) {
  SpanReport r;
  Cohomology coh(e);
  r.nonzero_degrees = coh.nonzero_degrees();
  if (!r.nonzero_degrees.empty()) r.q0 = r.nonzero_degrees.back();
  for (const auto& a : points) {
    require_on_x(e.algebra(), a);
    auto sop = choose_sops(e.algebra(), a, [&] {
      LocalOptions one = opts;
      one.single_sop = true;
      return one;
    }())[0];
    // probe Hom^i(Kos(f_x), E) over the whole possible range
    bool nonzero = false;
    if (e.has_terms()) {
      LazyResolution model(koszul_complex(sop), true);
      for (int i = e.min_degree(); i <= e.max_degree() + sop.dim && !nonzero; ++i) nonzero = stalk_hom_length(e, sop, model, i) != 0;
    }
    r.kos_probe.emplace_back(a, nonzero);
    if (!r.q0) continue;
    FPModule top = FPModule::zero(e.algebra());
    for (const auto& [q, h] : coh.modules)
      if (q == *r.q0) top = h;
    if (stalk_is_zero(top, a)) continue;
    FreeComplex kos = koszul_complex(sop);
    int low = 0;
    for (int p = -sop.dim; p <= 0; ++p)
      if (!stalk_is_zero(cohomology(kos, p).module, a)) {
        low = p;
        break;
      }
    SpanWitness w{a, sop, -low, low - *r.q0, 0};
    auto hom = derived_hom(e, kos, w.index).module;
    if (stalk_is_zero(hom, a))
      throw ConsistencyError("Hom^" + std::to_string(w.index) + "(E, Kos(f)) vanishes at " + format_point(a) + " although H^" +
                             std::to_string(*r.q0) + "(E) is nonzero there");
    w.length = local_length(hom, a);
    r.witnesses.push_back(std::move(w));
  }
  if (r.q0) {
    if (!r.witnesses.empty()) {
      r.verdict = Verdict::holds;
    } else {
      r.verdict = Verdict::inconclusive;
      r.note = "no supplied point lies in the support of H^" + std::to_string(*r.q0) + "(E)";
    }
  } else {
    for (const auto& [a, nz] : r.kos_probe)
      if (nz) throw ConsistencyError("E is exact but Hom(Kos(f), E) is nonzero at " + format_point(a));
    r.verdict = Verdict::holds;
    r.note = "E = 0; every probed Hom(Kos(f_x), E) vanishes";
  }
  return r;
}

}  // namespace koszulkit
