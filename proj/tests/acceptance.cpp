// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "koszulkit/cli.hpp"
#include "koszulkit/derived_support.hpp"
#include "koszulkit/errors.hpp"
#include "koszulkit/integral.hpp"
#include "koszulkit/problem.hpp"
#include "support.hpp"

using namespace testing;
namespace fs = std::filesystem;

namespace {

class Tally {
 public:
  void operator()(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failed_;
    if (failures_.size() < 4) failures_.push_back(what);
  }
  void note(std::string s) { notes_.push_back(std::move(s)); }
  bool passed() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << checks_ << " checks";
    for (const auto& n : notes_) s << ", " << n;
    if (failed_) {
      s << "; " << failed_ << " failed:";
      for (const auto& f : failures_) s << " [" << f << "]";
    }
    return s.str();
  }

 private:
  int checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_, notes_;
};

FPModule cyclic(const AlgebraPtr& o, const std::string& ideal) { return FPModule::cyclic(o, I(o->ring(), ideal)); }
Point pt(const RingPtr& r, const std::string& s) { return parse_point(r->field(), s); }
BoundedComplex at(const FPModule& m, int q) { return BoundedComplex::concentrated(m, q); }

BoundedComplex two_term(const AlgebraPtr& o, const Polynomial& g) {
  return BoundedComplex(o, {{-1, FPModule::free(o, 1)}, {0, FPModule::free(o, 1)}}, {{-1, {g.vec()}}});
}

ChainMap identity_map(const BoundedComplex& c) {
  ChainMap f{c, c, {}};
  for (int q : c.degrees()) {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < c.rank(q); ++j) cols.push_back(Vector::unit(c.algebra()->field(), j));
    f.components.emplace(q, std::move(cols));
  }
  return f;
}

std::string show(const std::optional<int>& v) { return v ? std::to_string(*v) : "none"; }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[rng.uniform(0, static_cast<int>(v.size()) - 1)];
}

// Sums, shifts and cones of cyclic modules over Q[x,y].
BoundedComplex random_complex(Rng& rng, const AlgebraPtr& o) {
  static const std::vector<std::string> quotients{"x", "x^2", "x,y", "y-x", "x*y", "x-1", "x,y-1", "x^2,x*y", "y", "x+y,y^2"};
  const auto& r = o->ring();
  auto piece = [&]() -> BoundedComplex {
    switch (rng.uniform(0, 4)) {
      case 0:
        return at(FPModule::free(o, 1), rng.uniform(-2, 0));
      case 1: {
        ChainMap f{at(FPModule::free(o, 1), 0), at(cyclic(o, pick(rng, quotients)), 0), {{0, {P(r, rng.coin() ? "x" : "y").vec()}}}};
        return shift(cone(f), rng.uniform(0, 1));
      }
      case 2:
        return two_term(o, P(r, pick(rng, std::vector<std::string>{"x", "y", "x*y", "x-y", "x^2"})));
      default:
        return at(cyclic(o, pick(rng, quotients)), rng.uniform(-2, 0));
    }
  };
  BoundedComplex c = piece();
  for (int extra = rng.uniform(0, 2); extra > 0; --extra) c = direct_sum(c, piece());
  return c;
}

// 1. d o d = 0, H^0 = O/(f), no higher Koszul homology at the point.
void koszul_structure(Tally& t) {
  auto r1 = qring({"x"});
  auto r2 = qring({"x", "y"});
  auto r3 = qring({"x", "y", "z"});
  struct Site {
    AlgebraPtr o;
    std::vector<std::string> points;
  };
  std::vector<Site> sites{{make_algebra(r1), {"0", "1"}},
                          {make_algebra(r2), {"0,0", "1,-1"}},
                          {make_algebra(r2, I(r2, "x*y")), {"0,0", "2,0"}},
                          {make_algebra(r3, I(r3, "x^2-y*z")), {"0,0,0", "1,1,1"}}};
  int sops = 0;
  for (const auto& s : sites)
    for (const auto& ps : s.points) {
      const auto& r = s.o->ring();
      auto a = pt(r, ps);
      for (const auto& sop : suggest_sop(s.o, a, 3)) {
        ++sops;
        const auto label = sop.to_string();
        auto k = koszul_complex(sop);
        for (int q = -sop.dim; q + 1 < 0; ++q) {
          auto dd = compose(k.differential_map(q + 1), k.differential_map(q));
          t(dd.is_zero(), label + ": d o d at " + std::to_string(q));
        }
        auto h0 = cohomology(k, 0).module;
        auto quotient = FPModule::cyclic(s.o, Ideal(r, sop.f));
        t(length(h0) == length(quotient), label + ": length of H^0");
        t(local_length(h0, a) == local_length(quotient, a), label + ": local length of H^0");
        t(annihilator(h0) == annihilator(quotient), label + ": annihilator of H^0");
        for (int i = 1; i <= sop.dim; ++i) t(stalk_is_zero(cohomology(k, -i).module, a), label + ": H^-" + std::to_string(i));
      }
    }
  t(sops >= 10, "at least 10 sops");
  t.note(std::to_string(sops) + " sops over 4 rings");
}

// 2. Kos(f)[-n] -> Hom(Kos(f), O) is a chain isomorphism.
void self_duality(Tally& t) {
  Rng rng(0xacce0002);
  const std::vector<std::string> all{"x", "y", "z"};
  int maps = 0;
  for (int n = 1; n <= 3; ++n) {
    auto r = qring(std::vector<std::string>(all.begin(), all.begin() + n));
    auto o = make_algebra(r);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<Polynomial> f;
      for (int k = 0; k < n; ++k) {
        Polynomial g = Polynomial::variable(r, k);
        for (int j = k + 1; j < n; ++j) g = g + Polynomial::constant(r, rng.uniform(-2, 2)) * Polynomial::variable(r, j);
        g = g + random_poly(rng, r, 2, 1) * Polynomial::variable(r, rng.uniform(0, n - 1)) * Polynomial::variable(r, rng.uniform(0, n - 1));
        f.push_back(g);
      }
      auto sop = validate_sop(o, Point(n, Scalar::zero(r->field())), f);
      ChainMap psi = koszul_duality(o, sop.f);
      ++maps;
      const std::string label = "n=" + std::to_string(n) + " " + sop.to_string();
      // term q of Kos[-n] has basis the (n-q)-subsets, term q of Hom the q-subsets
      for (int q = 0; q <= n; ++q) {
        auto src = koszul_basis(n, n - q), dst = koszul_basis(n, q);
        auto cols = psi.component(q);
        t(cols.size() == src.size() && psi.target.rank(q) == dst.size(), label + ": ranks in degree " + std::to_string(q));
        for (std::size_t j = 0; j < cols.size() && j < src.size(); ++j) {
          std::vector<int> comp;
          for (int v = 0; v < n; ++v)
            if (std::find(src[j].begin(), src[j].end(), v) == src[j].end()) comp.push_back(v);
          auto hit = std::find(dst.begin(), dst.end(), comp) - dst.begin();
          const auto& terms = cols[j].terms();
          bool unit = terms.size() == 1 && terms[0].mono.degree == 0 && terms[0].comp == static_cast<std::uint32_t>(hit);
          t(unit, label + ": column " + std::to_string(j) + " is not a unit on the complement");
          if (unit) t(terms[0].coef.is_one() || (-terms[0].coef).is_one(), label + ": coefficient is not a sign");
        }
        // commutation with the differentials, componentwise
        if (q < n) {
          auto ds = psi.source.differential(q), dt = psi.target.differential(q);
          auto next = psi.component(q + 1);
          for (std::size_t j = 0; j < cols.size(); ++j) {
            Vector left = ds.empty() ? Vector() : ds[j].substitute_basis(next);
            Vector right = dt.empty() ? Vector() : cols[j].substitute_basis(dt);
            t(left == right, label + ": not a chain map in degree " + std::to_string(q));
          }
        }
      }
    }
  }
  t.note(std::to_string(maps) + " isomorphisms for n = 1, 2, 3");
}

// 3. length Ext^i = length Tor_{n-i}, the two computed separately.
void ext_tor_duality(Tally& t) {
  Rng rng(0xacce0003);
  auto r2 = qring({"x", "y"});
  auto r3 = qring({"x", "y", "z"});
  std::vector<AlgebraPtr> rings{make_algebra(r2), make_algebra(r2, I(r2, "x*y")), make_algebra(r2, I(r2, "y^2-x^3")),
                                make_algebra(r3, I(r3, "x^2-y*z"))};
  int pairs = 0;
  for (const auto& o : rings) {
    const auto& r = o->ring();
    Point zero(r->num_vars(), Scalar::zero(r->field()));
    auto vanishing = [&]() {
      Polynomial g = random_poly(rng, r, 2, 2);
      return g - Polynomial(r, Vector::constant(g.evaluate(zero)));
    };
    for (const auto& sop : suggest_sop(o, zero, 3)) {
      std::vector<BoundedComplex> cs{at(FPModule::free(o, 1), 0),
                                     at(FPModule::cyclic(o, Ideal(r, {vanishing()})), 0),
                                     BoundedComplex(o, {{-1, FPModule::free(o, 1)}, {0, FPModule::cyclic(o, Ideal(r, {vanishing()}))}},
                                                    {{-1, {vanishing().vec()}}})};
      for (const auto& c : cs) {
        ++pairs;
        const int d = sop.dim;
        for (int i = c.min_degree() - 1; i <= c.max_degree() + d + 1; ++i) {
          long e = local_length(ext(sop, c, i), zero);
          long tr = local_length(tor(sop, c, d - i), zero);
          t(e == tr, sop.to_string() + ": ext^" + std::to_string(i) + " = " + std::to_string(e) + ", tor = " + std::to_string(tr));
        }
      }
    }
  }
  t(pairs >= 30, "at least 30 pairs");
  t.note(std::to_string(pairs) + " (sop, complex) pairs");
}

// 4. The first nonvanishing Ext index does not depend on the sop.
void depth_independence(Tally& t) {
  auto r = qring({"x", "y"});
  auto o = make_algebra(r);
  const std::vector<std::string> modules{"0", "x", "x*y", "x^2,x*y", "x^2,y"};
  const std::vector<std::string> points{"0,0", "0,1", "1,0", "0,-2"};
  int cases = 0;
  for (const auto& mod : modules)
    for (const auto& ps : points) {
      auto a = pt(r, ps);
      auto m = cyclic(o, mod);
      auto sops = suggest_sop(o, a, 4);
      t(sops.size() >= 3, "R/(" + mod + ") at " + ps + ": fewer than 3 sops");
      std::optional<int> first;
      for (std::size_t k = 0; k < sops.size(); ++k) {
        auto idx = koszul_table(sops[k], at(m, 0)).first_nonzero_ext();
        if (k == 0) first = idx;
        t(idx == first, "R/(" + mod + ") at " + ps + ": " + sops[k].to_string() + " gives " + show(idx));
      }
      t(first == depth_oracle_regular(m, a), "R/(" + mod + ") at " + ps + ": oracle disagrees");
      ++cases;
    }
  auto origin = pt(r, "0,0");
  t(depth(FPModule::free(o, 1), origin).depth == 2, "depth of R");
  t(depth(cyclic(o, "x*y"), origin).depth == 1, "depth of R/(xy)");
  t(depth(cyclic(o, "x^2,x*y"), origin).depth == 0, "depth of R/(x^2,xy)");
  t.note(std::to_string(cases) + " (module, point) cases");
}

// 5. S_m sets of R/(x^2, xy) and the smooth criterion.
void singularity_sets(Tally& t) {
  auto r = qring({"x", "y"});
  auto o = make_algebra(r);
  auto f = cyclic(o, "x^2,x*y");
  int s0 = 0, s1 = 0;
  for (int px = -2; px <= 2; ++px)
    for (int py = -2; py <= 2; ++py) {
      Point a{Scalar(r->field(), px), Scalar(r->field(), py)};
      const auto where = format_point(a);
      bool in0 = sm_membership(f, a, 0, 2).member, in1 = sm_membership(f, a, 1, 2).member;
      t(in0 == (px == 0 && py == 0), "S_0 at " + where);
      t(in1 == (px == 0), "S_1 at " + where);
      // S_0 sits in a point, S_1 in a line: codim >= n - m on the sample
      if (in0) t(px == 0 && py == 0, "S_0 leaves the origin");
      if (in1) t(px == 0, "S_1 leaves the y-axis");
      s0 += in0;
      s1 += in1;
    }
  // the support component x = 0 has codim 1 and is a component of S_1
  t(s0 == 1 && s1 == 5, "sampled S_0 and S_1 sizes");

  const std::vector<std::string> corpus{"0", "x", "x*y", "x^2,x*y", "x^2,y", "x,y", "y^2-x^3", "x*(x-1)"};
  int agree = 0;
  for (const auto& mod : corpus)
    for (const auto& ps : {"0,0", "0,1", "1,0", "1,1"}) {
      auto m = cyclic(o, mod);
      auto a = pt(r, ps);
      for (int k = -1; k <= 3; ++k) {
        bool v = sm_membership(m, a, k, 2).member;
        t(v == sm_membership_smooth(m, a, k, 2), "smooth route for R/(" + mod + ") at " + ps + ", m = " + std::to_string(k));
        ++agree;
      }
    }
  t.note("S_0 = {origin}, S_1 = 5 y-axis points; " + std::to_string(agree) + " smooth-route comparisons");
}

// 6. Generic Tor profile on support components, failure at an embedded point.
void tor_profile(Tally& t) {
  auto r2 = qring({"x", "y"});
  auto o2 = make_algebra(r2);
  auto r3 = qring({"x", "y", "z"});
  auto o3 = make_algebra(r3);
  struct Component {
    FPModule f;
    int c;
    std::vector<std::string> points;
  };
  std::vector<Component> comps{{cyclic(o2, "x*y"), 1, {"0,1", "0,2", "0,-3"}},
                               {cyclic(o2, "x*y"), 1, {"1,0", "-2,0", "3,0"}},
                               {cyclic(o3, "x*y,x*z"), 1, {"0,1,1", "0,2,-1", "0,-1,3"}},
                               {cyclic(o3, "x*y,x*z"), 2, {"1,0,0", "2,0,0", "-1,0,0"}},
                               {cyclic(o2, "x^2,x*y"), 1, {"0,1", "0,-1", "0,2"}}};
  int points = 0;
  for (const auto& comp : comps)
    for (const auto& ps : comp.points) {
      auto p = generic_tor_profile(comp.f, pt(comp.f.ring(), ps), comp.c);
      t(p.holds, ps + ": " + p.reason);
      t(p.sops.size() >= 2, ps + ": fewer than 2 sops");
      ++points;
    }
  auto bad = generic_tor_profile(cyclic(o2, "x^2,x*y"), pt(r2, "0,0"), 1);
  t(!bad.holds, "the embedded origin of R/(x^2,xy) passes");
  t.note(std::to_string(points) + " generic points on 4 components, embedded origin detected");
}

// 7. Hypotheses on the grid imply the conclusion.
void support_implication(Tally& t) {
  auto r = qring({"x", "y"});
  auto o = make_algebra(r);
  auto grid = integer_grid(o);
  Rng rng(0xacce0007);
  struct Target {
    std::string j;
    int d;
  };
  // irreducible Y only: the criterion assumes it
  const std::vector<Target> targets{{"x", 1}, {"y", 1}, {"x,y", 2}, {"y-x", 1}, {"x-1,y", 2}, {"y-x^2", 1}, {"0", 0}};
  int total = 0, hyp = 0, alarms = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto k = random_complex(rng, o);
    const auto& tg = pick(rng, targets);
    auto rep = check_support(k, I(r, tg.j), tg.d, grid);
    ++total;
    alarms += rep.alarm();
    hyp += rep.hypotheses == Verdict::holds;
    t(!rep.alarm(), "alarm on trial " + std::to_string(trial) + ", Y = V(" + tg.j + ")");
  }
  // complexes built to satisfy the hypotheses
  const std::vector<std::pair<BoundedComplex, Target>> matched{{two_term(o, P(r, "x")), {"x", 1}},
                                                               {at(cyclic(o, "x^2"), 0), {"x", 1}},
                                                               {at(cyclic(o, "x,y"), 0), {"x,y", 2}},
                                                               {at(cyclic(o, "x,y"), 0), {"x,y", 2}},
                                                               {two_term(o, P(r, "1")), {"x", 1}},
                                                               {direct_sum(two_term(o, P(r, "y")), at(cyclic(o, "y^2"), 0)), {"y", 1}},
                                                               {at(FPModule::free(o, 1), 0), {"0", 0}}};
  for (const auto& [k, tg] : matched) {
    auto rep = check_support(k, I(r, tg.j), tg.d, grid);
    ++total;
    alarms += rep.alarm();
    hyp += rep.hypotheses == Verdict::holds;
    t(rep.hypotheses == Verdict::holds && rep.conclusion.verdict() == Verdict::holds, "matched complex over V(" + tg.j + ")");
  }
  auto shifted = direct_sum(at(cyclic(o, "x"), 0), at(cyclic(o, "x"), -1));
  t(check_support(shifted, I(r, "x"), 1, grid).hypotheses == Verdict::fails, "shifted summand passes the hypotheses");
  auto wrong = direct_sum(at(cyclic(o, "x"), 0), at(cyclic(o, "y"), 0));
  t(check_support(wrong, I(r, "x"), 1, grid).hypotheses == Verdict::fails, "wrong-support summand passes the hypotheses");
  t(hyp > 0, "no complex met the hypotheses");
  t.note(std::to_string(total) + " complexes, " + std::to_string(hyp) + " met the hypotheses, " + std::to_string(alarms) +
         " alarms, 2 negative controls");
}

// 8. Derived Hom from a general free model of Kos(f) against Ext^i(Kos(f), K).
void stalk_two_routes(Tally& t) {
  auto r = qring({"x", "y"});
  auto o = make_algebra(r);
  Rng rng(0xacce0008);
  int triples = 0;
  const std::vector<std::string> points{"0,0", "0,1", "1,0"};
  for (int trial = 0; trial < 8; ++trial) {
    auto k = random_complex(rng, o);
    auto a = pt(r, pick(rng, points));
    for (const auto& sop : suggest_sop(o, a, 2)) {
      LazyResolution model(koszul_complex(sop), true);
      for (int i = k.min_degree() - 1; i <= k.max_degree() + sop.dim; ++i) {
        long derived = local_length(derived_hom(model, k, i).module, a);
        long koszul = local_length(ext(sop, k, i), a);
        t(derived == koszul, sop.to_string() + ": Hom^" + std::to_string(i) + " " + std::to_string(derived) + " vs " + std::to_string(koszul));
        ++triples;
      }
    }
  }
  t(triples >= 30, "at least 30 triples");
  t.note(std::to_string(triples) + " (complex, sop, i) triples");
}

// 9. Exact complexes see nothing; nonzero ones are detected at a support point.
void spanning(Tally& t) {
  auto r = qring({"x", "y"});
  auto o = make_algebra(r);
  auto grid = integer_grid(o, 1);
  Rng rng(0xacce0009);
  int exact = 0, nonzero = 0;
  for (int trial = 0; trial < 6; ++trial) {
    auto e = cone(identity_map(random_complex(rng, o)));
    auto rep = spanning_test(e, grid);
    bool any = false;
    for (const auto& [p, nz] : rep.kos_probe) any = any || nz;
    t(!any && !rep.q0 && rep.verdict == Verdict::holds, "exact complex " + std::to_string(trial));
    ++exact;
  }
  for (int trial = 0; trial < 10; ++trial) {
    auto e = random_complex(rng, o);
    if (is_exact(e)) continue;
    std::optional<int> q0;
    for (int q = e.max_degree(); q >= e.min_degree() && !q0; --q)
      if (!cohomology(e, q).module.is_zero()) q0 = q;
    auto h = cohomology(e, *q0).module;
    std::optional<Point> where;
    for (const auto& p : grid)
      if (!where && !stalk_is_zero(h, p)) where = p;
    if (!where) continue;  // the lowest cohomology misses the grid
    auto rep = spanning_test(e, {*where});
    bool witnessed = rep.verdict == Verdict::holds && !rep.witnesses.empty() && rep.witnesses[0].length > 0;
    t(witnessed, "nonzero complex " + std::to_string(trial) + " at " + format_point(*where));
    ++nonzero;
  }
  t(nonzero >= 5, "too few nonzero complexes");
  t.note(std::to_string(exact) + " exact and " + std::to_string(nonzero) + " nonzero complexes");
}

std::map<int, std::optional<long>> nonzero_part(const HomTable& h) {
  std::map<int, std::optional<long>> out;
  for (const auto& [i, l] : h.lengths)
    if (!l || *l != 0) out[i] = l;
  return out;
}

// 10. The diagonal kernel and its controls.
void integral_checkers(Tally& t) {
  const char* names[] = {"x", "y"};
  for (int n = 1; n <= 2; ++n) {
    std::vector<std::string> xs, ys;
    for (int v = 0; v < n; ++v) {
      xs.push_back(names[v]);
      ys.push_back(std::string("u") + names[v]);
    }
    auto ra = qring(xs), rb = qring(ys);
    AffinePair pair(make_algebra(ra), make_algebra(rb));
    auto p0 = Point(n, Scalar::zero(ra->field()));
    auto p1 = Point(n, Scalar::one(ra->field()));
    std::vector<std::pair<Point, Point>> pairs{{p0, p0}, {p0, p1}, {p1, p1}};
    const std::string tag = "dim " + std::to_string(n) + ": ";

    Kernel diag(pair, pair.diagonal());
    auto strong = check_strong_simplicity(diag, pairs, n);
    t(strong.verdict == Verdict::holds, tag + "strong simplicity");
    for (const auto& h : strong.tables) {
      auto nz = nonzero_part(h);
      if (h.x1 == h.x2)
        t(!nz.empty() && nz.begin()->first == 0 && nz.rbegin()->first == n, tag + "window is not [0, dim X]");
      else
        t(nz.empty(), tag + "distinct points see each other");
    }
    for (const auto& [x, l] : strong.endomorphisms) t(l == 1, tag + "Hom^0(Phi k, Phi k) at " + format_point(x));

    LocalOptions opts;
    opts.sops = {I(ra, n == 1 ? "x" : "x,y").generators(), I(ra, n == 1 ? "x^2" : "x^2,y").generators()};
    auto ortho = check_orthonormality(diag, p0, n, {}, opts);
    for (const char* c : {"1", "2", "2.1", "2.2", "2.2*", "2.3", "2.3*"})
      t(ortho.condition(c) && ortho.condition(c)->verdict == Verdict::holds, tag + "(" + c + ")");
    bool square = false;
    for (const auto& it : ortho.items)
      if (it.colength == 2) square = it.kos_to_quotient && *it.kos_to_quotient <= 2 && it.quotient_to_quotient == 2;
    t(square, tag + "colength 2 bound");

    Kernel doubled(pair, direct_sum(pair.diagonal(), pair.diagonal()));
    auto d = check_strong_simplicity(doubled, pairs, n);
    t(d.condition("2")->verdict == Verdict::fails, tag + "K + K passes (2)");
    t(check_orthonormality(doubled, p0, n, {}, opts).verdict == Verdict::fails, tag + "K + K passes orthonormality");
    Kernel shifted(pair, direct_sum(shift(pair.diagonal(), 2), pair.diagonal()));
    auto s = check_strong_simplicity(shifted, pairs, n);
    t(s.condition("1")->verdict == Verdict::fails, tag + "K[2] + K passes (1)");
  }

  // (2.2) vs (2.2*), (2.3) vs (2.3*)
  auto ra = qring({"x"}), rb = qring({"y"});
  AffinePair pair(make_algebra(ra), make_algebra(rb));
  auto s = pair.s();
  auto ker = [&](const std::string& j) { return at(FPModule::cyclic(s, I(s->ring(), j)), 0); };
  std::vector<BoundedComplex> corpus{pair.diagonal(),
                                     shift(pair.diagonal(), 1),
                                     ker("x-y,y"),
                                     ker("(x-y)^2"),
                                     ker("x-y^2"),
                                     ker("x^2-y"),
                                     ker("x-y^3"),
                                     direct_sum(pair.diagonal(), pair.diagonal()),
                                     direct_sum(pair.diagonal(), shift(pair.diagonal(), 2)),
                                     direct_sum(ker("x-y"), ker("x-y,y-1")),
                                     BoundedComplex(s)};
  LocalOptions opts;
  opts.sops = {I(ra, "x").generators(), I(ra, "x^2").generators(), I(ra, "x^3-x^2").generators()};
  auto p0 = Point{Scalar::zero(ra->field())};
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    auto rep = check_orthonormality(Kernel(pair, corpus[n]), p0, 1, {}, opts);
    t(rep.condition("2.2")->verdict == rep.condition("2.2*")->verdict, "kernel " + std::to_string(n) + ": (2.2) vs (2.2*)");
    t(rep.condition("2.3")->verdict == rep.condition("2.3*")->verdict, "kernel " + std::to_string(n) + ": (2.3) vs (2.3*)");
  }
  t.note("identity kernels on the line and plane, 3 controls, " + std::to_string(corpus.size()) + " kernels for the equivalences");
}

// 11. Byte-identical JSON across two runs of the CLI corpus.
void determinism(Tally& t) {
  const fs::path dir = KOSZULKIT_CORPUS_DIR;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".kk") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    auto command = *load_problem(f.string()).option("command");
    std::string runs[2];
    for (auto& out : runs) {
      std::ostringstream o, e;
      int code = run_cli({command, f.string(), "--json", "-"}, o, e);
      t(code == kComputed, f.filename().string() + ": exit " + std::to_string(code));
      out = o.str();
    }
    t(!runs[0].empty() && runs[0] == runs[1], f.filename().string() + ": runs differ");
    std::ifstream g(dir / "golden" / (f.stem().string() + ".json"), std::ios::binary);
    std::ostringstream golden;
    golden << g.rdbuf();
    t(runs[0] == golden.str(), f.filename().string() + ": differs from the golden report");
  }
  t(files.size() >= 12, "corpus is incomplete");
  t.note(std::to_string(files.size()) + " corpus files");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Tally&)>>> criteria{
      {"Koszul structure", koszul_structure},
      {"self-duality", self_duality},
      {"Ext-Tor duality", ext_tor_duality},
      {"depth sop-independence", depth_independence},
      {"singularity sets", singularity_sets},
      {"generic Tor profile", tor_profile},
      {"support criterion implication", support_implication},
      {"stalk two-route equality", stalk_two_routes},
      {"spanning behavior", spanning},
      {"integral functor checkers", integral_checkers},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Tally t;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[n].second(t);
    } catch (const std::exception& e) {
      t(false, std::string("threw: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !t.passed();
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs;
    std::cout << (t.passed() ? "PASS" : "FAIL") << "  " << (n + 1) << ". " << criteria[n].first << ": " << t.summary() << " (" << time.str()
              << " s)" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed ? 1 : 0;
}
