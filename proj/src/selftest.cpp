#include "koszulkit/selftest.hpp"

#include <functional>

#include "koszulkit/errors.hpp"
#include "koszulkit/integral.hpp"

namespace koszulkit {

namespace {

struct Example {
  const char* module;
  const char* name;
  std::function<bool()> check;
};

RingPtr qr(std::vector<std::string> vars) { return make_ring(Field::rationals(), std::move(vars)); }
Polynomial P(const RingPtr& r, const char* s) { return Polynomial::parse(r, s); }
Ideal I(const RingPtr& r, const char* s) { return Ideal::parse(r, s); }
FPModule cyc(const AlgebraPtr& o, const char* s) { return FPModule::cyclic(o, I(o->ring(), s)); }
Point pt(const RingPtr& r, const char* s) { return parse_point(r->field(), s); }
BoundedComplex at(const FPModule& m, int q = 0) { return BoundedComplex::concentrated(m, q); }
long len(const FPModule& m) { return length(m).value_or(-1); }

template <class F>
bool throws_input(F&& f) {
  try {
    f();
  } catch (const InputError&) {
    return true;
  }
  return false;
}

bool exact(const BoundedComplex& c) { return is_exact(c); }

std::vector<Example> corpus() {
  auto r1 = qr({"x"});
  auto r2 = qr({"x", "y"});
  auto o1 = make_algebra(r1);
  auto o2 = make_algebra(r2);
  auto z1 = pt(r1, "0");
  auto z2 = pt(r2, "0,0");
  auto kos = [](const AlgebraPtr& o, const char* f) { return koszul_complex(o, Ideal::parse(o->ring(), f).generators()); };
  auto sop = [](const AlgebraPtr& o, const Point& a, const char* f) { return validate_sop(o, a, Ideal::parse(o->ring(), f).generators()); };
  auto line = [] {
    auto ra = qr({"x"}), rb = qr({"y"});
    return AffinePair(make_algebra(ra), make_algebra(rb));
  };

  return {
      {"poly_gb", "gb of (x) is (x)", [=] { return groebner_basis(std::vector{P(r1, "x")}, MonomialOrder::lex()) == std::vector{P(r1, "x")}; }},
      {"poly_gb", "lex gb of (xy-1, y^2-1)",
       [=] {
         auto gb = groebner_basis(std::vector{P(r2, "x*y - 1"), P(r2, "y^2 - 1")}, MonomialOrder::lex());
         return gb == std::vector{P(r2, "y^2 - 1"), P(r2, "x - y")};
       }},
      {"poly_gb", "gb of the zero ideal is empty", [=] { return groebner_basis(std::vector{P(r2, "0")}).empty(); }},
      {"poly_gb", "x^2 reduces to 0 mod (x)", [=] { return normal_form(P(r1, "x^2"), I(r1, "x").groebner()).is_zero(); }},
      {"poly_gb", "x+1 reduces to 1 mod (x)", [=] { return normal_form(P(r1, "x + 1"), I(r1, "x").groebner()) == P(r1, "1"); }},
      {"poly_gb", "(x^2) : (x) = (x)", [=] { return ideal_quotient(I(r2, "x^2"), I(r2, "x")) == I(r2, "x"); }},
      {"poly_gb", "(x^2 y) : y^inf = (x^2)", [=] { return saturation(I(r2, "x^2*y"), I(r2, "y")) == I(r2, "x^2"); }},
      {"poly_gb", "(x) : y^inf = (x)", [=] { return saturation(I(r2, "x"), I(r2, "y")) == I(r2, "x"); }},
      {"poly_gb", "x in rad(x^2)", [=] { return radical_membership(P(r2, "x"), I(r2, "x^2")); }},
      {"poly_gb", "y not in rad(x^2)", [=] { return !radical_membership(P(r2, "y"), I(r2, "x^2")); }},
      {"poly_gb", "x+y in rad(x^2, y^2)", [=] { return radical_membership(P(r2, "x + y"), I(r2, "x^2, y^2")); }},
      {"poly_gb", "dim (x, y) = 0, dim (xy) = 1, dim (x^2, xy) = 1",
       [=] { return krull_dimension(I(r2, "x, y")) == 0 && krull_dimension(I(r2, "x*y")) == 1 && krull_dimension(I(r2, "x^2, x*y")) == 1; }},
      {"poly_gb", "staircases of (x^2, y^3), (x, y), (x^2)",
       [=] {
         return staircase_basis(I(r2, "x^2, y^3")).size() == 6 && staircase_basis(I(r2, "x, y")).size() == 1 &&
                staircase_basis(I(r1, "x^2")).size() == 2;
       }},
      {"poly_gb", "eliminations onto a line",
       [=] {
         std::vector<int> y{1}, x{0};
         return eliminate(I(r2, "x - y"), y).is_zero() && eliminate(I(r2, "x^2 - y"), y).is_zero() && eliminate(I(r2, "x^2 - y"), x).is_zero() &&
                eliminate(I(r2, "x, y - 1"), y) == I(r2, "y - 1");
       }},
      {"fpmod", "syzygies of (x), (y)",
       [=] {
         std::vector<Vector> cols{P(r2, "x").vec(), P(r2, "y").vec()};
         auto s = syzygies(cols, 1);
         Vector koszul = P(r2, "y").vec() - Vector::unit(r2->field(), 1).times(P(r2, "x").vec());
         return s.size() == 1 && (s[0] == koszul || s[0] == -koszul);
       }},
      {"fpmod", "kernel of x on R is 0",
       [=] {
         auto m = FPModule::free(o1, 1);
         return kernel(ModuleMap(m, m, {P(r1, "x").vec()})).module.is_zero();
       }},
      {"fpmod", "x kills R/(x)",
       [=] {
         auto m = cyc(o1, "x");
         return len(kernel(ModuleMap(m, m, {P(r1, "x").vec()})).module) == 1;
       }},
      {"fpmod", "Gamma_0(R/(x) + R/(x-1)) has length 1",
       [=] {
         std::vector<FPModule> parts{cyc(o1, "x"), cyc(o1, "x - 1")};
         return len(torsion_component_at_point(direct_sum(parts), z1).module) == 1;
       }},
      {"fpmod", "Gamma_0(R/(x^2(x-1))) = R/(x^2)",
       [=] {
         auto g = torsion_component_at_point(cyc(o1, "x^2*(x - 1)"), z1).module;
         return len(g) == 2 && annihilator(g) == I(r1, "x^2");
       }},
      {"fpmod", "Gamma_0(R) = 0", [=] { return torsion_component_at_point(FPModule::free(o1, 1), z1).module.is_zero(); }},
      {"fpmod", "lengths of O/(x^2, y), R/m, R", [=] { return len(cyc(o2, "x^2, y")) == 2 && len(cyc(o1, "x")) == 1 && !length(FPModule::free(o1, 1)); }},
      {"fpmod", "Hilbert-Samuel of R/(x^2, y) stabilizes at 2",
       [=] {
         auto h = hilbert_samuel(cyc(o2, "x^2, y"), z2);
         return h.verdict == HilbertSamuel::Verdict::Stabilizes && h.value == 2;
       }},
      {"fpmod", "Hilbert-Samuel of R/(xy) grows like 2s-1",
       [=] {
         auto h = hilbert_samuel(cyc(o2, "x*y"), z2);
         return h.verdict == HilbertSamuel::Verdict::Growth && h.degree == 1 && h.lengths[3] == 7;
       }},
      {"fpmod", "restrictions to k[y]",
       [=] {
         std::vector<int> keep{1};
         auto b = make_algebra(qr({"y"}));
         auto g = restrict_scalars(cyc(o2, "x - y"), keep, b).module;
         auto p = restrict_scalars(cyc(o2, "x^2 - y"), keep, b).module;
         return g.generators() == 1 && g.is_free() && p.generators() == 2 && p.is_free() &&
                throws_input([&] { restrict_scalars(cyc(o2, "x*y - 1"), keep, b); });
       }},
      {"complexes", "shift of the zero complex", [=] { return !shift(BoundedComplex(o1), 3).has_terms(); }},
      {"complexes", "shift places M in degree n", [=] { return shift(at(cyc(o1, "x")), -2).degrees() == std::vector<int>{2}; }},
      {"complexes", "cone(id) is exact",
       [=] {
         auto c = at(cyc(o2, "x^2"));
         return exact(cone(ChainMap{c, c, {{0, {Vector::unit(r2->field(), 0)}}}}));
       }},
      {"complexes", "cone(R --x--> R) has H^0 = R/(x) only",
       [=] {
         auto c = cone(ChainMap{at(FPModule::free(o1, 1)), at(FPModule::free(o1, 1)), {{0, {P(r1, "x").vec()}}}});
         return cohomology(c, -1).module.is_zero() && annihilator(cohomology(c, 0).module) == I(r1, "x");
       }},
      {"complexes", "R (x) Kos(x) = [R --x--> R]",
       [=] {
         auto t = tensor_with_free(at(FPModule::free(o1, 1)), kos(o1, "x"));
         return t.degrees() == std::vector<int>{-1, 0} && t.differential(-1)[0] == P(r1, "x").vec();
       }},
      {"complexes", "Kos(x, y) (x) R/(x): H^-1 = k, H^-2 = 0",
       [=] {
         auto t = tensor_with_free(at(cyc(o2, "x")), kos(o2, "x, y"));
         return len(cohomology(t, -1).module) == 1 && cohomology(t, -2).module.is_zero() && len(cohomology(t, 0).module) == 1;
       }},
      {"complexes", "Hom(Kos(x, y), R) has H^2 = R/(x, y) only",
       [=] {
         auto h = hom_complex(kos(o2, "x, y"), at(FPModule::free(o2, 1)));
         return cohomology(h, 0).module.is_zero() && cohomology(h, 1).module.is_zero() && annihilator(cohomology(h, 2).module) == I(r2, "x, y");
       }},
      {"complexes", "[R --1--> R] is exact",
       [=] { return exact(BoundedComplex(o1, {{-1, FPModule::free(o1, 1)}, {0, FPModule::free(o1, 1)}}, {{-1, {P(r1, "1").vec()}}})); }},
      {"complexes", "free model of R/(x, y) has ranks 1, 2, 1",
       [=] {
         LazyResolution res(at(cyc(o2, "x, y")));
         res.extend_to(-4);
         auto f = res.prefix(res.lowest());
         return res.complete() && f.rank(0) == 1 && f.rank(-1) == 2 && f.rank(-2) == 1;
       }},
      {"complexes", "derived Hom(R/(x), R/(x)) has length 1", [=] { return len(derived_hom(at(cyc(o1, "x")), at(cyc(o1, "x")), 0).module) == 1; }},
      {"complexes", "derived Hom(Kos(x), k) in degrees 0, 1",
       [=] {
         auto k = at(cyc(o1, "x"));
         auto f = kos(o1, "x");
         return len(derived_hom(f, k, -1).module) == 0 && len(derived_hom(f, k, 0).module) == 1 && len(derived_hom(f, k, 1).module) == 1 &&
                len(derived_hom(f, k, 2).module) == 0;
       }},
      {"koszul", "(x, y) is a sop of Q[x, y] at 0", [=] { return sop(o2, z2, "x, y").dim == 2; }},
      {"koszul", "(x + y) is a sop of the node",
       [=] {
         auto node = make_algebra(r2, I(r2, "x*y"));
         return sop(node, z2, "x + y").dim == 1;
       }},
      {"koszul", "(x) is not a sop of the plane", [=] { return throws_input([&] { sop(o2, z2, "x"); }); }},
      {"koszul", "Kos(x^2, y^3) has H^0 of length 6", [=] { return len(cohomology(kos(o2, "x^2, y^3"), 0).module) == 6; }},
      {"koszul", "tor of R over Q[x]",
       [=] {
         auto s = sop(o1, z1, "x");
         auto t = koszul_table(s, at(FPModule::free(o1, 1)));
         return t.tor_at(0) == 1 && t.tor_at(1) == 0;
       }},
      {"koszul", "tor of R/(x) and of k over Q[x, y]",
       [=] {
         auto s = sop(o2, z2, "x, y");
         auto a = koszul_table(s, at(cyc(o2, "x")));
         auto k = koszul_table(s, at(cyc(o2, "x, y")));
         return a.tor_at(0) == 1 && a.tor_at(1) == 1 && a.tor_at(2) == 0 && k.tor_at(0) == 1 && k.tor_at(1) == 2 && k.tor_at(2) == 1;
       }},
      {"koszul", "ext^0(Kos, k) = tor_2",
       [=] {
         auto t = koszul_table(sop(o2, z2, "x, y"), at(cyc(o2, "x, y")));
         return t.ext_at(0) == 1 && t.ext_at(0) == t.tor_at(2);
       }},
      {"koszul", "suggested sops of the node", [=] {
         auto s = suggest_sop(make_algebra(r2, I(r2, "x*y")), z2, 2);
         return s.size() == 2 && s[0].to_string() == "(x + y) at (0, 0)" && s[1].to_string() == "(x - y) at (0, 0)";
       }},
      {"koszul", "artinian ring needs no parameters", [=] {
         auto s = suggest_sop(make_algebra(r1, I(r1, "x^2")), z1, 1);
         return s.size() == 1 && s[0].f.empty() && s[0].dim == 0;
       }},
      {"localalg", "depths 2, 0, 1 at the origin",
       [=] {
         return depth(FPModule::free(o2, 1), z2).depth == 2 && depth(cyc(o2, "x^2, x*y"), z2).depth == 0 && depth(cyc(o2, "x*y"), z2).depth == 1;
       }},
      {"localalg", "residue-field depth oracle",
       [=] {
         return depth_oracle_regular(FPModule::free(o2, 1), z2) == 2 && depth_oracle_regular(cyc(o2, "x^2, x*y"), z2) == 0 &&
                depth_oracle_regular(cyc(o2, "x"), z2) == 1;
       }},
      {"localalg", "Cohen-Macaulay verdicts",
       [=] { return is_cohen_macaulay(cyc(o2, "x*y"), z2).cohen_macaulay && !is_cohen_macaulay(cyc(o2, "x^2, x*y"), z2).cohen_macaulay &&
                    is_cohen_macaulay(FPModule::free(o2, 1), pt(r2, "1, -2")).cohen_macaulay; }},
      {"localalg", "S_m membership, both routes",
       [=] {
         bool ok = true;
         auto check = [&](const FPModule& f, int m, bool member) {
           ok = ok && sm_membership(f, z2, m, 2).member == member && sm_membership_smooth(f, z2, m, 2) == member;
         };
         check(FPModule::free(o2, 1), 2, true);
         check(FPModule::free(o2, 1), 1, false);
         check(cyc(o2, "x"), 1, true);
         check(cyc(o2, "x"), 0, false);
         check(cyc(o2, "x^2, x*y"), 0, true);
         return ok;
       }},
      {"localalg", "generic Tor profile",
       [=] {
         auto y1 = pt(r2, "0, 1");
         return generic_tor_profile(cyc(o2, "x"), y1, 1).holds && generic_tor_profile(cyc(o2, "x^2, x*y"), y1, 1).holds &&
                !generic_tor_profile(cyc(o2, "x^2, x*y"), z2, 1).holds;
       }},
      {"derived_support", "support hypotheses of [R --x--> R]",
       [=] {
         BoundedComplex k(o2, {{-1, FPModule::free(o2, 1)}, {0, FPModule::free(o2, 1)}}, {{-1, {P(r2, "x").vec()}}});
         return check_support_hypotheses(k, I(r2, "x"), 1, {pt(r2, "1, 1")}, {z2}).hypotheses == Verdict::holds &&
                check_support_conclusion(k, I(r2, "x")).verdict() == Verdict::holds;
       }},
      {"derived_support", "R fails off the support",
       [=] { return check_support_hypotheses(at(FPModule::free(o2, 1)), I(r2, "x"), 1, {pt(r2, "1, 1")}, {}).hypotheses == Verdict::fails; }},
      {"derived_support", "R/(x) + R/(y)[1] fails",
       [=] {
         auto k = direct_sum(at(cyc(o2, "x")), shift(at(cyc(o2, "y")), 1));
         return check_support_hypotheses(k, I(r2, "x"), 1, {}, {z2}).hypotheses == Verdict::fails &&
                !check_support_conclusion(k, I(r2, "x")).is_sheaf;
       }},
      {"derived_support", "exact complexes are the zero object",
       [=] {
         BoundedComplex k(o2, {{-1, FPModule::free(o2, 1)}, {0, FPModule::free(o2, 1)}}, {{-1, {P(r2, "1").vec()}}});
         return check_support_conclusion(k, I(r2, "x")).zero_object;
       }},
      {"derived_support", "stalk Hom of R/(x) and R over Q[x]",
       [=] {
         auto s = sop(o1, z1, "x");
         return local_length(stalk_hom(at(cyc(o1, "x")), s, 0), z1) == 1 && local_length(stalk_hom(at(cyc(o1, "x")), s, 1), z1) == 1 &&
                local_length(stalk_hom(at(FPModule::free(o1, 1)), s, 1), z1) == 1 && stalk_hom(at(FPModule::free(o1, 1)), s, 0).is_zero();
       }},
      {"derived_support", "Hom window of R/(x) on the line",
       [=] {
         auto pts = std::vector{z2, pt(r2, "1, 0")};
         return check_support2(at(cyc(o2, "x")), I(r2, "x"), 1, 2, pts).hypotheses == Verdict::holds &&
                check_support2(at(cyc(o2, "x")), I(r2, "x"), 2, 2, pts).hypotheses == Verdict::fails;
       }},
      {"derived_support", "spanning witnesses",
       [=] {
         auto k = spanning_test(at(cyc(o1, "x")), {z1});
         auto e = spanning_test(BoundedComplex(o1), {z1});
         auto p = spanning_test(at(cyc(o2, "x")), {z2});
         return k.verdict == Verdict::holds && k.witnesses.size() == 1 && e.verdict == Verdict::holds && p.witnesses.size() == 1;
       }},
      {"integral", "diagonal kernel renames A/(x^2)",
       [=] {
         auto pr = line();
         Kernel diag(pr, pr.diagonal());
         auto h = cohomology(phi_module(diag, FPModule::cyclic(pr.a(), Ideal::parse(pr.a()->ring(), "x^2"))), 0).module;
         return len(h) == 2 && annihilator(h) == Ideal::parse(pr.b()->ring(), "y^2");
       }},
      {"integral", "Phi(k(0)) = k(0)[1] for the shifted diagonal",
       [=] {
         auto pr = line();
         Kernel k(pr, shift(pr.diagonal(), 1));
         auto c = phi_point(k, z1);
         return len(cohomology(c, -1).module) == 1 && cohomology(c, 0).module.is_zero();
       }},
      {"integral", "diagonal is strongly simple",
       [=] {
         auto pr = line();
         return check_strong_simplicity(Kernel(pr, pr.diagonal()), {{z1, z1}, {z1, pt(r1, "1")}}, 1).verdict == Verdict::holds;
       }},
      {"integral", "diagonal + diagonal[2] fails (1)",
       [=] {
         auto pr = line();
         Kernel k(pr, direct_sum(pr.diagonal(), shift(pr.diagonal(), 2)));
         return check_strong_simplicity(k, {{z1, z1}}, 1).condition("1")->verdict == Verdict::fails;
       }},
      {"integral", "skyscraper kernel fails (2) at 1",
       [=] {
         auto pr = line();
         Kernel k(pr, at(FPModule::cyclic(pr.s(), Ideal::parse(pr.s()->ring(), "x - y, y"))));
         return check_strong_simplicity(k, {{pt(r1, "1"), z1}}, 1).condition("2")->verdict == Verdict::fails;
       }},
      {"integral", "orthonormality of the diagonal with f = x^2",
       [=] {
         auto pr = line();
         LocalOptions opts;
         opts.sops = {Ideal::parse(pr.a()->ring(), "x^2").generators()};
         opts.single_sop = true;
         auto r = check_orthonormality(Kernel(pr, pr.diagonal()), z1, 1, {}, opts);
         return r.verdict == Verdict::holds && r.items.size() == 1 && r.items[0].colength == 2 && r.items[0].kos_to_quotient == 2;
       }},
      {"integral", "zero kernel fails every alternative",
       [=] {
         auto pr = line();
         auto r = check_orthonormality(Kernel(pr, BoundedComplex(pr.s())), z1, 1);
         for (const char* c : {"2.1", "2.2", "2.2*", "2.3", "2.3*"})
           if (r.condition(c)->verdict != Verdict::fails) return false;
         return true;
       }},
  };
}

}  // namespace

std::vector<SelftestRow> run_selftest() {
  std::vector<SelftestRow> rows;
  for (const auto& ex : corpus()) {
    SelftestRow row{ex.module, ex.name, false, ""};
    try {
      row.passed = ex.check();
    } catch (const std::exception& e) {
      row.detail = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace koszulkit
