#include "koszulkit/localalg.hpp"

#include <set>

#include "koszulkit/errors.hpp"

namespace koszulkit {

namespace {

std::optional<int> top_nonzero_tor(const KoszulTable& t) {
  std::optional<int> top;
  for (const auto& [i, len] : t.tor)
    if (len != 0) top = i;
  return top;
}

std::string format_index(const std::optional<int>& i) { return i ? std::to_string(*i) : "none"; }

std::vector<Polynomial> translated_coordinates(const AlgebraPtr& algebra, const Point& a) {
  std::vector<Polynomial> f;
  for (int i = 0; i < algebra->num_vars(); ++i)
    f.push_back(Polynomial::variable(algebra->ring(), i) - Polynomial(algebra->ring(), Vector::constant(a[i])));
  return f;
}

void require_polynomial_ring(const AlgebraPtr& algebra, const char* what) {
  if (!algebra->is_polynomial_ring())
    throw InputError(std::string(what) +
                     " needs a polynomial ambient ring: Kos(x - a) resolves k(a) only over a regular ring; use the Koszul-sop route instead");
}

std::vector<SopEvidence> evidence(const std::vector<SystemOfParameters>& sops, const FPModule& m) {
  auto c = BoundedComplex::concentrated(m, 0);
  std::vector<SopEvidence> out;
  for (const auto& sop : sops) {
    KoszulTable t = koszul_table(sop, c);
    out.push_back({sop, t, t.first_nonzero_ext()});
  }
  return out;
}

}  // namespace

std::optional<int> DepthReport::codepth() const {
  if (!depth) return std::nullopt;
  return local_dim - *depth;
}

std::vector<SystemOfParameters> choose_sops(const AlgebraPtr& algebra, const Point& a, const LocalOptions& opts) {
  std::vector<SystemOfParameters> out;
  std::set<std::string> seen;
  for (const auto& f : opts.sops) {
    auto sop = validate_sop(algebra, a, f, opts.sop_options());
    if (seen.insert(sop.to_string()).second) out.push_back(std::move(sop));
  }
  int dim = out.empty() ? (opts.dimension_override ? *opts.dimension_override : local_dimension(algebra, a, opts.s_max)) : out[0].dim;
  std::size_t need = (opts.single_sop || dim == 0) ? 1 : 2;
  if (out.size() < need) {
    for (auto& sop : suggest_sop(algebra, a, need + out.size(), opts.budget, opts.sop_options())) {
      if (out.size() >= need) break;
      if (seen.insert(sop.to_string()).second) out.push_back(std::move(sop));
    }
  }
  if (out.size() < need)
    throw InconclusiveError("found " + std::to_string(out.size()) + " system(s) of parameters at " + format_point(a) + ", need " +
                            std::to_string(need) + "; supply more or raise the search budget");
  return out;
}

DepthReport depth(const FPModule& m, const Point& a, const LocalOptions& opts) {
  DepthReport report;
  report.point = a;
  report.module = m.to_string();
  auto sops = choose_sops(m.algebra(), a, opts);
  report.local_dim = sops[0].dim;
  report.sops = evidence(sops, m);
  const bool zero = stalk_is_zero(m, a);
  const auto& first = report.sops[0].first_nonzero_ext;
  for (const auto& e : report.sops)
    if (e.first_nonzero_ext != first)
      throw ConsistencyError("depth disagrees between sops " + report.sops[0].sop.to_string() + " (" + format_index(first) + ") and " +
                             e.sop.to_string() + " (" + format_index(e.first_nonzero_ext) + ")");
  if (zero != !first.has_value())
    throw ConsistencyError("stalk of M at " + format_point(a) + (zero ? " is zero but Ext(Kos, M) is not" : " is nonzero but Ext(Kos, M) vanishes"));
  report.depth = first;
  return report;
}

std::optional<int> depth_oracle_regular(const FPModule& m, const Point& a) {
  require_polynomial_ring(m.algebra(), "depth_oracle_regular");
  FreeComplex kos = koszul_complex(m.algebra(), translated_coordinates(m.algebra(), a));
  BoundedComplex h = hom_complex(kos, BoundedComplex::concentrated(m, 0));
  for (int i = 0; i <= m.algebra()->num_vars(); ++i)
    if (!stalk_is_zero(cohomology(h, i).module, a)) return i;
  return std::nullopt;
}

CMReport is_cohen_macaulay(const FPModule& m, const Point& a, const LocalOptions& opts) {
  if (stalk_is_zero(m, a)) throw NotInSupportError(format_point(a) + " is not in the support of the module");
  CMReport out;
  auto hs = hilbert_samuel(m, a, opts.s_max);
  auto dim = hs.local_dimension();
  if (!dim) throw InconclusiveError("support dimension probe at " + format_point(a) + " is inconclusive; raise s_max");
  out.support_dim = *dim;
  out.depth = depth(m, a, opts);
  out.cohen_macaulay = out.depth.depth == out.support_dim;
  return out;
}

SmVerdict sm_membership(const FPModule& f, const Point& a, int m, int n, const LocalOptions& opts) {
  SmVerdict v;
  v.m = m;
  v.n = n;
  v.report = depth(f, a, opts);
  auto codepth = v.report.codepth();
  v.member = codepth && *codepth >= n - m;
  for (const auto& e : v.report.sops) {
    auto top = top_nonzero_tor(e.table);
    v.top_tor.push_back(top);
    bool by_tor = top && *top >= n - m;
    if (by_tor != v.member)
      throw ConsistencyError("S_" + std::to_string(m) + " membership at " + format_point(a) + ": codepth gives " +
                             (v.member ? "member" : "non-member") + " but Tor(Kos(f), F) for sop " + e.sop.to_string() + " gives " +
                             (by_tor ? "member" : "non-member"));
  }
  return v;
}

bool sm_membership_smooth(const FPModule& f, const Point& a, int m, int n) {
  require_polynomial_ring(f.algebra(), "sm_membership_smooth");
  FreeComplex kos = koszul_complex(f.algebra(), translated_coordinates(f.algebra(), a));
  BoundedComplex t = tensor_with_free(BoundedComplex::concentrated(f, 0), kos);
  for (int p = std::max(0, n - m); p <= f.algebra()->num_vars(); ++p)
    if (!stalk_is_zero(cohomology(t, -p).module, a)) return true;
  return false;
}

TorProfile generic_tor_profile(const FPModule& f, const Point& a, int c, const LocalOptions& opts) {
  if (stalk_is_zero(f, a)) throw NotInSupportError(format_point(a) + " is not in the support of the module");
  TorProfile out;
  out.c = c;
  auto sops = choose_sops(f.algebra(), a, opts);
  const int dim = sops[0].dim;
  if (c < 0 || c > dim)
    throw InputError("codimension " + std::to_string(c) + " is outside [0, " + std::to_string(dim) + "] at " + format_point(a));
  out.sops = evidence(sops, f);
  std::optional<bool> verdict;
  for (const auto& e : out.sops) {
    std::string why;
    if (e.table.tor_at(c) == 0) why = "Tor_" + std::to_string(c) + " = 0";
    for (int i = c + 1; i <= dim && why.empty(); ++i)
      if (e.table.tor_at(i) != 0) why = "Tor_" + std::to_string(i) + " has length " + std::to_string(e.table.tor_at(i));
    bool holds = why.empty();
    if (verdict && *verdict != holds)
      throw ConsistencyError("Tor profile at " + format_point(a) + " depends on the sop (" + e.sop.to_string() + ")");
    verdict = holds;
    if (!holds && out.reason.empty()) out.reason = why + " for sop " + e.sop.to_string();
  }
  out.holds = *verdict;
  return out;
}

}  // namespace koszulkit
