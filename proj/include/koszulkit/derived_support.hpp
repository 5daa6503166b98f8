#pragma once

#include <optional>
#include <string>
#include <vector>

#include "koszulkit/localalg.hpp"

namespace koszulkit {

/// Outcome of an existential or sampled check. `not_witnessed` means the
/// bounded sop search found no witness; it is not a refutation.
enum class Verdict { holds, fails, not_witnessed, inconclusive };
const char* to_string(Verdict v);
/// Worst of the two in the order fails > inconclusive > not_witnessed > holds.
Verdict combine(Verdict a, Verdict b);

/// Integer points of [-radius, radius]^n lying on Spec O, in lexicographic order.
std::vector<Point> integer_grid(const AlgebraPtr& algebra, int radius = 2);
/// All generators of J vanish at a.
bool on_subvariety(const Ideal& j, const Point& a);

struct PointCheck {
  Point point;
  bool on_y = false;
  int local_dim = 0;
  Verdict verdict = Verdict::inconclusive;
  std::vector<SopEvidence> tried;
  std::optional<std::size_t> witness;  // index into tried
  std::string note;
};

struct SupportConclusion {
  std::vector<int> nonzero_degrees;
  bool zero_object = false;
  bool is_sheaf = false;
  /// Every generator of J lies in the radical of ann(H^0).
  bool support_in_y = false;
  /// support_in_y, H^0 != 0 and ann(H^0) lies in the radical of J + I.
  bool support_equals_y = false;
  Verdict verdict() const;
};

/// X and Y are taken to be irreducible; nothing checks it.
inline constexpr const char* kIrreducibilityAssumption = "X and Y are assumed irreducible (not verified)";

struct SupportReport {
  Ideal j;
  int codim = 0;
  std::vector<PointCheck> points;
  Verdict hypotheses = Verdict::holds;
  SupportConclusion conclusion;
  /// hypotheses hold at every sampled point but the conclusion fails.
  bool alarm() const { return hypotheses == Verdict::holds && conclusion.verdict() != Verdict::holds; }
};

/// Off Y: some sop with Tor_i(Kos(f), K) = 0 for all i. On Y: some sop with
/// Tor_i = 0 for i < 0 and i > d. The ends of the Tor range do not depend on
/// the sop, so two sops are tried and must agree (ConsistencyError); an
/// exhausted sop search is `not_witnessed`. Points given on the wrong side
/// of Y are an InputError.
SupportReport check_support_hypotheses(const BoundedComplex& k, const Ideal& j, int d, const std::vector<Point>& off_points,
                                       const std::vector<Point>& on_points, const LocalOptions& opts = {});
/// K is a sheaf (H^q = 0 for q != 0) whose support is V(J), or K = 0.
SupportConclusion check_support_conclusion(const BoundedComplex& k, const Ideal& j);
/// Hypotheses at the given points (split by J) together with the conclusion.
SupportReport check_support(const BoundedComplex& k, const Ideal& j, int d, const std::vector<Point>& points, const LocalOptions& opts = {});

/// Hom^i_D(Kos(f), K) at the sop's point two ways: derived Hom from a
/// general free model of Kos(f), localized at the point, and Ext^i(Kos(f), K_x).
/// Lengths must agree (ConsistencyError); returns the second.
FPModule stalk_hom(const BoundedComplex& k, const SystemOfParameters& sop, int i);

struct HomWindowCheck {
  Point point;
  bool on_y = false;
  int local_dim = 0;
  Verdict verdict = Verdict::inconclusive;
  std::vector<SystemOfParameters> tried;
  std::vector<std::map<int, long>> lengths;  // per tried sop: i -> length of Hom^i
  std::optional<std::size_t> witness;
  std::string note;
};
struct Support2Report {
  int m = 0, n = 0;
  std::vector<HomWindowCheck> points;
  Verdict hypotheses = Verdict::holds;
  SupportConclusion conclusion;
  bool alarm() const { return hypotheses == Verdict::holds && conclusion.verdict() != Verdict::holds; }
};
/// Hom^i_D(Kos(f_x), K) = 0 unless x in Y and m <= i <= n, at each point.
Support2Report check_support2(const BoundedComplex& k, const Ideal& j, int m, int n, const std::vector<Point>& points,
                              const LocalOptions& opts = {});

struct SpanWitness {
  Point point;
  SystemOfParameters sop;
  int l = 0;      // -l is the lowest degree with H(Kos(f))_x != 0
  int index = 0;  // -l - q0
  long length = 0;
};
struct SpanReport {
  std::vector<int> nonzero_degrees;
  std::optional<int> q0;
  std::vector<SpanWitness> witnesses;
  /// Per point: some Hom^i(Kos(f_x), E) != 0 in the probed range.
  std::vector<std::pair<Point, bool>> kos_probe;
  Verdict verdict = Verdict::inconclusive;
  std::string note;
};
/// For E != 0: Hom^{-l-q0}(E, Kos(f_x)) != 0 at a supplied point of
/// supp H^{q0}(E). For E = 0: every probed Hom^i(Kos(f_x), E) vanishes.
SpanReport spanning_test(const BoundedComplex& e, const std::vector<Point>& points, const LocalOptions& opts = {});

}  // namespace koszulkit
