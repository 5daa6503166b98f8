#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "koszulkit/module.hpp"

namespace koszulkit {

/// Bounded cochain complex of finitely presented O-modules. d^q maps
/// term(q) to term(q+1) and is stored as columns in term(q+1)'s free cover.
/// Terms with no generators are not stored.
class BoundedComplex {
 public:
  BoundedComplex() = default;
  explicit BoundedComplex(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}
  /// Validates every differential and d o d = 0.
  BoundedComplex(AlgebraPtr algebra, std::map<int, FPModule> terms, std::map<int, std::vector<Vector>> differentials);
  static BoundedComplex concentrated(const FPModule& m, int degree);

  const AlgebraPtr& algebra() const { return algebra_; }
  /// Degrees carrying generators; empty for the zero complex.
  std::vector<int> degrees() const;
  bool has_terms() const { return !terms_.empty(); }
  int min_degree() const;  // requires has_terms()
  int max_degree() const;
  FPModule term(int q) const;
  std::size_t rank(int q) const;
  /// Columns of d^q (empty when term(q) has no generators).
  std::vector<Vector> differential(int q) const;
  ModuleMap differential_map(int q) const;
  /// Every term presented without relations beyond I.
  bool is_free() const;

 private:
  AlgebraPtr algebra_;
  std::map<int, FPModule> terms_;
  std::map<int, std::vector<Vector>> diffs_;
};

/// Complexes whose terms are free O-modules with chosen bases.
using FreeComplex = BoundedComplex;

/// Degreewise maps f^q : A^q -> B^q given as columns.
struct ChainMap {
  BoundedComplex source, target;
  std::map<int, std::vector<Vector>> components;
  /// InputError unless every component is well defined and d f = f d.
  void check() const;
  std::vector<Vector> component(int q) const;
};

/// term(q) of the result is term(q + s) of C; differentials pick up (-1)^s.
BoundedComplex shift(const BoundedComplex& c, int s);
/// Cone^q = A^{q+1} + B^q with d(a, b) = (-d a, f(a) + d b).
BoundedComplex cone(const ChainMap& f);
/// Stupid truncations: keep degrees >= q, respectively <= q.
BoundedComplex truncate_below(const BoundedComplex& c, int q);
BoundedComplex truncate_above(const BoundedComplex& c, int q);
/// sigma_{>= q} C -> C.
ChainMap truncation_inclusion(const BoundedComplex& c, int q);
BoundedComplex direct_sum(const BoundedComplex& a, const BoundedComplex& b);

/// Total complex of C (x) F with d(c (x) e) = dc (x) e + (-1)^p c (x) de.
BoundedComplex tensor_with_free(const BoundedComplex& c, const FreeComplex& f);
/// Hom^k = prod_p Hom(F^p, C^{p+k}), (d phi) = d_C phi - (-1)^k phi d_F.
/// Only degrees in [k_lo, k_hi] are built when a range is given.
BoundedComplex hom_complex(const FreeComplex& f, const BoundedComplex& c, std::optional<std::pair<int, int>> range = std::nullopt);

/// H^q with cycle representatives in term(q)'s free cover.
Subquotient cohomology(const BoundedComplex& c, int q);
/// All H^q = 0.
bool is_exact(const BoundedComplex& c);

/// Free model F -> C built from the top degree down: at each stage the
/// cycles of the cone in one degree are covered by a new free term, which
/// makes the cone exact there. Extension is on demand and thread safe.
class LazyResolution {
 public:
  explicit LazyResolution(BoundedComplex target, bool force_general = false);

  const BoundedComplex& target() const { return target_; }
  /// Extends the model until F^p is known for every p >= q (or the model
  /// is complete).
  void extend_to(int q);
  /// True when all remaining lower terms are zero.
  bool complete() const;
  /// F^{>= q} with the comparison map restricted to it; extends as needed.
  FreeComplex prefix(int q);
  ChainMap comparison(int q);
  /// Lowest degree constructed so far.
  int lowest() const;

 private:
  void step();
  BoundedComplex target_;
  mutable std::mutex mu_;
  std::map<int, std::size_t> ranks_;
  std::map<int, std::vector<Vector>> d_;    // d_F^q columns in F^{q+1}
  std::map<int, std::vector<Vector>> phi_;  // phi^q columns in C^q's cover
  int next_ = 0;                            // next degree to construct
  bool complete_ = false;
};

/// H^i(Hom(F, C)) for a free model F of E, extended through the window
/// p in [min C - i - 1, max C - i + 1]. `margin` widens the window.
Subquotient derived_hom(LazyResolution& e, const BoundedComplex& c, int i, int margin = 0);
Subquotient derived_hom(const BoundedComplex& e, const BoundedComplex& c, int i, int margin = 0);

}  // namespace koszulkit
