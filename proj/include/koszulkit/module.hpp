#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "koszulkit/groebner.hpp"
#include "koszulkit/ideal.hpp"
#include "koszulkit/polynomial.hpp"

namespace koszulkit {

/// O = R/I. Shared and immutable.
class Algebra {
 public:
  Algebra(RingPtr ring, Ideal ideal);
  const RingPtr& ring() const { return ring_; }
  const Ideal& ideal() const { return ideal_; }
  const Field& field() const { return ring_->field(); }
  int num_vars() const { return ring_->num_vars(); }
  bool is_polynomial_ring() const { return ideal_.is_zero(); }
  /// Same algebra with x -> x + a applied to the ideal (a moves to the origin).
  std::shared_ptr<const Algebra> translated(std::span<const Scalar> a) const;

 private:
  RingPtr ring_;
  Ideal ideal_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;
AlgebraPtr make_algebra(RingPtr ring, Ideal ideal);
AlgebraPtr make_algebra(RingPtr ring);
bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

/// Cokernel of a relation matrix over O = R/I: generators e_0..e_{g-1},
/// relations given as vectors of R^g. The submodule I*R^g is always part of
/// the relation module, so every Gröbner computation happens over R.
class FPModule {
 public:
  FPModule() = default;
  FPModule(AlgebraPtr algebra, std::size_t generators, std::vector<Vector> relations);
  static FPModule free(AlgebraPtr algebra, std::size_t rank) { return FPModule(std::move(algebra), rank, {}); }
  static FPModule zero(AlgebraPtr algebra) { return FPModule(std::move(algebra), 0, {}); }
  /// O/J
  static FPModule cyclic(AlgebraPtr algebra, const Ideal& J);

  const AlgebraPtr& algebra() const { return algebra_; }
  const RingPtr& ring() const { return algebra_->ring(); }
  std::size_t generators() const { return gens_; }
  /// User relations, reduced modulo I*R^g; zero columns dropped.
  const std::vector<Vector>& relations() const { return rels_; }
  /// relations() together with I*e_j for every j.
  std::vector<Vector> relation_module() const;
  /// Grevlex TOP Gröbner basis of relation_module(); cached.
  const GroebnerBasis& relation_gb() const;

  bool is_zero() const;
  /// True if the presentation has no relations beyond I*R^g.
  bool is_free() const { return rels_.empty(); }
  /// v (in R^g) is zero in the module.
  bool is_zero_element(const Vector& v) const { return relation_gb().contains(v); }
  Vector reduce(const Vector& v) const { return relation_gb().normal_form(v); }

  /// Same module with x -> x + a (over the translated algebra).
  FPModule translated(std::span<const Scalar> a) const;
  std::string to_string() const;

 private:
  struct Cache {
    std::once_flag once;
    GroebnerBasis gb;
  };
  AlgebraPtr algebra_;
  std::size_t gens_ = 0;
  std::vector<Vector> rels_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Homomorphism given by the images of the source generators in the target
/// generators' free cover (one column per source generator).
class ModuleMap {
 public:
  ModuleMap() = default;
  /// Verifies that every source relation maps into the target relations.
  ModuleMap(FPModule source, FPModule target, std::vector<Vector> columns);
  /// Skips the well-definedness check (for maps built from known data).
  static ModuleMap trusted(FPModule source, FPModule target, std::vector<Vector> columns);
  static ModuleMap identity(const FPModule& m);
  static ModuleMap zero(const FPModule& source, const FPModule& target);

  const FPModule& source() const { return source_; }
  const FPModule& target() const { return target_; }
  const std::vector<Vector>& columns() const { return cols_; }
  Vector apply(const Vector& v) const { return v.substitute_basis(cols_); }
  bool is_zero() const;

 private:
  FPModule source_, target_;
  std::vector<Vector> cols_;
};

ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g o f

/// A module presented as a subquotient of a free module R^g, together with
/// the images of its generators in R^g.
struct Subquotient {
  FPModule module;
  std::vector<Vector> generators;
};

/// (numerator + denominator) / denominator for submodules of R^rank over O.
/// Relations are computed by one augmented Gröbner basis; constant-pivot
/// generators are eliminated afterwards.
Subquotient present_quotient(const AlgebraPtr& algebra, std::span<const Vector> numerator, std::span<const Vector> denominator,
                             std::size_t rank);
/// numerator / denominator; InputError unless denominator is inside numerator (mod I).
Subquotient subquotient(const AlgebraPtr& algebra, std::span<const Vector> numerator, std::span<const Vector> denominator,
                        std::size_t rank);
/// ker f with generators in the source's free cover.
Subquotient kernel(const ModuleMap& f);
/// im f with generators in the target's free cover.
Subquotient image(const ModuleMap& f);

/// Best-effort smaller presentation: generators killed by a relation with a
/// constant pivot are eliminated. `to_new[j]` expresses old generator j in
/// the new generators; `kept[k]` is the old index of new generator k.
struct Pruned {
  FPModule module;
  std::vector<Vector> to_new;
  std::vector<std::size_t> kept;
};
Pruned prune(const FPModule& m);

FPModule direct_sum(std::span<const FPModule> parts);

/// dim_k M, or nullopt when infinite.
std::optional<long> length(const FPModule& m);
/// ann(M) as an ideal of R (contains I).
Ideal annihilator(const FPModule& m);
/// Every element of J kills M.
bool annihilated_by(const FPModule& m, const Ideal& J);

/// Gamma_{m_a}(M) = (0 :_M m_a^inf), with generators in M's free cover.
Subquotient torsion_component_at_point(const FPModule& m, std::span<const Scalar> a);

/// dim_k M / m_a^s M.
long colength(const FPModule& m, std::span<const Scalar> a, int s);

struct HilbertSamuel {
  enum class Verdict { Stabilizes, Growth, Inconclusive };
  std::vector<long> lengths;  // s = 1..s_max
  Verdict verdict = Verdict::Inconclusive;
  long value = 0;   // stable value
  int degree = 0;   // growth degree
  /// Dimension of the support at a: 0 if stabilizing, degree if growing,
  /// -1 when a is outside the support.
  std::optional<int> local_dimension() const;
};
HilbertSamuel hilbert_samuel(const FPModule& m, std::span<const Scalar> a, int s_max = 8);

/// Length of the localization M_a, certified by lambda(s) = lambda(s+1).
/// Only terminates for modules finitely supported at a; gives up with
/// InconclusiveError after s = max_s.
long local_length(const FPModule& m, std::span<const Scalar> a, int max_s = 64);
/// M_a = 0, i.e. M / m_a M = 0.
bool stalk_is_zero(const FPModule& m, std::span<const Scalar> a);

/// M over k[x, y] seen as a k[y]-module. `keep` lists the y-variables.
struct RestrictedModule {
  FPModule module;                  // over `target`
  std::vector<std::size_t> comp;    // generator k is x^mono[k] * e_comp[k]
  std::vector<Monomial> mono;
  GroebnerBasis block_gb;           // of the source relations, x-block dominating
  std::vector<int> keep;
  std::uint32_t drop_mask = 0;
};
/// Throws InputError("kernel not proper over Y-model") unless M is finite
/// over k[keep]. `target` must be the algebra over the kept variables
/// (in the order given by `keep`).
RestrictedModule restrict_scalars(const FPModule& m, std::span<const int> keep, const AlgebraPtr& target);
/// Restriction of f: M -> N, given the restrictions of M and N.
ModuleMap restrict_map(const ModuleMap& f, const RestrictedModule& source, const RestrictedModule& target);

}  // namespace koszulkit
