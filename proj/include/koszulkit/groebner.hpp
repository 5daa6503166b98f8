#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "koszulkit/polynomial.hpp"

namespace koszulkit {

/// Reduced Gröbner basis of a submodule of a free module R^r (r = 1 for ideals).
///
/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// first, ties broken by pair index) and Buchberger's chain criterion; the
/// coprime-leading-term criterion is applied for ideals only, where it is
/// valid. Output is reduced, monic and sorted ascending by leading term, so
/// it is reproducible bit for bit.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;

  static GroebnerBasis compute(std::span<const Vector> generators, const ModuleOrder& order = canonical_order());

  const ModuleOrder& order() const { return order_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  /// Basis elements (canonical storage order), ascending by leading term.
  const std::vector<Vector>& elements() const { return elements_; }
  /// Leading term of element i with respect to order().
  const Term& leading_term(std::size_t i) const { return ordered_[i].front(); }

  /// Full (head and tail) reduction remainder.
  Vector normal_form(const Vector& v) const;
  bool contains(const Vector& v) const { return normal_form(v).is_zero(); }
  bool contains_all(std::span<const Vector> vs) const;
  /// True if e_comp lies in the submodule.
  bool contains_unit(std::uint32_t comp) const;

 private:
  ModuleOrder order_;
  std::vector<Vector> elements_;
  std::vector<std::vector<Term>> ordered_;
};

/// Generators of { c in R^k : sum_j c_j columns[j] in span(submodule) },
/// where columns and submodule live in R^rank. Computed from one Gröbner
/// basis of the augmented module (columns[j] + e_{rank+j}) under an order in
/// which the first `rank` components dominate.
std::vector<Vector> preimage(std::span<const Vector> columns, std::span<const Vector> submodule, std::size_t rank);

/// Syzygy module of the given vectors in R^rank.
inline std::vector<Vector> syzygies(std::span<const Vector> vectors, std::size_t rank) {
  return preimage(vectors, {}, rank);
}

/// Intersection of two submodules of R^rank.
std::vector<Vector> intersect(std::span<const Vector> a, std::span<const Vector> b, std::size_t rank);

/// Drops generators that are zero or lie in the span of `base` plus the
/// generators kept before them. Greedy; not guaranteed minimal.
std::vector<Vector> prune_generators(std::span<const Vector> gens, std::span<const Vector> base);

/// Terms of v sorted descending by `order`.
std::vector<Term> sorted_terms(const Vector& v, const ModuleOrder& order);

}  // namespace koszulkit
