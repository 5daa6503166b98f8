#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "koszulkit/groebner.hpp"
#include "koszulkit/polynomial.hpp"

namespace koszulkit {

/// Ideal of a polynomial ring with a lazily computed, write-once grevlex
/// Gröbner basis shared between copies.
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Polynomial> generators);
  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }
  static Ideal unit(RingPtr ring);
  /// Comma-separated polynomial list.
  static Ideal parse(RingPtr ring, std::string_view text);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  std::vector<Vector> generator_vectors() const;

  const GroebnerBasis& groebner() const;
  std::vector<Polynomial> groebner_polynomials() const;

  bool contains(const Polynomial& f) const;
  bool contains(const Ideal& other) const;
  bool is_unit() const { return groebner().contains_unit(0); }
  bool is_zero() const { return groebner().empty(); }
  bool operator==(const Ideal& other) const { return contains(other) && other.contains(*this); }

  Ideal operator+(const Ideal& other) const;
  std::string to_string() const;

 private:
  struct Cache {
    std::once_flag once;
    GroebnerBasis gb;
  };
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Reduced Gröbner basis, sorted by leading monomial.
std::vector<Polynomial> groebner_basis(std::span<const Polynomial> generators, const MonomialOrder& order = MonomialOrder::grevlex());
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb);

/// I : J
Ideal ideal_quotient(const Ideal& I, const Ideal& J);
/// I : J^infinity, iterating I : J until two successive quotients agree.
Ideal saturation(const Ideal& I, const Ideal& J);
/// f in sqrt(I), decided by 1 in I + (t*f - 1) over R[t].
bool radical_membership(const Polynomial& f, const Ideal& I);
/// Dimension of R/I from the leading-term ideal; -1 for the unit ideal.
int krull_dimension(const Ideal& I);
/// Ideal generated by the leading monomials of the grevlex basis.
Ideal leading_term_ideal(const Ideal& I, const MonomialOrder& order = MonomialOrder::grevlex());
/// Standard monomials of a zero-dimensional ideal; throws InputError("infinite basis") otherwise.
std::vector<Monomial> staircase_basis(const Ideal& I, const MonomialOrder& order = MonomialOrder::grevlex());
/// I intersected with k[keep], returned in the same ring.
Ideal eliminate(const Ideal& I, std::span<const int> keep);

/// Standard monomials in `nvars` variables outside the monomial ideal
/// generated by `leads`, or nullopt when there are infinitely many.
std::optional<std::vector<Monomial>> standard_monomials(std::span<const Monomial> leads, int nvars);

}  // namespace koszulkit
