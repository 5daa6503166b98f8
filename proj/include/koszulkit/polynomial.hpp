#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "koszulkit/scalar.hpp"

namespace koszulkit {

inline constexpr int kMaxVars = 12;

/// Exponent vector. Slots past the ring's variable count stay zero, so
/// comparisons never need to know the ring.
struct Monomial {
  std::array<std::int32_t, kMaxVars> exp{};
  std::int32_t degree = 0;

  static Monomial variable(int index, std::int32_t power = 1) {
    Monomial m;
    m.exp[index] = power;
    m.degree = power;
    return m;
  }

  bool is_one() const { return degree == 0; }
  bool divides(const Monomial& other) const {
    if (degree > other.degree) return false;
    for (int i = 0; i < kMaxVars; ++i)
      if (exp[i] > other.exp[i]) return false;
    return true;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.exp[i] = a.exp[i] + b.exp[i];
    m.degree = a.degree + b.degree;
    return m;
  }
  /// Requires divisor.divides(*this).
  Monomial divided_by(const Monomial& divisor) const {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.exp[i] = exp[i] - divisor.exp[i];
    m.degree = degree - divisor.degree;
    return m;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) {
      m.exp[i] = std::max(a.exp[i], b.exp[i]);
      m.degree += m.exp[i];
    }
    return m;
  }
  static bool coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kMaxVars; ++i)
      if (a.exp[i] && b.exp[i]) return false;
    return true;
  }
  std::int32_t degree_in(std::uint32_t mask) const {
    std::int32_t d = 0;
    for (int i = 0; i < kMaxVars; ++i)
      if (mask >> i & 1u) d += exp[i];
    return d;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Monomial order on a polynomial ring.
class MonomialOrder {
 public:
  enum class Kind { Lex, Grevlex, Block };

  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, 0); }
  /// Variables in `first_block` (bit mask) dominate; grevlex inside each block.
  static MonomialOrder block(std::uint32_t first_block) { return MonomialOrder(Kind::Block, first_block); }

  Kind kind() const { return kind_; }
  std::uint32_t block_mask() const { return mask_; }

  /// Returns >0 if a > b, <0 if a < b, 0 if equal.
  int compare(const Monomial& a, const Monomial& b) const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind k, std::uint32_t mask) : kind_(k), mask_(mask) {}
  Kind kind_;
  std::uint32_t mask_;
};

/// A term of a vector in a free module R^r: coefficient * monomial * e_component.
struct Term {
  Monomial mono;
  std::uint32_t comp = 0;
  Scalar coef;
};

/// Order on the terms of a free module.
///
/// Components may be split into groups; a lower group always dominates a
/// higher one (this is what makes the augmented-module syzygy and
/// elimination tricks work). Inside a group the strategy decides whether
/// the monomial (TOP) or the component (POT) is compared first; lower
/// component indices are larger.
class ModuleOrder {
 public:
  enum class Strategy { TermOverPosition, PositionOverTerm };

  ModuleOrder() : mono_(MonomialOrder::grevlex()) {}
  explicit ModuleOrder(MonomialOrder mono, Strategy s = Strategy::TermOverPosition, std::vector<int> groups = {})
      : mono_(mono), strategy_(s), groups_(std::move(groups)) {}

  const MonomialOrder& monomial_order() const { return mono_; }
  Strategy strategy() const { return strategy_; }
  int group(std::uint32_t comp) const { return comp < groups_.size() ? groups_[comp] : (groups_.empty() ? 0 : groups_.back()); }

  int compare(const Monomial& a, std::uint32_t ca, const Monomial& b, std::uint32_t cb) const {
    if (!groups_.empty()) {
      int ga = group(ca), gb = group(cb);
      if (ga != gb) return ga < gb ? 1 : -1;
    }
    if (strategy_ == Strategy::PositionOverTerm && ca != cb) return ca < cb ? 1 : -1;
    int c = mono_.compare(a, b);
    if (c != 0) return c;
    if (ca != cb) return ca < cb ? 1 : -1;
    return 0;
  }
  int compare(const Term& a, const Term& b) const { return compare(a.mono, a.comp, b.mono, b.comp); }

  bool operator==(const ModuleOrder& o) const {
    return mono_ == o.mono_ && strategy_ == o.strategy_ && groups_ == o.groups_;
  }

 private:
  MonomialOrder mono_;
  Strategy strategy_ = Strategy::TermOverPosition;
  std::vector<int> groups_;
};

/// The storage order of every Vector: term-over-position grevlex.
const ModuleOrder& canonical_order();

/// Sparse element of a free module R^r. Terms are kept sorted descending in
/// canonical_order() with no zero coefficients. A polynomial is a Vector
/// whose terms all live in component 0.
class Vector {
 public:
  Vector() = default;
  /// Sorts and combines arbitrary terms.
  explicit Vector(std::vector<Term> terms);
  static Vector from_sorted(std::vector<Term> terms) {
    Vector v;
    v.terms_ = std::move(terms);
    return v;
  }
  static Vector constant(const Scalar& c, std::uint32_t comp = 0);
  static Vector unit(const Field& f, std::uint32_t comp) { return constant(Scalar::one(f), comp); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }

  Vector operator-() const;
  friend Vector operator+(const Vector& a, const Vector& b);
  friend Vector operator-(const Vector& a, const Vector& b);
  Vector& operator+=(const Vector& b) { return *this = *this + b; }
  Vector& operator-=(const Vector& b) { return *this = *this - b; }
  friend bool operator==(const Vector& a, const Vector& b);

  Vector scaled(const Scalar& c) const;
  Vector times_monomial(const Monomial& m, const Scalar& c) const;
  /// Multiplies by a polynomial (a Vector living in component 0).
  Vector times(const Vector& poly) const;
  /// Component j as a polynomial in component 0.
  Vector component(std::uint32_t j) const;
  /// Re-indexes components: comp -> comp + offset.
  Vector shifted_components(std::int64_t offset) const;
  /// Maps e_j -> images[j] (each an element of another free module).
  Vector substitute_basis(std::span<const Vector> images) const;
  std::uint32_t max_component() const;
  bool is_constant() const { return terms_.size() == 1 && terms_[0].mono.is_one(); }

 private:
  std::vector<Term> terms_;
};

/// Polynomial ring k[x_1..x_n] with named variables.
class Ring {
 public:
  Ring(Field field, std::vector<std::string> variables);
  const Field& field() const { return field_; }
  int num_vars() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& variables() const { return vars_; }
  std::optional<int> index_of(std::string_view name) const;
  bool operator==(const Ring& o) const { return field_ == o.field_ && vars_ == o.vars_; }

 private:
  Field field_;
  std::vector<std::string> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;
RingPtr make_ring(Field field, std::vector<std::string> variables);
bool same_ring(const RingPtr& a, const RingPtr& b);

/// Polynomial in a named ring; a thin typed wrapper over a rank-1 Vector.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(RingPtr ring, Vector v) : ring_(std::move(ring)), v_(std::move(v)) {}
  static Polynomial constant(RingPtr ring, long c);
  static Polynomial variable(RingPtr ring, int index);
  static Polynomial parse(RingPtr ring, std::string_view text);

  const RingPtr& ring() const { return ring_; }
  const Vector& vec() const { return v_; }
  bool is_zero() const { return v_.is_zero(); }
  bool is_constant() const { return v_.is_zero() || v_.is_constant(); }

  Polynomial operator-() const { return {ring_, -v_}; }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.v_ == b.v_; }
  Polynomial pow(unsigned e) const;

  Scalar evaluate(std::span<const Scalar> point) const;
  /// x_i -> x_i + shift_i for every variable.
  Polynomial translated(std::span<const Scalar> shift) const;
  std::string to_string() const;

 private:
  RingPtr ring_;
  Vector v_;
};

using Point = std::vector<Scalar>;

/// x_i -> x_i + shift_i applied to every term of a vector.
Vector translate(const Vector& v, std::span<const Scalar> shift);
Scalar evaluate(const Vector& poly, std::span<const Scalar> point);
/// Renames variables: variable i of the source goes to slot index_map[i].
Vector reindex_variables(const Vector& v, std::span<const int> index_map);

std::string format_polynomial(const Ring& ring, const Vector& poly);
std::string format_monomial(const Ring& ring, const Monomial& m);
Vector parse_polynomial(const Ring& ring, std::string_view text);
/// Comma separated coordinates, optionally in parentheses.
Point parse_point(const Field& field, std::string_view text);
std::string format_point(const Point& p);

}  // namespace koszulkit
