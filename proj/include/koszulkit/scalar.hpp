#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace koszulkit {

/// Coefficient field: the rationals (modulus 0) or F_p for a prime p < 2^31.
class Field {
 public:
  constexpr Field() = default;
  static Field rationals() { return Field{}; }
  static Field prime(std::uint32_t p);

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }

  friend bool operator==(const Field&, const Field&) = default;

  /// "q" or "fp:<p>"
  std::string name() const;
  static Field parse(std::string_view text);

 private:
  friend class Scalar;
  static Field unchecked(std::uint32_t p) {
    Field f;
    f.p_ = p;
    return f;
  }
  std::uint32_t p_ = 0;
};

/// Exact field element. Rationals are kept in lowest terms with a positive
/// denominator; F_p elements are kept in [0, p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Field& field, long value);
  Scalar(const Field& field, const mpq_class& value);

  static Scalar zero(const Field& field) { return Scalar(field, 0L); }
  static Scalar one(const Field& field) { return Scalar(field, 1L); }

  Field field() const { return Field::unchecked(p_); }
  bool is_zero() const { return p_ == 0 ? sgn(q_) == 0 : r_ == 0; }
  bool is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }
  bool is_integer() const { return p_ != 0 || q_.get_den() == 1; }
  /// Sign used for printing; F_p elements are always non-negative.
  int sign() const { return p_ == 0 ? sgn(q_) : (r_ == 0 ? 0 : 1); }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar abs() const;
  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

  /// Parses "3", "-3/2" into the given field.
  static Scalar parse(const Field& field, std::string_view text);

  const mpq_class& rational() const { return q_; }
  std::uint32_t residue() const { return r_; }

 private:
  mpq_class q_;
  std::uint32_t p_ = 0;
  std::uint32_t r_ = 0;
};

}  // namespace koszulkit
