#include "koszulkit/scalar.hpp"

#include <charconv>

#include "koszulkit/errors.hpp"

namespace koszulkit {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint32_t reduce_mod(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p)) throw InputError("field characteristic must be a prime below 2^31, got " + std::to_string(p));
  Field f;
  f.p_ = p;
  return f;
}

std::string Field::name() const { return p_ == 0 ? "q" : "fp:" + std::to_string(p_); }

Field Field::parse(std::string_view text) {
  if (text == "q" || text == "Q" || text == "QQ") return rationals();
  if (text.substr(0, 3) == "fp:") {
    std::uint32_t p = 0;
    auto digits = text.substr(3);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) throw InputError("bad field spec '" + std::string(text) + "'");
    return prime(p);
  }
  throw InputError("unknown field '" + std::string(text) + "' (expected q or fp:<p>)");
}

Scalar::Scalar(const Field& field, long value) : p_(field.characteristic()) {
  if (p_ == 0) {
    q_ = value;
  } else {
    long r = value % static_cast<long>(p_);
    if (r < 0) r += p_;
    r_ = static_cast<std::uint32_t>(r);
  }
}

Scalar::Scalar(const Field& field, const mpq_class& value) : p_(field.characteristic()) {
  if (p_ == 0) {
    q_ = value;
    q_.canonicalize();
  } else {
    std::uint32_t den = reduce_mod(value.get_den(), p_);
    if (den == 0) throw InputError("denominator divisible by field characteristic");
    std::uint64_t num = reduce_mod(value.get_num(), p_);
    r_ = static_cast<std::uint32_t>(num * pow_mod(den, p_ - 2, p_) % p_);
  }
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (p_ == 0) s.q_ = -q_;
  else s.r_ = r_ == 0 ? 0 : p_ - r_;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (p_ == 0) q_ += o.q_;
  else r_ = static_cast<std::uint32_t>((std::uint64_t{r_} + o.r_) % p_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (p_ == 0) q_ -= o.q_;
  else r_ = static_cast<std::uint32_t>((std::uint64_t{r_} + p_ - o.r_) % p_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (p_ == 0) q_ *= o.q_;
  else r_ = static_cast<std::uint32_t>(std::uint64_t{r_} * o.r_ % p_);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero scalar");
  Scalar s = *this;
  if (p_ == 0) s.q_ = 1 / q_;
  else s.r_ = pow_mod(r_, p_ - 2, p_);
  return s;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) return false;
  return a.p_ == 0 ? a.q_ == b.q_ : a.r_ == b.r_;
}

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

std::string Scalar::to_string() const { return p_ == 0 ? q_.get_str() : std::to_string(r_); }

Scalar Scalar::parse(const Field& field, std::string_view text) {
  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0) throw InputError("bad number '" + std::string(text) + "'");
  if (q.get_den() == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return Scalar(field, q);
}

}  // namespace koszulkit
