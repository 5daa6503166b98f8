#include "koszulkit/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "koszulkit/errors.hpp"

namespace koszulkit {

namespace {

int sign_of(std::int64_t v) { return (v > 0) - (v < 0); }

int grevlex_masked(const Monomial& a, const Monomial& b, std::uint32_t mask) {
  std::int32_t da = a.degree_in(mask), db = b.degree_in(mask);
  if (da != db) return da > db ? 1 : -1;
  for (int i = kMaxVars - 1; i >= 0; --i) {
    if (!(mask >> i & 1u)) continue;
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
  }
  return 0;
}

constexpr std::uint32_t kAllVars = (1u << kMaxVars) - 1;

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::Lex:
      for (int i = 0; i < kMaxVars; ++i)
        if (a.exp[i] != b.exp[i]) return sign_of(a.exp[i] - b.exp[i]);
      return 0;
    case Kind::Grevlex:
      if (a.degree != b.degree) return a.degree > b.degree ? 1 : -1;
      for (int i = kMaxVars - 1; i >= 0; --i)
        if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
      return 0;
    case Kind::Block: {
      int c = grevlex_masked(a, b, mask_);
      if (c != 0) return c;
      return grevlex_masked(a, b, kAllVars & ~mask_);
    }
  }
  return 0;
}

const ModuleOrder& canonical_order() {
  static const ModuleOrder order(MonomialOrder::grevlex(), ModuleOrder::Strategy::TermOverPosition);
  return order;
}

// ---------------------------------------------------------------- Vector

Vector::Vector(std::vector<Term> terms) {
  const auto& ord = canonical_order();
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return ord.compare(a, b) > 0; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().mono == t.mono && terms_.back().comp == t.comp) {
      terms_.back().coef += t.coef;
      if (terms_.back().coef.is_zero()) terms_.pop_back();
    } else if (!t.coef.is_zero()) {
      terms_.push_back(std::move(t));
    }
  }
}

Vector Vector::constant(const Scalar& c, std::uint32_t comp) {
  Vector v;
  if (!c.is_zero()) v.terms_.push_back(Term{Monomial{}, comp, c});
  return v;
}

Vector Vector::operator-() const {
  Vector v = *this;
  for (auto& t : v.terms_) t.coef = -t.coef;
  return v;
}

namespace {

Vector merge(const Vector& a, const Vector& b, bool subtract) {
  const auto& ord = canonical_order();
  const auto& x = a.terms();
  const auto& y = b.terms();
  std::vector<Term> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    int c = i == x.size() ? -1 : j == y.size() ? 1 : ord.compare(x[i], y[j]);
    if (c > 0) {
      out.push_back(x[i++]);
    } else if (c < 0) {
      out.push_back(y[j++]);
      if (subtract) out.back().coef = -out.back().coef;
    } else {
      Scalar s = subtract ? x[i].coef - y[j].coef : x[i].coef + y[j].coef;
      if (!s.is_zero()) out.push_back(Term{x[i].mono, x[i].comp, std::move(s)});
      ++i;
      ++j;
    }
  }
  return Vector::from_sorted(std::move(out));
}

}  // namespace

Vector operator+(const Vector& a, const Vector& b) { return merge(a, b, false); }
Vector operator-(const Vector& a, const Vector& b) { return merge(a, b, true); }

bool operator==(const Vector& a, const Vector& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const auto& s = a.terms_[i];
    const auto& t = b.terms_[i];
    if (s.comp != t.comp || !(s.mono == t.mono) || s.coef != t.coef) return false;
  }
  return true;
}

Vector Vector::scaled(const Scalar& c) const {
  if (c.is_zero()) return {};
  Vector v = *this;
  for (auto& t : v.terms_) t.coef *= c;
  return v;
}

Vector Vector::times_monomial(const Monomial& m, const Scalar& c) const {
  if (c.is_zero()) return {};
  Vector v = *this;
  for (auto& t : v.terms_) {
    t.mono = t.mono * m;
    t.coef *= c;
  }
  return v;
}

Vector Vector::times(const Vector& poly) const {
  if (poly.is_zero() || is_zero()) return {};
  if (poly.size() == 1) return times_monomial(poly.leading().mono, poly.leading().coef);
  std::vector<Term> all;
  all.reserve(poly.size() * size());
  for (const auto& p : poly.terms())
    for (const auto& t : terms_) all.push_back(Term{t.mono * p.mono, t.comp, t.coef * p.coef});
  return Vector(std::move(all));
}

Vector Vector::component(std::uint32_t j) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (t.comp == j) out.push_back(Term{t.mono, 0, t.coef});
  return from_sorted(std::move(out));
}

Vector Vector::shifted_components(std::int64_t offset) const {
  Vector v = *this;
  for (auto& t : v.terms_) t.comp = static_cast<std::uint32_t>(t.comp + offset);
  return v;
}

Vector Vector::substitute_basis(std::span<const Vector> images) const {
  std::vector<Term> all;
  for (const auto& t : terms_) {
    if (t.comp >= images.size()) throw std::out_of_range("substitute_basis: component out of range");
    for (const auto& s : images[t.comp].terms()) all.push_back(Term{s.mono * t.mono, s.comp, s.coef * t.coef});
  }
  return Vector(std::move(all));
}

std::uint32_t Vector::max_component() const {
  std::uint32_t m = 0;
  for (const auto& t : terms_) m = std::max(m, t.comp);
  return m;
}

// ---------------------------------------------------------------- Ring

Ring::Ring(Field field, std::vector<std::string> variables) : field_(field), vars_(std::move(variables)) {
  if (static_cast<int>(vars_.size()) > kMaxVars - 2)
    throw InputError("at most " + std::to_string(kMaxVars - 2) + " variables are supported");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto& v = vars_[i];
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
      throw InputError("bad variable name '" + v + "'");
    for (char ch : v)
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) throw InputError("bad variable name '" + v + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (vars_[j] == v) throw InputError("duplicate variable '" + v + "'");
  }
}

std::optional<int> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

RingPtr make_ring(Field field, std::vector<std::string> variables) {
  return std::make_shared<const Ring>(field, std::move(variables));
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(RingPtr ring, long c) {
  Scalar s(ring->field(), c);
  return {std::move(ring), Vector::constant(s)};
}

Polynomial Polynomial::variable(RingPtr ring, int index) {
  Scalar one = Scalar::one(ring->field());
  return {std::move(ring), Vector::from_sorted({Term{Monomial::variable(index), 0, one}})};
}

Polynomial Polynomial::parse(RingPtr ring, std::string_view text) {
  Vector v = parse_polynomial(*ring, text);
  return {std::move(ring), std::move(v)};
}

namespace {
void require_same(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring(), b.ring())) throw InputError("polynomials from different rings");
}
}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same(a, b);
  return {a.ring_, a.v_ + b.v_};
}
Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  require_same(a, b);
  return {a.ring_, a.v_ - b.v_};
}
Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same(a, b);
  return {a.ring_, a.v_.times(b.v_)};
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = constant(ring_, 1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

Scalar Polynomial::evaluate(std::span<const Scalar> point) const { return koszulkit::evaluate(v_, point); }

Polynomial Polynomial::translated(std::span<const Scalar> shift) const { return {ring_, translate(v_, shift)}; }

std::string Polynomial::to_string() const { return format_polynomial(*ring_, v_); }

// ---------------------------------------------------------------- free functions

Scalar evaluate(const Vector& poly, std::span<const Scalar> point) {
  if (poly.is_zero()) return Scalar{};
  const Field f = poly.leading().coef.field();
  Scalar sum = Scalar::zero(f);
  for (const auto& t : poly.terms()) {
    Scalar v = t.coef;
    for (int i = 0; i < kMaxVars; ++i) {
      if (t.mono.exp[i] == 0) continue;
      if (static_cast<std::size_t>(i) >= point.size()) throw InputError("point has too few coordinates");
      for (int k = 0; k < t.mono.exp[i]; ++k) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

Vector translate(const Vector& v, std::span<const Scalar> shift) {
  bool trivial = std::all_of(shift.begin(), shift.end(), [](const Scalar& s) { return s.is_zero(); });
  if (trivial || v.is_zero()) return v;
  const Field f = v.leading().coef.field();
  std::vector<Term> all;
  for (const auto& t : v.terms()) {
    std::vector<Term> acc{Term{Monomial{}, t.comp, t.coef}};
    for (int i = 0; i < kMaxVars; ++i) {
      const int e = t.mono.exp[i];
      if (e == 0) continue;
      const bool zero_shift = static_cast<std::size_t>(i) >= shift.size() || shift[i].is_zero();
      if (zero_shift) {
        for (auto& a : acc) {
          a.mono.exp[i] += e;
          a.mono.degree += e;
        }
        continue;
      }
      // (x_i + s)^e = sum_k C(e,k) s^(e-k) x_i^k
      std::vector<Scalar> coeffs(e + 1);
      Scalar binom = Scalar::one(f);
      for (int k = 0; k <= e; ++k) {
        Scalar c = binom;
        for (int r = 0; r < e - k; ++r) c *= shift[i];
        coeffs[k] = c;
        binom *= Scalar(f, e - k);
        binom /= Scalar(f, k + 1);
      }
      std::vector<Term> next;
      next.reserve(acc.size() * (e + 1));
      for (const auto& a : acc)
        for (int k = 0; k <= e; ++k) {
          if (coeffs[k].is_zero()) continue;
          Term n = a;
          n.mono.exp[i] += k;
          n.mono.degree += k;
          n.coef *= coeffs[k];
          next.push_back(std::move(n));
        }
      acc = std::move(next);
    }
    for (auto& a : acc) all.push_back(std::move(a));
  }
  return Vector(std::move(all));
}

Vector reindex_variables(const Vector& v, std::span<const int> index_map) {
  std::vector<Term> out;
  out.reserve(v.size());
  for (const auto& t : v.terms()) {
    Term n{Monomial{}, t.comp, t.coef};
    for (int i = 0; i < kMaxVars; ++i) {
      if (t.mono.exp[i] == 0) continue;
      if (static_cast<std::size_t>(i) >= index_map.size() || index_map[i] < 0)
        throw InputError("variable cannot be mapped into the target ring");
      n.mono.exp[index_map[i]] += t.mono.exp[i];
    }
    n.mono.degree = t.mono.degree;
    out.push_back(std::move(n));
  }
  return Vector(std::move(out));
}

std::string format_monomial(const Ring& ring, const Monomial& m) {
  std::string s;
  for (int i = 0; i < ring.num_vars(); ++i) {
    if (m.exp[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += ring.variables()[i];
    if (m.exp[i] > 1) s += '^' + std::to_string(m.exp[i]);
  }
  return s.empty() ? "1" : s;
}

std::string format_polynomial(const Ring& ring, const Vector& poly) {
  if (poly.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : poly.terms()) {
    const bool negative = t.coef.sign() < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    Scalar mag = t.coef.abs();
    if (t.mono.is_one()) {
      out += mag.to_string();
    } else {
      if (!mag.is_one()) out += mag.to_string() + "*";
      out += format_monomial(ring, t.mono);
    }
  }
  return out;
}

namespace {

// Recursive-descent parser for the polynomial grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*' factor) | ('/' number))*
//   factor := atom ['^' integer]
//   atom   := number | variable | '(' expr ')'
class Parser {
 public:
  Parser(const Ring& ring, std::string_view text) : ring_(ring), text_(text) {}

  Vector parse() {
    Vector v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("polynomial parse error at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "': " + what);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Vector expr() {
    Vector acc;
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    Vector t = term();
    acc = negate ? -t : t;
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else break;
    }
    return acc;
  }
  Vector term() {
    Vector acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc.times(factor());
      } else if (accept('/')) {
        skip_ws();
        Scalar d = number();
        if (d.is_zero()) fail("division by zero");
        acc = acc.scaled(d.inverse());
      } else {
        break;
      }
    }
    return acc;
  }
  Vector factor() {
    Vector base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 1000) fail("exponent too large");
      Vector r = Vector::constant(Scalar::one(ring_.field()));
      for (unsigned long i = 0; i < e; ++i) r = r.times(base);
      return r;
    }
    return base;
  }
  Scalar number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected number");
    return Scalar::parse(ring_.field(), text_.substr(start, pos_ - start));
  }
  Vector atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Vector v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Vector::constant(number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      auto name = text_.substr(start, pos_ - start);
      auto idx = ring_.index_of(name);
      if (!idx) fail("unknown variable '" + std::string(name) + "'");
      return Vector::from_sorted({Term{Monomial::variable(*idx), 0, Scalar::one(ring_.field())}});
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Ring& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Vector parse_polynomial(const Ring& ring, std::string_view text) { return Parser(ring, text).parse(); }

Point parse_point(const Field& field, std::string_view text) {
  Point p;
  std::string item, body = trim(std::string(text));
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  if (trim(body).empty()) return p;
  std::stringstream ss{body};
  while (std::getline(ss, item, ',')) {
    std::string t = trim(item);
    if (t.empty()) throw InputError("empty coordinate in point '" + std::string(text) + "'");
    if (t[0] == '+') t.erase(0, 1);
    p.push_back(Scalar::parse(field, t));
  }
  return p;
}

std::string format_point(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += p[i].to_string();
  }
  return s + ")";
}

}  // namespace koszulkit
