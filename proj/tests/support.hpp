#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "koszulkit/ideal.hpp"
#include "koszulkit/polynomial.hpp"

namespace testing {

using namespace koszulkit;

inline RingPtr qring(std::vector<std::string> vars) { return make_ring(Field::rationals(), std::move(vars)); }

inline Polynomial P(const RingPtr& r, const std::string& s) { return Polynomial::parse(r, s); }
inline Ideal I(const RingPtr& r, const std::string& s) { return Ideal::parse(r, s); }

// Deterministic generator for property tests (splitmix64).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int uniform(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return next() & 1; }

 private:
  std::uint64_t s_;
};

// Random polynomial with small integer coefficients and bounded degree.
inline Polynomial random_poly(Rng& rng, const RingPtr& r, int terms, int max_deg) {
  std::vector<Term> t;
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    int budget = rng.uniform(0, max_deg);
    for (int v = 0; v < r->num_vars() && budget > 0; ++v) {
      int e = rng.uniform(0, budget);
      m.exp[v] = e;
      m.degree += e;
      budget -= e;
    }
    int c = rng.uniform(-3, 3);
    if (c != 0) t.push_back(Term{m, 0, Scalar(r->field(), c)});
  }
  return {r, Vector(std::move(t))};
}

}  // namespace testing
