#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "koszulkit/derived_support.hpp"

namespace koszulkit {

/// Affine stand-ins for X and Y: A = k[x]/I_X, B = k[y]/I_Y and the product
/// S = k[x, y]/(I_X + I_Y). A's variables come first in S.
class AffinePair {
 public:
  AffinePair() = default;
  /// InputError when the fields differ or a variable name is shared.
  AffinePair(AlgebraPtr a, AlgebraPtr b);

  const AlgebraPtr& a() const { return a_; }
  const AlgebraPtr& b() const { return b_; }
  const AlgebraPtr& s() const { return s_; }
  const std::vector<int>& x_slots() const { return x_slots_; }
  const std::vector<int>& y_slots() const { return y_slots_; }
  Vector from_a(const Vector& v) const { return reindex_variables(v, x_slots_); }
  Vector from_b(const Vector& v) const { return reindex_variables(v, y_slots_); }
  /// The diagonal S/(x_i - y_i); needs as many x- as y-variables.
  BoundedComplex diagonal() const;

 private:
  AlgebraPtr a_, b_, s_;
  std::vector<int> x_slots_, y_slots_;
};

/// A bounded complex over S whose terms are finite over B.
class Kernel {
 public:
  /// InputError("kernel not proper over Y-model ...") when a term is not
  /// finite over B.
  Kernel(AffinePair pair, BoundedComplex k);

  const AffinePair& pair() const { return pair_; }
  const BoundedComplex& complex() const { return k_; }
  /// max - min degree, 0 for the zero complex.
  int amplitude() const;
  /// Per degree: rank of the term as a B-module, and whether it is finite over A.
  const std::map<int, std::size_t>& rank_over_b() const { return rank_over_b_; }
  const std::map<int, bool>& finite_over_a() const { return finite_over_a_; }

 private:
  AffinePair pair_;
  BoundedComplex k_;
  std::map<int, std::size_t> rank_over_b_;
  std::map<int, bool> finite_over_a_;
};

/// Restriction of K (x)_A F to B for a free complex F over A.
BoundedComplex phi_free(const Kernel& k, const FreeComplex& f);
/// Phi(E) through a free model of E over A. InputError when the model does
/// not terminate (A singular and E of infinite projective dimension).
BoundedComplex phi_complex(const Kernel& k, const BoundedComplex& e);
BoundedComplex phi_module(const Kernel& k, const FPModule& m);
/// Phi(k(a)) via Kos(x - a); A must be a polynomial ring.
BoundedComplex phi_point(const Kernel& k, const Point& a);
BoundedComplex phi_koszul(const Kernel& k, const SystemOfParameters& sop);

/// dim_k Hom^i_{D(B)}(P, Q); nullopt when infinite. Checked against a
/// wider free-model window (ConsistencyError on mismatch).
std::optional<long> hom_dimension(LazyResolution& p, const BoundedComplex& q, int i);

struct HomTable {
  Point x1, x2;
  std::string sop;
  std::map<int, std::optional<long>> lengths;
  /// lengths cover every degree where Hom^i can be nonzero
  bool exhaustive = false;
  bool vanishing_ok = false;
};

struct Condition {
  std::string name;
  Verdict verdict = Verdict::fails;
  std::string evidence;
};

/// Hom^0 dimensions at the witness point for one sop f.
struct OrthoItem {
  std::string sop;
  long colength = 0;                        // l(O_x / f_x)
  std::optional<long> kos_to_point;         // (2.2)
  std::optional<long> quotient_to_point;    // (2.2*)
  std::optional<long> kos_to_quotient;      // (2.3)
  std::optional<long> quotient_to_quotient; // (2.3*)
};

struct FFReport {
  std::string mode;
  int dim_x = 0;
  int amplitude = 0;
  std::pair<int, int> window{0, 0};
  std::vector<HomTable> tables;
  /// x -> dim Hom^0(Phi k(x), Phi k(x))
  std::vector<std::pair<Point, std::optional<long>>> endomorphisms;
  std::optional<Point> witness;
  std::optional<long> structure_to_point;  // (2.1)
  std::vector<OrthoItem> items;
  std::vector<Condition> conditions;
  Verdict verdict = Verdict::fails;
  std::string disclaimer;

  const Condition* condition(std::string_view name) const;
};

/// Conditions (1) and (2) on the given pairs of points of X. The sops for x1
/// are tried in order until one makes every pair with that x1 vanish.
FFReport check_strong_simplicity(const Kernel& k, const std::vector<std::pair<Point, Point>>& pairs, int dim_x,
                                 const LocalOptions& opts = {});
/// Condition (1) on `pairs` (default: the witness with itself) and the
/// alternatives (2.1) .. (2.3*) at the witness for every sop used.
FFReport check_orthonormality(const Kernel& k, const Point& witness, int dim_x, const std::vector<std::pair<Point, Point>>& pairs = {},
                              const LocalOptions& opts = {});

}  // namespace koszulkit
