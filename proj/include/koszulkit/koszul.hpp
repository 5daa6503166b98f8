#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "koszulkit/complex.hpp"
#include "koszulkit/module.hpp"

namespace koszulkit {

struct SopOptions {
  int s_max = 8;
  /// Replaces the Hilbert-Samuel estimate of the local dimension.
  std::optional<int> dimension_override;
};

/// A validated system of parameters of O at a rational point.
struct SystemOfParameters {
  AlgebraPtr algebra;
  Point point;
  std::vector<Polynomial> f;
  int dim = 0;
  HilbertSamuel ambient;   // of O at the point
  HilbertSamuel quotient;  // of O/(f) at the point; stabilizes
  std::string to_string() const;
};

/// Local dimension of O at a from the Hilbert-Samuel growth degree.
/// InputError if a is not on Spec O; InconclusiveError if the probe is.
int local_dimension(const AlgebraPtr& algebra, const Point& a, int s_max = 8);

SystemOfParameters validate_sop(const AlgebraPtr& algebra, const Point& a, std::vector<Polynomial> f, const SopOptions& opts = {});

/// Up to `count` validated sops from a fixed candidate list in the
/// translated variables u = x - a: coordinate subsets, sum/difference
/// pairs, small-coefficient linear forms, coordinate subsets with one other
/// coordinate added, squares. At most `budget` candidates are validated;
/// InconclusiveError if none passes.
std::vector<SystemOfParameters> suggest_sop(const AlgebraPtr& algebra, const Point& a, std::size_t count, std::size_t budget = 16,
                                            const SopOptions& opts = {});

/// Kos(f) in degrees -d..0; term -i has basis the i-subsets of {0..d-1}
/// in lexicographic order and d(e_T) = sum_t (-1)^t f_{T[t]} e_{T - T[t]}.
FreeComplex koszul_complex(const AlgebraPtr& algebra, std::span<const Polynomial> f);
inline FreeComplex koszul_complex(const SystemOfParameters& sop) { return koszul_complex(sop.algebra, sop.f); }
/// The i-subsets of {0..d-1} in the basis order used by koszul_complex.
std::vector<std::vector<int>> koszul_basis(int d, int i);

/// Explicit isomorphism Kos(f)[-d] -> Hom(Kos(f), O) by the wedge pairing
/// e_U -> sign(U, U^c) e*_{U^c}.
ChainMap koszul_duality(const AlgebraPtr& algebra, std::span<const Polynomial> f);

/// Tor_i(Kos(f), C) at the sop's point: Gamma_a(H^{-i}(C (x) Kos(f))).
FPModule tor(const SystemOfParameters& sop, const BoundedComplex& c, int i);
/// Ext^i(Kos(f), C) at the point from Hom(Kos(f), C); its length is
/// checked against tor_{d-i} and a mismatch throws ConsistencyError.
FPModule ext(const SystemOfParameters& sop, const BoundedComplex& c, int i);

/// Local lengths of Tor_i and Ext^i for every index where they can be
/// nonzero, computed once from one tensor and one Hom complex. Both routes
/// are compared index by index (ConsistencyError on mismatch).
struct KoszulTable {
  int dim = 0;
  std::map<int, long> tor;  // i -> length
  std::map<int, long> ext;  // i -> length
  long tor_at(int i) const;
  long ext_at(int i) const;
  /// Smallest i with ext^i != 0, nullopt if all vanish.
  std::optional<int> first_nonzero_ext() const;
};
KoszulTable koszul_table(const SystemOfParameters& sop, const BoundedComplex& c);

}  // namespace koszulkit
