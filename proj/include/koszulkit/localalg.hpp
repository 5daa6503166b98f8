#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "koszulkit/koszul.hpp"

namespace koszulkit {

struct LocalOptions {
  int s_max = 8;
  std::optional<int> dimension_override;
  /// Sops to use; suggested ones fill up to the required count.
  std::vector<std::vector<Polynomial>> sops;
  /// One sop instead of two agreeing ones.
  bool single_sop = false;
  std::size_t budget = 16;

  SopOptions sop_options() const { return {s_max, dimension_override}; }
};

struct SopEvidence {
  SystemOfParameters sop;
  KoszulTable table;
  std::optional<int> first_nonzero_ext;
};

struct DepthReport {
  Point point;
  std::string module;
  int local_dim = 0;
  std::optional<int> depth;  // nullopt: the stalk is zero ("infinite")
  std::optional<int> codepth() const;
  std::vector<SopEvidence> sops;
};

/// The sops used at a: the given ones validated, then suggestions until two
/// distinct ones are available (one if single_sop or dim 0).
std::vector<SystemOfParameters> choose_sops(const AlgebraPtr& algebra, const Point& a, const LocalOptions& opts);

/// depth = min{i : Ext^i(Kos(f), M) != 0}. Every sop must give the same
/// index; otherwise ConsistencyError.
DepthReport depth(const FPModule& m, const Point& a, const LocalOptions& opts = {});

/// First i with Ext^i(k(a), M) != 0, from the resolution Kos(x - a) of k(a).
/// Only over a polynomial ring (InputError otherwise). nullopt if M_a = 0.
std::optional<int> depth_oracle_regular(const FPModule& m, const Point& a);

struct CMReport {
  bool cohen_macaulay = false;
  int support_dim = 0;
  DepthReport depth;
};
/// depth(M_a) == dim Supp(M) at a. NotInSupportError when M_a = 0.
CMReport is_cohen_macaulay(const FPModule& m, const Point& a, const LocalOptions& opts = {});

struct SmVerdict {
  bool member = false;
  int m = 0, n = 0;
  DepthReport report;
  /// Per sop: the largest i with Tor_i != 0 (nullopt when all vanish).
  std::vector<std::optional<int>> top_tor;
};
/// a in S_m(F) iff codepth(F_a) >= n - m. Cross-checked against the Tor
/// description: some i >= n - m with Tor_i(Kos(f), F) != 0, for every sop.
SmVerdict sm_membership(const FPModule& f, const Point& a, int m, int n, const LocalOptions& opts = {});
/// Smooth ambient only: some p >= n - m with Tor_p(k(a), F) != 0.
bool sm_membership_smooth(const FPModule& f, const Point& a, int m, int n);

struct TorProfile {
  bool holds = false;
  int c = 0;
  std::vector<SopEvidence> sops;
  std::string reason;  // empty when the profile holds
};
/// Tor_c != 0 and Tor_{c+i} = 0 for 0 < i <= n_a - c at the given point, for
/// every sop used. NotInSupportError when F_a = 0.
TorProfile generic_tor_profile(const FPModule& f, const Point& a, int c, const LocalOptions& opts = {});

}  // namespace koszulkit
