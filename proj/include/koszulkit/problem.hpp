#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "koszulkit/integral.hpp"

namespace koszulkit {

/// A problem file: one ring context, named objects and a task.
///
///   [ring]            field = q | fp:<p>, vars = x, y, ideal = x*y
///   [split]           x = x, y = y, x_ideal = ..., y_ideal = ...
///   [module M]        ideal = x^2, x*y      or   rank = 2, relations = [x, y]; [0, x]
///   [complex K]       term -1 = free 1, term 0 = M, d -1 = [x]
///   [points]          origin = (0, 0)
///   [sops]            s = x, y @ origin
///   [task]            command = depth, object = M, point = origin, ...
///
/// With a [split] the ring is the product of the two models; points and sops
/// then live on the x-side.
struct ProblemFile {
  std::string text;
  Field field;
  AlgebraPtr algebra;
  std::optional<AffinePair> pair;
  std::map<std::string, FPModule> modules;
  std::map<std::string, BoundedComplex> complexes;
  std::map<std::string, Point> points;
  std::map<std::string, SystemOfParameters> sops;
  std::map<std::string, std::string> task;

  /// Algebra that points and sops refer to.
  const AlgebraPtr& point_algebra() const { return pair ? pair->a() : algebra; }

  std::optional<std::string> option(const std::string& key) const;
  const FPModule& module(const std::string& name) const;
  /// A complex, or a module placed in degree 0.
  BoundedComplex complex(const std::string& name) const;
  /// A named point or a literal such as (0, 1).
  Point point(const std::string& ref) const;
  const SystemOfParameters& sop(const std::string& name) const;
  /// Comma separated polynomials over the point algebra.
  std::vector<Polynomial> polynomials(const std::string& text) const;
};

/// InputError with the offending line on any syntax or validation error.
ProblemFile parse_problem(std::string_view text, std::optional<Field> field_override = std::nullopt);
ProblemFile load_problem(const std::string& path, std::optional<Field> field_override = std::nullopt);

/// Splits on a separator at bracket depth 0 and trims the pieces.
std::vector<std::string> split_list(std::string_view text, char sep);
std::string trim(std::string_view s);

}  // namespace koszulkit
