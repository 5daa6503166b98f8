#pragma once

#include <string>
#include <vector>

namespace koszulkit {

struct SelftestRow {
  std::string module;
  std::string example;
  bool passed = false;
  std::string detail;  // exception text when a check threw
};

/// Runs the built-in example corpus, one row per example.
std::vector<SelftestRow> run_selftest();

}  // namespace koszulkit
