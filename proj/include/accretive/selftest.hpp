#pragma once

#include <string>
#include <vector>

namespace accretive {

struct SelftestCase {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Closed-form cases with known answers, evaluated through the library.
std::vector<SelftestCase> run_selftest();

}  // namespace accretive
