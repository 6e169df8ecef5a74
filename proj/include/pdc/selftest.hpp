// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace pdc {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Invariant checks on small instances; finishes in a few seconds.
std::vector<SelftestCheck> run_selftest();

}  // namespace pdc
