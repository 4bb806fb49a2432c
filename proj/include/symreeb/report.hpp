#pragma once

#include <string>
#include <vector>

namespace symreeb {

/// Pass/fail/skip counts of one property over a batch of instances.
struct Tally {
  std::string name;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  std::vector<std::string> failures;  // first few only

  void record(bool ok, const std::string& detail = {}) {
    if (ok) {
      ++passed;
    } else {
      ++failed;
      if (failures.size() < 8) failures.push_back(detail);
    }
  }
  void skip() { ++skipped; }
  bool ok() const { return failed == 0 && passed > 0; }
  int total() const { return passed + failed; }

  Tally& operator+=(const Tally& o) {
    passed += o.passed;
    failed += o.failed;
    skipped += o.skipped;
    for (const auto& f : o.failures)
      if (failures.size() < 8) failures.push_back(f);
    return *this;
  }
};

}  // namespace symreeb
